#include "jordanmask/homology.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace jordanmask {

bool SimplicialComplex::is_face_closed() const {
    const int n = static_cast<int>(vertices.size());
    std::set<std::array<int, 2>> edge_set;
    for (const auto& e : edges) {
        if (e[0] < 0 || e[1] >= n || e[0] >= e[1]) return false;
        edge_set.insert(e);
    }
    return std::all_of(triangles.begin(), triangles.end(), [&](const std::array<int, 3>& t) {
        return edge_set.contains({t[0], t[1]}) && edge_set.contains({t[0], t[2]}) &&
               edge_set.contains({t[1], t[2]});
    });
}

SimplicialComplex complex_from_graph(const AdjacencyGraph& g, bool fill_triangles) {
    SimplicialComplex cx;
    cx.vertices = g.vertices;
    cx.edges.reserve(g.edges.size());
    for (auto [i, j] : g.edges) cx.edges.push_back({std::min(i, j), std::max(i, j)});
    std::sort(cx.edges.begin(), cx.edges.end());

    if (fill_triangles) {
        std::vector<std::vector<int>> higher(cx.vertices.size());
        for (const auto& e : cx.edges) higher[static_cast<std::size_t>(e[0])].push_back(e[1]);
        for (auto& h : higher) std::sort(h.begin(), h.end());
        for (std::size_t a = 0; a < higher.size(); ++a) {
            const auto& ha = higher[a];
            for (std::size_t bi = 0; bi < ha.size(); ++bi) {
                const auto& hb = higher[static_cast<std::size_t>(ha[bi])];
                for (std::size_t ci = bi + 1; ci < ha.size(); ++ci) {
                    if (std::binary_search(hb.begin(), hb.end(), ha[ci])) {
                        cx.triangles.push_back({static_cast<int>(a), ha[bi], ha[ci]});
                    }
                }
            }
        }
    }
    return cx;
}

// BitMatrix ---------------------------------------------------------------

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), words_(rows * stride_, 0) {}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
    auto& w = words_[r * stride_ + c / 64];
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    w = value ? (w | bit) : (w & ~bit);
}

void BitMatrix::flip(std::size_t r, std::size_t c) {
    words_[r * stride_ + c / 64] ^= std::uint64_t{1} << (c % 64);
}

std::size_t BitMatrix::column_weight(std::size_t c) const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < rows_; ++r) n += get(r, c) ? 1 : 0;
    return n;
}

bool BitMatrix::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

std::size_t gf2_rank(const BitMatrix& m) {
    std::vector<std::uint64_t> w = m.words_;
    const std::size_t stride = m.stride_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols_ && rank < m.rows_; ++col) {
        const std::size_t word = col / 64;
        const std::uint64_t bit = std::uint64_t{1} << (col % 64);
        std::size_t pivot = rank;
        while (pivot < m.rows_ && (w[pivot * stride + word] & bit) == 0) ++pivot;
        if (pivot == m.rows_) continue;
        if (pivot != rank) {
            std::swap_ranges(w.begin() + static_cast<std::ptrdiff_t>(pivot * stride),
                             w.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * stride),
                             w.begin() + static_cast<std::ptrdiff_t>(rank * stride));
        }
        for (std::size_t r = rank + 1; r < m.rows_; ++r) {
            if ((w[r * stride + word] & bit) == 0) continue;
            // Columns before `word` are already zero in both rows.
            for (std::size_t k = word; k < stride; ++k) w[r * stride + k] ^= w[rank * stride + k];
        }
        ++rank;
    }
    return rank;
}

BitMatrix gf2_product(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols_ != b.rows_) {
        throw DimensionMismatch("gf2_product: " + std::to_string(a.rows_) + "x" +
                                std::to_string(a.cols_) + " times " + std::to_string(b.rows_) +
                                "x" + std::to_string(b.cols_));
    }
    BitMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (!a.get(r, k)) continue;
            for (std::size_t x = 0; x < out.stride_; ++x) {
                out.words_[r * out.stride_ + x] ^= b.words_[k * b.stride_ + x];
            }
        }
    }
    return out;
}

BoundaryMatrix boundary_matrix(const SimplicialComplex& cx, int k) {
    if (k == 1) {
        BoundaryMatrix m(cx.vertices.size(), cx.edges.size());
        for (std::size_t e = 0; e < cx.edges.size(); ++e) {
            m.set(static_cast<std::size_t>(cx.edges[e][0]), e);
            m.set(static_cast<std::size_t>(cx.edges[e][1]), e);
        }
        return m;
    }
    if (k == 2) {
        BoundaryMatrix m(cx.edges.size(), cx.triangles.size());
        auto edge_index = [&cx](int a, int b) {
            const std::array<int, 2> key{a, b};
            auto it = std::lower_bound(cx.edges.begin(), cx.edges.end(), key);
            if (it == cx.edges.end() || *it != key) {
                throw std::invalid_argument("boundary_matrix: complex is not face-closed");
            }
            return static_cast<std::size_t>(it - cx.edges.begin());
        };
        for (std::size_t t = 0; t < cx.triangles.size(); ++t) {
            const auto& tri = cx.triangles[t];
            m.set(edge_index(tri[0], tri[1]), t);
            m.set(edge_index(tri[0], tri[2]), t);
            m.set(edge_index(tri[1], tri[2]), t);
        }
        return m;
    }
    throw std::invalid_argument("boundary_matrix: k must be 1 or 2, got " + std::to_string(k));
}

BettiProfile betti(const SimplicialComplex& cx) {
    if (cx.vertices.empty()) return {};
    const std::size_t rank1 = gf2_rank(boundary_matrix(cx, 1));
    const std::size_t rank2 = cx.triangles.empty() ? 0 : gf2_rank(boundary_matrix(cx, 2));
    return {cx.vertices.size() - rank1, cx.edges.size() - rank1 - rank2};
}

BettiProfile betti_graph_fast(const AdjacencyGraph& g) {
    const std::size_t n = g.vertices.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = n;
    for (auto [i, j] : g.edges) {
        const auto a = find(static_cast<std::size_t>(i));
        const auto b = find(static_cast<std::size_t>(j));
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return {components, g.edges.size() + components - n};
}

}  // namespace jordanmask
