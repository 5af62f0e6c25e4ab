#include "jordanmask/topology.hpp"

#include <algorithm>
#include <numeric>

namespace jordanmask {

namespace {

constexpr Offset kFour[] = {{0, -1}, {-1, 0}, {1, 0}, {0, 1}};
constexpr Offset kEight[] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                             {1, 0},   {-1, 1}, {0, 1},  {1, 1}};
constexpr Offset kSixNE[] = {{-1, -1}, {0, -1}, {-1, 0}, {1, 0}, {0, 1}, {1, 1}};
constexpr Offset kSixNW[] = {{0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}};

// Disjoint sets with path halving; roots are the smallest index of their set.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);
        parent_[a] = b;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

std::span<const Offset> offsets(Adjacency adj) {
    switch (adj) {
        case Adjacency::Four: return kFour;
        case Adjacency::Eight: return kEight;
        case Adjacency::SixNE: return kSixNE;
        case Adjacency::SixNW: return kSixNW;
    }
    return {};
}

const char* to_string(Adjacency adj) {
    switch (adj) {
        case Adjacency::Four: return "four";
        case Adjacency::Eight: return "eight";
        case Adjacency::SixNE: return "six-ne";
        case Adjacency::SixNW: return "six-nw";
    }
    return "?";
}

// PixelSet ----------------------------------------------------------------

PixelSet::PixelSet(Size domain) : domain_(domain), bits_(domain.area(), 0) {}

PixelSet::PixelSet(Size domain, std::span<const PixelCoord> members) : PixelSet(domain) {
    for (PixelCoord p : members) insert(p);
}

PixelSet::PixelSet(const BinaryImage& img)
    : domain_(img.size()), bits_(img.pixels().begin(), img.pixels().end()) {
    count_ = static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

void PixelSet::insert(PixelCoord p) {
    if (!domain_.contains(p)) {
        throw DomainError(to_string(p) + " outside " + to_string(domain_) + " domain");
    }
    auto& bit = bits_[domain_.index(p)];
    if (bit == 0) {
        bit = 1;
        ++count_;
    }
}

void PixelSet::erase(PixelCoord p) {
    if (!domain_.contains(p)) return;
    auto& bit = bits_[domain_.index(p)];
    if (bit != 0) {
        bit = 0;
        --count_;
    }
}

std::vector<PixelCoord> PixelSet::members() const {
    std::vector<PixelCoord> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] != 0) out.push_back(domain_.coord(i));
    }
    return out;
}

BinaryImage PixelSet::to_image() const { return BinaryImage(domain_.width, domain_.height, bits_); }

bool PixelSet::is_subset_of(const PixelSet& other) const {
    if (domain_ != other.domain_) return false;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] != 0 && other.bits_[i] == 0) return false;
    }
    return true;
}

// Neighbourhoods ----------------------------------------------------------

std::vector<PixelCoord> neighbors(PixelCoord p, Adjacency adj, Size domain) {
    if (!domain.contains(p)) {
        throw DomainError(to_string(p) + " outside " + to_string(domain) + " domain");
    }
    std::vector<PixelCoord> out;
    for (Offset o : offsets(adj)) {
        const PixelCoord q{p.x + o.dx, p.y + o.dy};
        if (domain.contains(q)) out.push_back(q);
    }
    return out;
}

AdjacencyGraph build_graph(const PixelSet& s, Adjacency adj) {
    AdjacencyGraph g;
    g.adjacency = adj;
    g.vertices = s.members();

    const Size domain = s.domain();
    std::vector<int> vertex_of(domain.area(), -1);
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        vertex_of[domain.index(g.vertices[i])] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const PixelCoord p = g.vertices[i];
        std::vector<int> later;
        for (Offset o : offsets(adj)) {
            const PixelCoord q{p.x + o.dx, p.y + o.dy};
            if (!domain.contains(q)) continue;
            const int j = vertex_of[domain.index(q)];
            if (j > static_cast<int>(i)) later.push_back(j);
        }
        std::sort(later.begin(), later.end());
        for (int j : later) g.edges.emplace_back(static_cast<int>(i), j);
    }
    return g;
}

std::vector<std::size_t> ComponentLabeling::component_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(count), 0);
    for (int l : labels) {
        if (l >= 0) ++sizes[static_cast<std::size_t>(l)];
    }
    return sizes;
}

ComponentLabeling connected_components(const PixelSet& s, Adjacency adj) {
    const Size domain = s.domain();
    const std::size_t n = domain.area();
    UnionFind uf(n);

    // Only the offsets that precede the current pixel in raster order need to
    // be merged; the symmetric ones are handled from the other side.
    std::vector<Offset> backward;
    for (Offset o : offsets(adj)) {
        if (o.dy < 0 || (o.dy == 0 && o.dx < 0)) backward.push_back(o);
    }
    for (int y = 1; y <= domain.height; ++y) {
        for (int x = 1; x <= domain.width; ++x) {
            const std::size_t i = domain.index({x, y});
            if (!s.contains_index(i)) continue;
            for (Offset o : backward) {
                const PixelCoord q{x + o.dx, y + o.dy};
                if (domain.contains(q) && s.contains_index(domain.index(q))) {
                    uf.unite(i, domain.index(q));
                }
            }
        }
    }

    ComponentLabeling out;
    out.domain = domain;
    out.labels.assign(n, -1);
    std::vector<int> root_label(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (!s.contains_index(i)) continue;
        const std::size_t r = uf.find(i);
        if (root_label[r] < 0) root_label[r] = out.count++;
        out.labels[i] = root_label[r];
    }
    return out;
}

PixelSet complement(const PixelSet& s) {
    std::vector<std::uint8_t> bits;
    bits.reserve(s.bits().size());
    for (std::uint8_t b : s.bits()) bits.push_back(b != 0 ? 0 : 1);
    return PixelSet(BinaryImage(s.domain().width, s.domain().height, std::move(bits)));
}

std::map<PixelCoord, int> degree_profile(const PixelSet& s, Adjacency adj) {
    std::map<PixelCoord, int> out;
    for (PixelCoord p : s.members()) {
        int degree = 0;
        for (Offset o : offsets(adj)) {
            if (s.contains({p.x + o.dx, p.y + o.dy})) ++degree;
        }
        out.emplace_hint(out.end(), p, degree);
    }
    return out;
}

}  // namespace jordanmask
