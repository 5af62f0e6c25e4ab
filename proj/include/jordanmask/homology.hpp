#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "jordanmask/grid.hpp"
#include "jordanmask/topology.hpp"

namespace jordanmask {

/// Vertices, edges and (optionally) triangles of a pixel adjacency complex.
/// Edges and triangles are stored with ascending vertex indices, sorted
/// lexicographically.
struct SimplicialComplex {
    std::vector<PixelCoord> vertices;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 3>> triangles;

    /// Every triangle's edges and every edge's endpoints are present.
    [[nodiscard]] bool is_face_closed() const;
};

/// Copies the graph; with fill_triangles, every 3-clique becomes a 2-simplex.
SimplicialComplex complex_from_graph(const AdjacencyGraph& g, bool fill_triangles);

/// Dense bit matrix over GF(2), rows packed into 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    [[nodiscard]] bool get(std::size_t r, std::size_t c) const {
        return (words_[r * stride_ + c / 64] >> (c % 64)) & 1U;
    }
    void set(std::size_t r, std::size_t c, bool value = true);
    void flip(std::size_t r, std::size_t c);

    [[nodiscard]] std::size_t column_weight(std::size_t c) const;
    [[nodiscard]] bool is_zero() const;

    static BitMatrix identity(std::size_t n);

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    friend std::size_t gf2_rank(const BitMatrix& m);
    friend BitMatrix gf2_product(const BitMatrix& a, const BitMatrix& b);

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Boundary operator from k-simplices (columns) to (k-1)-simplices (rows).
using BoundaryMatrix = BitMatrix;

/// k = 1: vertex/edge incidence. k = 2: edge/triangle incidence.
/// Throws std::invalid_argument for any other k.
BoundaryMatrix boundary_matrix(const SimplicialComplex& cx, int k);

/// Rank over GF(2) by Gaussian elimination on a private copy.
std::size_t gf2_rank(const BitMatrix& m);

/// a * b over GF(2). Throws DimensionMismatch when a.cols() != b.rows().
BitMatrix gf2_product(const BitMatrix& a, const BitMatrix& b);

struct BettiProfile {
    std::size_t b0 = 0;
    std::size_t b1 = 0;

    friend bool operator==(const BettiProfile&, const BettiProfile&) = default;
    BettiProfile& operator+=(const BettiProfile& o) {
        b0 += o.b0;
        b1 += o.b1;
        return *this;
    }
};

/// b0 = |V| - rank d1, b1 = |E| - rank d1 - rank d2.
BettiProfile betti(const SimplicialComplex& cx);

/// Component count and cycle rank of a graph. Equals betti() on
/// triangle-free complexes (e.g. every Four-adjacency graph).
BettiProfile betti_graph_fast(const AdjacencyGraph& g);

}  // namespace jordanmask
