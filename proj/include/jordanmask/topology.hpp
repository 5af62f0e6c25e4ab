#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "jordanmask/grid.hpp"

namespace jordanmask {

/// Neighbourhood relations on the digital plane.
///
/// Four: horizontal and vertical neighbours. Eight: Four plus all diagonals.
/// SixNE: Four plus (x+1, y+1) and (x-1, y-1). SixNW: Four plus (x+1, y-1) and (x-1, y+1).
enum class Adjacency { Four, Eight, SixNE, SixNW };

struct Offset {
    int dx;
    int dy;
};

/// Neighbour offsets of an adjacency, in row-major order.
std::span<const Offset> offsets(Adjacency adj);

const char* to_string(Adjacency adj);

/// Arbitrary subset of a rectangular image domain.
class PixelSet {
public:
    PixelSet() = default;
    explicit PixelSet(Size domain);
    PixelSet(Size domain, std::span<const PixelCoord> members);
    /// Foreground pixels of a mask.
    explicit PixelSet(const BinaryImage& img);

    [[nodiscard]] Size domain() const { return domain_; }
    [[nodiscard]] std::size_t size() const { return count_; }
    [[nodiscard]] bool empty() const { return count_ == 0; }

    [[nodiscard]] bool contains(PixelCoord p) const {
        return domain_.contains(p) && bits_[domain_.index(p)] != 0;
    }
    /// Membership by storage offset; no bounds check.
    [[nodiscard]] bool contains_index(std::size_t index) const { return bits_[index] != 0; }

    void insert(PixelCoord p);
    void erase(PixelCoord p);

    /// Members sorted row-major.
    [[nodiscard]] std::vector<PixelCoord> members() const;
    [[nodiscard]] BinaryImage to_image() const;
    [[nodiscard]] std::span<const std::uint8_t> bits() const { return bits_; }

    [[nodiscard]] bool is_subset_of(const PixelSet& other) const;

    friend bool operator==(const PixelSet&, const PixelSet&) = default;

private:
    Size domain_{};
    std::vector<std::uint8_t> bits_;
    std::size_t count_ = 0;
};

/// In-domain neighbours of p in row-major order. Throws DomainError if p lies outside.
std::vector<PixelCoord> neighbors(PixelCoord p, Adjacency adj, Size domain);

/// Pixels as vertices, mutual adjacency as edges.
struct AdjacencyGraph {
    Adjacency adjacency = Adjacency::Four;
    std::vector<PixelCoord> vertices;          // row-major
    std::vector<std::pair<int, int>> edges;    // (i, j), i < j, lexicographic
};

AdjacencyGraph build_graph(const PixelSet& s, Adjacency adj);

/// Component labels over a domain. Non-members carry -1; ids are assigned in
/// row-major order of first encounter.
struct ComponentLabeling {
    Size domain{};
    std::vector<int> labels;
    int count = 0;

    [[nodiscard]] int label(PixelCoord p) const { return labels[domain.index(p)]; }
    [[nodiscard]] std::vector<std::size_t> component_sizes() const;
};

/// Union-find labelling of the maximal connected subsets of s.
ComponentLabeling connected_components(const PixelSet& s, Adjacency adj);

PixelSet complement(const PixelSet& s);

/// Number of members of s among each member's neighbours.
std::map<PixelCoord, int> degree_profile(const PixelSet& s, Adjacency adj);

}  // namespace jordanmask
