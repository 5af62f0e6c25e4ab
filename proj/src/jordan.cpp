#include "jordanmask/jordan.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <stdexcept>

namespace jordanmask {

namespace {

constexpr std::array<Offset, 8> kRing = {{{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                          {1, 0},   {-1, 1}, {0, 1},  {1, 1}}};
constexpr std::array<Offset, 4> kCross = {{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};

}  // namespace

BinaryImage despeckle(const BinaryImage& mask) {
    const Size size = mask.size();
    const auto in = mask.pixels();
    std::vector<std::uint8_t> out(in.begin(), in.end());
    for (int y = 1; y <= size.height; ++y) {
        for (int x = 1; x <= size.width; ++x) {
            int foreground = 0;
            for (Offset o : kRing) {
                const PixelCoord q{x + o.dx, y + o.dy};
                if (size.contains(q) && in[size.index(q)] != 0) ++foreground;
            }
            const std::size_t i = size.index({x, y});
            if (in[i] != 0 && 8 - foreground > 7) {
                out[i] = 0;
            } else if (in[i] == 0 && foreground > 6) {
                out[i] = 1;
            }
        }
    }
    return BinaryImage(size.width, size.height, std::move(out));
}

CurveCandidate extract_candidate(const BinaryImage& mask) {
    const Size size = mask.size();
    const PixelSet m(mask);

    auto has_neighbor = [&size](PixelCoord p, auto&& pred) {
        for (Offset o : kRing) {
            const PixelCoord q{p.x + o.dx, p.y + o.dy};
            if (size.contains(q) && pred(size.index(q))) return true;
        }
        return false;
    };

    CurveCandidate c{PixelSet(size), PixelSet(size), PixelSet(size)};
    for (PixelCoord p : m.members()) {
        if (has_neighbor(p, [&m](std::size_t i) { return !m.contains_index(i); })) {
            c.p_preliminary.insert(p);
        } else {
            c.eroded_interior.insert(p);
        }
    }
    // In U = background ∪ P the zero pixels are exactly the eroded interior.
    for (PixelCoord p : c.p_preliminary.members()) {
        if (has_neighbor(p, [&c](std::size_t i) { return c.eroded_interior.contains_index(i); })) {
            c.s.insert(p);
        }
    }
    return c;
}

const char* to_string(JordanCategory c) {
    switch (c) {
        case JordanCategory::SingleJordan: return "single_jordan";
        case JordanCategory::MultiObject: return "multi_object";
        case JordanCategory::FragmentedObject: return "fragmented_object";
        case JordanCategory::WithHoles: return "with_holes";
        case JordanCategory::NotJordan: return "not_jordan";
        case JordanCategory::EmptyCandidate: return "empty_candidate";
    }
    return "?";
}

std::optional<JordanCategory> parse_category(const std::string& text) {
    for (auto c : {JordanCategory::SingleJordan, JordanCategory::MultiObject,
                   JordanCategory::FragmentedObject, JordanCategory::WithHoles,
                   JordanCategory::NotJordan, JordanCategory::EmptyCandidate}) {
        if (text == to_string(c)) return c;
    }
    return std::nullopt;
}

std::vector<NestingEntry> classify_nesting(const ComponentLabeling& curve_components,
                                           const ComponentLabeling& complement_components) {
    const Size size = curve_components.domain;
    if (size != complement_components.domain ||
        curve_components.labels.size() != complement_components.labels.size()) {
        throw std::logic_error("classify_nesting: labellings cover different domains");
    }
    const auto curves = static_cast<std::size_t>(curve_components.count);
    const auto regions = static_cast<std::size_t>(complement_components.count);

    std::vector<std::set<int>> regions_of_curve(curves);
    std::vector<std::set<int>> curves_of_region(regions);
    std::vector<bool> outside(regions, false);

    for (int y = 1; y <= size.height; ++y) {
        for (int x = 1; x <= size.width; ++x) {
            const std::size_t i = size.index({x, y});
            const int region = complement_components.labels[i];
            if (region >= 0 && (x == 1 || y == 1 || x == size.width || y == size.height)) {
                outside[static_cast<std::size_t>(region)] = true;
            }
            const int curve = curve_components.labels[i];
            if (curve < 0) continue;
            if (region >= 0) {
                throw std::logic_error("classify_nesting: pixel labelled as curve and complement");
            }
            for (Offset o : kRing) {
                const PixelCoord q{x + o.dx, y + o.dy};
                if (!size.contains(q)) continue;
                const int r = complement_components.labels[size.index(q)];
                if (r < 0) continue;
                regions_of_curve[static_cast<std::size_t>(curve)].insert(r);
                curves_of_region[static_cast<std::size_t>(r)].insert(curve);
            }
        }
    }

    // Breadth-first from the outside regions through the curve/region incidence.
    std::vector<NestingEntry> out(curves);
    std::vector<bool> curve_seen(curves, false);
    std::vector<std::optional<int>> region_via(regions);
    std::vector<bool> region_seen(regions, false);
    std::deque<std::size_t> queue;
    for (std::size_t r = 0; r < regions; ++r) {
        if (outside[r]) {
            region_seen[r] = true;
            queue.push_back(r);
        }
    }
    while (!queue.empty()) {
        const std::size_t r = queue.front();
        queue.pop_front();
        for (int curve : curves_of_region[r]) {
            const auto c = static_cast<std::size_t>(curve);
            if (curve_seen[c]) continue;
            curve_seen[c] = true;
            out[c].container = region_via[r];
            for (int next : regions_of_curve[c]) {
                const auto n = static_cast<std::size_t>(next);
                if (region_seen[n]) continue;
                region_seen[n] = true;
                region_via[n] = curve;
                queue.push_back(n);
            }
        }
    }
    for (std::size_t c = 0; c < curves; ++c) out[c].curve = static_cast<int>(c);
    return out;
}

JordanVerdict evaluate(const BinaryImage& mask, const JordanOptions& opts) {
    JordanVerdict v;
    v.padded = zero_pad(mask, opts.pad);
    v.preprocessed = opts.despeckle ? despeckle(v.padded) : v.padded;
    v.candidate = extract_candidate(v.preprocessed);

    const PixelSet& s = v.candidate.s;
    JordanEvidence& ev = v.evidence;
    ev.curve_points = s.size();

    const AdjacencyGraph graph = build_graph(s, Adjacency::Four);
    ev.betti_s = betti_graph_fast(graph);
    if (opts.self_check) {
        const BettiProfile slow = betti(complex_from_graph(graph, false));
        if (slow != ev.betti_s) {
            throw std::logic_error("evaluate: boundary-rank and cycle-rank Betti numbers disagree");
        }
    }

    v.curve_labels = connected_components(s, Adjacency::Four);
    ev.component_sizes = v.curve_labels.component_sizes();
    ev.min_points_ok = !ev.component_sizes.empty() &&
                       std::all_of(ev.component_sizes.begin(), ev.component_sizes.end(),
                                   [](std::size_t n) { return n >= kMinFourCurvePoints; });
    for (const auto& [p, degree] : degree_profile(s, Adjacency::Four)) {
        if (degree != 2) ev.degree_violations.push_back(p);
    }

    v.complement_labels = connected_components(complement(s), Adjacency::Eight);
    ev.complement_b0 = v.complement_labels.count;
    v.nesting = classify_nesting(v.curve_labels, v.complement_labels);

    if (s.empty()) {
        v.category = JordanCategory::EmptyCandidate;
        return v;
    }
    const std::size_t k = ev.betti_s.b0;
    const bool signature = ev.betti_s.b1 == k && static_cast<std::size_t>(ev.complement_b0) == k + 1;
    if (!signature || !ev.min_points_ok || !ev.degree_violations.empty()) {
        v.category = JordanCategory::NotJordan;
    } else if (k == 1) {
        v.category = JordanCategory::SingleJordan;
    } else if (std::any_of(v.nesting.begin(), v.nesting.end(),
                           [](const NestingEntry& n) { return n.container.has_value(); })) {
        v.category = JordanCategory::WithHoles;
    } else if (connected_components(PixelSet(v.preprocessed), Adjacency::Eight).count == 1) {
        v.category = JordanCategory::FragmentedObject;
    } else {
        v.category = JordanCategory::MultiObject;
    }
    return v;
}

TheoremReport theorem_check(const PixelSet& s) {
    const Size size = s.domain();
    TheoremReport report;

    auto flood = [&size](std::vector<int>& label, std::size_t seed, int id, auto&& member,
                         std::span<const Offset> steps) {
        std::deque<PixelCoord> queue{size.coord(seed)};
        label[seed] = id;
        while (!queue.empty()) {
            const PixelCoord p = queue.front();
            queue.pop_front();
            for (Offset o : steps) {
                const PixelCoord q{p.x + o.dx, p.y + o.dy};
                if (!size.contains(q)) continue;
                const std::size_t j = size.index(q);
                if (label[j] < 0 && member(j)) {
                    label[j] = id;
                    queue.push_back(q);
                }
            }
        }
    };
    auto in_s = [&s](std::size_t i) { return s.contains_index(i); };
    auto not_s = [&s](std::size_t i) { return !s.contains_index(i); };

    // Curve side: connected, every point with exactly two 4-neighbours, >= 8 points.
    const auto members = s.members();
    bool degrees_ok = true;
    for (PixelCoord p : members) {
        int degree = 0;
        for (Offset o : kCross) degree += s.contains({p.x + o.dx, p.y + o.dy}) ? 1 : 0;
        degrees_ok = degrees_ok && degree == 2;
    }
    bool connected = false;
    if (!members.empty()) {
        std::vector<int> label(size.area(), -1);
        flood(label, size.index(members.front()), 0, in_s, kCross);
        connected = std::all_of(members.begin(), members.end(),
                                [&](PixelCoord p) { return label[size.index(p)] == 0; });
    }
    report.is_four_curve = connected && degrees_ok && members.size() >= kMinFourCurvePoints;

    // Complement side: exactly two 8-components, every S point 8-adjacent to both.
    std::vector<int> label(size.area(), -1);
    int components = 0;
    for (std::size_t i = 0; i < size.area(); ++i) {
        if (!s.contains_index(i) && label[i] < 0) flood(label, i, components++, not_s, kRing);
    }
    report.complement_components = components;
    bool two_sided = components == 2 && !members.empty();
    for (PixelCoord p : members) {
        if (!two_sided) break;
        bool touches[2] = {false, false};
        for (Offset o : kRing) {
            const PixelCoord q{p.x + o.dx, p.y + o.dy};
            if (size.contains(q) && label[size.index(q)] >= 0) touches[label[size.index(q)]] = true;
        }
        two_sided = touches[0] && touches[1];
    }
    report.separates_plane = two_sided;
    return report;
}

}  // namespace jordanmask
