#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jordanmask/grid.hpp"
#include "jordanmask/homology.hpp"
#include "jordanmask/topology.hpp"

namespace jordanmask {

/// Minimum size of a simple closed 4-curve.
inline constexpr std::size_t kMinFourCurvePoints = 8;

/// One simultaneous pass over a zero-padded mask: a foreground pixel whose
/// eight neighbours are all background becomes background, a background pixel
/// with seven or eight foreground neighbours becomes foreground. Pixels outside
/// the domain count as background.
BinaryImage despeckle(const BinaryImage& mask);

/// Boundary structure extracted from a mask M.
struct CurveCandidate {
    PixelSet s;                // P pixels 8-adjacent to the eroded interior
    PixelSet p_preliminary;    // M pixels 8-adjacent to a background pixel
    PixelSet eroded_interior;  // M \ P
};

/// 1. P = mask pixels with a background 8-neighbour.
/// 2. U = background ∪ P, so only M \ P is zero in U.
/// 3. S = U pixels with an 8-neighbour that is zero in U.
CurveCandidate extract_candidate(const BinaryImage& mask);

enum class JordanCategory {
    SingleJordan,
    MultiObject,
    FragmentedObject,
    WithHoles,
    NotJordan,
    EmptyCandidate,
};

/// Serialised names: single_jordan, multi_object, fragmented_object, with_holes,
/// not_jordan, empty_candidate.
const char* to_string(JordanCategory c);
std::optional<JordanCategory> parse_category(const std::string& text);

struct JordanEvidence {
    BettiProfile betti_s;
    int complement_b0 = 0;
    std::size_t curve_points = 0;
    std::vector<std::size_t> component_sizes;
    std::vector<PixelCoord> degree_violations;
    bool min_points_ok = false;
};

struct NestingEntry {
    int curve = 0;
    /// Curve component whose bounded region holds this one.
    std::optional<int> container;

    friend bool operator==(const NestingEntry&, const NestingEntry&) = default;
};

/// Relates curve components through the complement regions they bound.
///
/// A complement component touching the domain border is outside. Starting from
/// the outside regions, every curve adjacent to an already reached region is
/// contained by the curve that reached that region (none for outside regions),
/// and the curve's other adjacent regions become reached through it. Throws
/// std::logic_error if the labellings cover different domains.
std::vector<NestingEntry> classify_nesting(const ComponentLabeling& curve_components,
                                           const ComponentLabeling& complement_components);

struct JordanOptions {
    int pad = 1;
    bool despeckle = true;
    /// Also compute Betti numbers from boundary-matrix ranks and require agreement.
    bool self_check = false;
};

struct JordanVerdict {
    JordanCategory category = JordanCategory::EmptyCandidate;
    JordanEvidence evidence;
    std::vector<NestingEntry> nesting;
    BinaryImage padded;
    BinaryImage preprocessed;
    CurveCandidate candidate;
    ComponentLabeling curve_labels;
    ComponentLabeling complement_labels;
};

/// Pads, despeckles (unless disabled), extracts S and classifies the mask.
JordanVerdict evaluate(const BinaryImage& mask, const JordanOptions& opts = {});

/// Direct checks of both directions of the digital Jordan theorem for the
/// 4/8 pairing, independent of the homology path.
struct TheoremReport {
    bool is_four_curve = false;      // connected, every 4-degree 2, >= 8 points
    bool separates_plane = false;    // two 8-components, each S point touches both
    int complement_components = 0;
};

TheoremReport theorem_check(const PixelSet& s);

}  // namespace jordanmask
