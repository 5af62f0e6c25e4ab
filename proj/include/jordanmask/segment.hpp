#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jordanmask/grid.hpp"

namespace jordanmask {

/// 256-bin intensity histogram.
struct Histogram {
    std::array<std::uint64_t, 256> counts{};
    std::uint64_t total = 0;

    static Histogram of(const GrayImage& img);
    void add(std::uint8_t value, std::uint64_t n = 1) {
        counts[value] += n;
        total += n;
    }
};

enum class Method { Otsu, RidlerCalvard, KMeans, Watershed };

const char* to_string(Method m);
/// Accepts otsu, ridler-calvard, kmeans, watershed.
std::optional<Method> parse_method(const std::string& text);

enum class PolarityMode { Above, Below, Auto };

std::optional<PolarityMode> parse_polarity(const std::string& text);

struct SegmenterConfig {
    Method method = Method::Otsu;
    PolarityMode polarity = PolarityMode::Auto;
    int kmeans_max_iter = 100;
    int rc_max_iter = 100;
    double rc_epsilon = 0.5;
};

/// Threshold t maximising w0 * w1 * (mu0 - mu1)^2 with class 0 = {v <= t}.
/// Compared exactly (rational arithmetic); ties resolve to the smallest t.
/// Throws DegenerateInput on an empty histogram.
int otsu_threshold(const Histogram& h);

struct RidlerCalvardResult {
    double threshold = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Iterative intermeans. Starts at the global mean; the returned threshold t
/// satisfies |t - (mu(<= t) + mu(> t)) / 2| < rc_epsilon when converged.
/// An empty class takes the current threshold as its mean.
RidlerCalvardResult ridler_calvard(const Histogram& h, const SegmenterConfig& cfg = {});
double ridler_calvard_threshold(const Histogram& h, const SegmenterConfig& cfg = {});

struct KMeansResult {
    double threshold = 0.0;
    double low_centroid = 0.0;
    double high_centroid = 0.0;
    int iterations = 0;
    /// Largest intensity of the low cluster for each assignment, in order.
    std::vector<int> splits;
    /// Within-cluster sum of squares of each assignment about its own means.
    std::vector<double> sse_trace;
};

/// 1-D Lloyd iteration with two clusters seeded at the lowest and highest
/// occupied intensity; ties go to the lower centroid. The threshold is the
/// midpoint of the final centroids. Throws DegenerateInput when fewer than two
/// intensities occur.
KMeansResult kmeans2(const Histogram& h, const SegmenterConfig& cfg = {});
double kmeans2_threshold(const Histogram& h, const SegmenterConfig& cfg = {});

/// Concrete polarity for a threshold; Auto picks the minority side (ties: above).
Polarity resolve_polarity(const GrayImage& img, double threshold, PolarityMode mode);

struct Segmentation {
    BinaryImage mask;
    std::optional<double> threshold;
    Polarity polarity = Polarity::ForegroundAbove;
};

/// Runs the configured method. With PolarityMode::Auto the foreground is the
/// class with fewer pixels (ties: above).
Segmentation segment(const GrayImage& img, const SegmenterConfig& cfg);

}  // namespace jordanmask
