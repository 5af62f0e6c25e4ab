#include "jordanmask/segment.hpp"

#include <cmath>
#include <limits>

#include "jordanmask/watershed.hpp"

namespace jordanmask {

Histogram Histogram::of(const GrayImage& img) {
    Histogram h;
    for (std::uint8_t v : img.pixels()) ++h.counts[v];
    h.total = img.size().area();
    return h;
}

const char* to_string(Method m) {
    switch (m) {
        case Method::Otsu: return "otsu";
        case Method::RidlerCalvard: return "ridler-calvard";
        case Method::KMeans: return "kmeans";
        case Method::Watershed: return "watershed";
    }
    return "?";
}

std::optional<Method> parse_method(const std::string& text) {
    for (auto m : {Method::Otsu, Method::RidlerCalvard, Method::KMeans, Method::Watershed}) {
        if (text == to_string(m)) return m;
    }
    return std::nullopt;
}

std::optional<PolarityMode> parse_polarity(const std::string& text) {
    if (text == "above") return PolarityMode::Above;
    if (text == "below") return PolarityMode::Below;
    if (text == "auto") return PolarityMode::Auto;
    return std::nullopt;
}

namespace {

__extension__ typedef unsigned __int128 u128;

// Three-way comparison of p1/q1 and p2/q2 (q > 0) by simultaneous continued
// fraction expansion; never overflows.
int compare_fractions(u128 p1, u128 q1, u128 p2, u128 q2) {
    int sign = 1;
    for (;;) {
        const u128 a1 = p1 / q1;
        const u128 a2 = p2 / q2;
        if (a1 != a2) return a1 < a2 ? -sign : sign;
        const u128 r1 = p1 % q1;
        const u128 r2 = p2 % q2;
        if (r1 == 0 || r2 == 0) {
            if (r1 == r2) return 0;
            return r1 == 0 ? -sign : sign;
        }
        // r1/q1 vs r2/q2 has the opposite sign of q1/r1 vs q2/r2.
        const u128 n1 = q1;
        const u128 n2 = q2;
        p1 = n1;
        q1 = r1;
        p2 = n2;
        q2 = r2;
        sign = -sign;
    }
}

void require_pixels(const Histogram& h, const char* who) {
    if (h.total == 0) throw DegenerateInput(std::string(who) + ": empty histogram");
}

struct ClassStats {
    std::uint64_t n = 0;
    std::uint64_t sum = 0;
};

// Statistics of {v <= split} and {v > split}.
std::pair<ClassStats, ClassStats> split_stats(const Histogram& h, int split) {
    ClassStats lo, hi;
    for (int v = 0; v < 256; ++v) {
        auto& c = v <= split ? lo : hi;
        c.n += h.counts[static_cast<std::size_t>(v)];
        c.sum += h.counts[static_cast<std::size_t>(v)] * static_cast<std::uint64_t>(v);
    }
    return {lo, hi};
}

int floor_split(double t) {
    return static_cast<int>(std::clamp(std::floor(t), -1.0, 255.0));
}

}  // namespace

int otsu_threshold(const Histogram& h) {
    require_pixels(h, "otsu_threshold");
    const std::uint64_t total = h.total;
    std::uint64_t grand = 0;
    for (int v = 0; v < 256; ++v) grand += h.counts[static_cast<std::size_t>(v)] * static_cast<std::uint64_t>(v);

    const bool exact = total < (std::uint64_t{1} << 28);
    int best = 0;
    u128 best_num = 0;
    u128 best_den = 1;
    long double best_approx = 0.0L;

    std::uint64_t n0 = 0;
    std::uint64_t s0 = 0;
    for (int t = 0; t < 256; ++t) {
        n0 += h.counts[static_cast<std::size_t>(t)];
        s0 += h.counts[static_cast<std::size_t>(t)] * static_cast<std::uint64_t>(t);
        const std::uint64_t n1 = total - n0;
        if (n0 == 0 || n1 == 0) continue;  // one empty class: zero between-class variance

        // w0 w1 (mu0 - mu1)^2 = D^2 / (N^2 n0 n1) with D = N s0 - S n0.
        const u128 a = static_cast<u128>(total) * s0;
        const u128 b = static_cast<u128>(grand) * n0;
        const u128 d = a > b ? a - b : b - a;
        const u128 den = static_cast<u128>(n0) * n1;
        if (exact) {
            const u128 num = d * d;
            if (compare_fractions(num, den, best_num, best_den) > 0) {
                best = t;
                best_num = num;
                best_den = den;
            }
        } else {
            const long double dd = static_cast<long double>(d);
            const long double score = dd * dd / static_cast<long double>(den);
            if (score > best_approx) {
                best = t;
                best_approx = score;
            }
        }
    }
    return best;
}

RidlerCalvardResult ridler_calvard(const Histogram& h, const SegmenterConfig& cfg) {
    require_pixels(h, "ridler_calvard_threshold");
    if (cfg.rc_max_iter < 1) throw std::invalid_argument("rc_max_iter must be at least 1");

    const ClassStats all = split_stats(h, 255).first;
    double t = static_cast<double>(all.sum) / static_cast<double>(all.n);
    RidlerCalvardResult out;
    for (int iter = 1; iter <= cfg.rc_max_iter; ++iter) {
        const auto [lo, hi] = split_stats(h, floor_split(t));
        const double mu0 = lo.n ? static_cast<double>(lo.sum) / static_cast<double>(lo.n) : t;
        const double mu1 = hi.n ? static_cast<double>(hi.sum) / static_cast<double>(hi.n) : t;
        const double next = (mu0 + mu1) / 2.0;
        out.iterations = iter;
        if (std::abs(next - t) < cfg.rc_epsilon) {
            out.threshold = t;
            out.converged = true;
            return out;
        }
        t = next;
    }
    out.threshold = t;
    return out;
}

double ridler_calvard_threshold(const Histogram& h, const SegmenterConfig& cfg) {
    return ridler_calvard(h, cfg).threshold;
}

KMeansResult kmeans2(const Histogram& h, const SegmenterConfig& cfg) {
    require_pixels(h, "kmeans2_threshold");
    if (cfg.kmeans_max_iter < 1) throw std::invalid_argument("kmeans_max_iter must be at least 1");

    int lowest = -1;
    int highest = -1;
    for (int v = 0; v < 256; ++v) {
        if (h.counts[static_cast<std::size_t>(v)] == 0) continue;
        if (lowest < 0) lowest = v;
        highest = v;
    }
    if (lowest == highest) {
        throw DegenerateInput("kmeans2_threshold: single intensity value " + std::to_string(lowest));
    }

    auto sse = [&h](int split, double c0, double c1) {
        double acc = 0.0;
        for (int v = 0; v < 256; ++v) {
            const double d = v - (v <= split ? c0 : c1);
            acc += static_cast<double>(h.counts[static_cast<std::size_t>(v)]) * d * d;
        }
        return acc;
    };

    KMeansResult out;
    out.low_centroid = lowest;
    out.high_centroid = highest;
    int split = floor_split((out.low_centroid + out.high_centroid) / 2.0);
    for (;;) {
        ++out.iterations;
        const auto [lo, hi] = split_stats(h, split);
        out.low_centroid = static_cast<double>(lo.sum) / static_cast<double>(lo.n);
        out.high_centroid = static_cast<double>(hi.sum) / static_cast<double>(hi.n);
        out.splits.push_back(split);
        out.sse_trace.push_back(sse(split, out.low_centroid, out.high_centroid));
        const int next = floor_split((out.low_centroid + out.high_centroid) / 2.0);
        if (next == split || out.iterations >= cfg.kmeans_max_iter) break;
        split = next;
    }
    out.threshold = (out.low_centroid + out.high_centroid) / 2.0;
    return out;
}

double kmeans2_threshold(const Histogram& h, const SegmenterConfig& cfg) {
    return kmeans2(h, cfg).threshold;
}

Polarity resolve_polarity(const GrayImage& img, double threshold, PolarityMode mode) {
    switch (mode) {
        case PolarityMode::Above: return Polarity::ForegroundAbove;
        case PolarityMode::Below: return Polarity::ForegroundBelow;
        case PolarityMode::Auto: break;
    }
    std::size_t above = 0;
    for (std::uint8_t v : img.pixels()) above += static_cast<double>(v) > threshold ? 1 : 0;
    return above <= img.size().area() - above ? Polarity::ForegroundAbove
                                              : Polarity::ForegroundBelow;
}

Segmentation segment(const GrayImage& img, const SegmenterConfig& cfg) {
    if (cfg.method == Method::Watershed) return watershed_segment(img, cfg);

    const Histogram h = Histogram::of(img);
    double t = 0.0;
    switch (cfg.method) {
        case Method::Otsu: t = otsu_threshold(h); break;
        case Method::RidlerCalvard: t = ridler_calvard_threshold(h, cfg); break;
        case Method::KMeans: t = kmeans2_threshold(h, cfg); break;
        case Method::Watershed: break;
    }
    const Polarity polarity = resolve_polarity(img, t, cfg.polarity);
    return {binarize(img, t, polarity), t, polarity};
}

}  // namespace jordanmask
