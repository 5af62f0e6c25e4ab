#include <doctest.h>

#include <cmath>

#include "jordanmask/segment.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace jordanmask;

namespace {

Histogram spikes(std::initializer_list<std::pair<int, std::uint64_t>> bins) {
    Histogram h;
    for (auto [v, n] : bins) h.add(static_cast<std::uint8_t>(v), n);
    return h;
}

/// 130-pixel image: `bright` pixels at 200, the rest at 50.
GrayImage two_level(int bright) {
    std::vector<std::uint8_t> px(130, 50);
    for (int i = 0; i < bright; ++i) px[static_cast<std::size_t>(i * 130 / bright)] = 200;
    return GrayImage(13, 10, std::move(px));
}

}  // namespace

TEST_CASE("Otsu examples") {
    CHECK(otsu_threshold(spikes({{50, 100}, {200, 100}})) == 50);
    CHECK(oracle::otsu_exhaustive(spikes({{50, 100}, {200, 100}})) == 50);
    CHECK(otsu_threshold(spikes({{77, 12}})) == 0);
    CHECK_THROWS_AS(otsu_threshold(Histogram{}), DegenerateInput);
}

TEST_CASE("Otsu matches the exhaustive oracle") {
    gen::Rng rng(71);
    for (int i = 0; i < 200; ++i) {
        const Histogram h = gen::random_histogram(rng);
        CHECK(otsu_threshold(h) == oracle::otsu_exhaustive(h));
    }
    // Large populations: near ties need the exact comparison.
    for (int i = 0; i < 50; ++i) {
        Histogram h;
        for (int k = 0; k < 6; ++k)
            h.add(static_cast<std::uint8_t>(gen::uniform(rng, 0, 255)),
                  static_cast<std::uint64_t>(gen::uniform(rng, 1, 1 << 24)));
        CHECK(otsu_threshold(h) == oracle::otsu_exhaustive(h));
    }
    // Mirror-symmetric histogram: two equal optima, the smaller one wins.
    const Histogram sym = spikes({{10, 5}, {20, 5}, {30, 1}, {40, 5}, {50, 5}});
    CHECK(otsu_threshold(sym) == oracle::otsu_exhaustive(sym));
}

TEST_CASE("Ridler-Calvard examples") {
    const RidlerCalvardResult flat = ridler_calvard(spikes({{90, 40}}));
    CHECK(flat.converged);
    CHECK(flat.threshold == doctest::Approx(90));
    CHECK(flat.iterations == 1);

    CHECK(ridler_calvard_threshold(spikes({{50, 100}, {200, 100}})) == doctest::Approx(125));
    CHECK_THROWS_AS(ridler_calvard(Histogram{}), DegenerateInput);
}

TEST_CASE("Ridler-Calvard fixed point") {
    gen::Rng rng(73);
    const SegmenterConfig cfg;
    for (int i = 0; i < 200; ++i) {
        const Histogram h = gen::random_histogram(rng);
        const RidlerCalvardResult r = ridler_calvard(h, cfg);
        REQUIRE(r.converged);
        CHECK(r.iterations <= cfg.rc_max_iter);
        const double mid = (oracle::class_mean(h, r.threshold, false) + oracle::class_mean(h, r.threshold, true)) / 2;
        CHECK(std::abs(r.threshold - mid) < cfg.rc_epsilon);
    }
}

TEST_CASE("k-means examples") {
    const KMeansResult ends = kmeans2(spikes({{0, 3}, {255, 900}}));
    CHECK(ends.low_centroid == 0);
    CHECK(ends.high_centroid == 255);
    CHECK(ends.threshold == doctest::Approx(127.5));

    const KMeansResult three = kmeans2(spikes({{10, 1}, {20, 1}, {200, 1}}));
    CHECK(three.low_centroid == doctest::Approx(15));
    CHECK(three.high_centroid == doctest::Approx(200));
    CHECK(three.threshold == doctest::Approx(107.5));

    try {
        kmeans2(spikes({{42, 9}}));
        FAIL("expected DegenerateInput");
    } catch (const DegenerateInput& e) {
        CHECK(std::string(e.what()).find("42") != std::string::npos);
    }
}

TEST_CASE("k-means descends and its threshold reproduces the assignment") {
    gen::Rng rng(79);
    for (int i = 0; i < 200; ++i) {
        Histogram h = gen::random_histogram(rng);
        h.add(0);
        h.add(255);
        const KMeansResult r = kmeans2(h);
        REQUIRE(r.splits.size() == r.sse_trace.size());
        for (std::size_t k = 1; k < r.splits.size(); ++k) {
            CHECK(oracle::within_cluster_ss(h, r.splits[k]) <= oracle::within_cluster_ss(h, r.splits[k - 1]));
        }
        const int final_split = r.splits.back();
        for (int v = 0; v < 256; ++v) CHECK((v > r.threshold) == (v > final_split));
    }
}

TEST_CASE("polarity and dispatch") {
    const GrayImage img = two_level(30);
    SegmenterConfig cfg{.method = Method::Otsu};
    const Segmentation auto_seg = segment(img, cfg);
    REQUIRE(auto_seg.threshold.has_value());
    CHECK(*auto_seg.threshold == 50);
    CHECK(auto_seg.polarity == Polarity::ForegroundAbove);
    for (std::size_t i = 0; i < img.pixels().size(); ++i)
        CHECK(auto_seg.mask.pixels()[i] == (img.pixels()[i] == 200 ? 1 : 0));

    cfg.polarity = PolarityMode::Below;
    const Segmentation below = segment(img, cfg);
    for (std::size_t i = 0; i < img.pixels().size(); ++i)
        CHECK(below.mask.pixels()[i] == (img.pixels()[i] == 50 ? 1 : 0));

    // With the bright class in the majority, auto picks the dark pixels.
    cfg.polarity = PolarityMode::Auto;
    CHECK(segment(two_level(100), cfg).polarity == Polarity::ForegroundBelow);
}

TEST_CASE("uniform images never crash") {
    const GrayImage flat(8, 8, 128);
    for (Method m : {Method::Otsu, Method::RidlerCalvard, Method::Watershed}) {
        const Segmentation s = segment(flat, {.method = m});
        const std::size_t fg = foreground_count(s.mask);
        CHECK((fg == 0 || fg == 64));
    }
    CHECK_THROWS_AS(segment(flat, {.method = Method::KMeans}), DegenerateInput);
}

TEST_CASE("segmenters are deterministic") {
    gen::Rng rng(83);
    for (int i = 0; i < 20; ++i) {
        const GrayImage img = gen::random_gray(rng, 16, 12);
        for (Method m : {Method::Otsu, Method::RidlerCalvard, Method::KMeans, Method::Watershed}) {
            CHECK(segment(img, {.method = m}).mask == segment(img, {.method = m}).mask);
        }
    }
}

TEST_CASE("method and polarity names") {
    for (Method m : {Method::Otsu, Method::RidlerCalvard, Method::KMeans, Method::Watershed})
        CHECK(parse_method(to_string(m)) == m);
    CHECK(parse_method("ridler-calvard") == Method::RidlerCalvard);
    CHECK_FALSE(parse_method("sauvola").has_value());
    CHECK(parse_polarity("auto") == PolarityMode::Auto);
    CHECK(parse_polarity("above") == PolarityMode::Above);
    CHECK(parse_polarity("below") == PolarityMode::Below);
    CHECK_FALSE(parse_polarity("up").has_value());
}
