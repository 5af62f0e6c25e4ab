#include <doctest.h>

#include "jordanmask/jordan.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace jordanmask;

namespace {

std::vector<std::uint8_t> bits(const PixelSet& s) { return {s.bits().begin(), s.bits().end()}; }

/// Neighbourhood of a single pixel at the centre of a padded 5x5 image.
BinaryImage centre_with_ring(std::uint8_t centre, int ring_foreground) {
    BinaryImage img(5, 5);
    img.set({3, 3}, centre);
    const PixelCoord ring[] = {{2, 2}, {3, 2}, {4, 2}, {2, 3}, {4, 3}, {2, 4}, {3, 4}, {4, 4}};
    for (int i = 0; i < ring_foreground; ++i) img.set(ring[i], 1);
    return img;
}

JordanVerdict raw_verdict(const BinaryImage& m) { return evaluate(m, {.pad = 1, .despeckle = false}); }

}  // namespace

TEST_CASE("despeckle thresholds") {
    CHECK(despeckle(centre_with_ring(1, 0)).at({3, 3}) == 0);
    CHECK(despeckle(centre_with_ring(0, 8)).at({3, 3}) == 1);
    CHECK(despeckle(centre_with_ring(0, 7)).at({3, 3}) == 1);
    CHECK(despeckle(centre_with_ring(0, 6)).at({3, 3}) == 0);
    CHECK(despeckle(centre_with_ring(1, 1)).at({3, 3}) == 1);

    // A single pass reads only the input: removing the lone pixel does not
    // cascade into its neighbours.
    BinaryImage pair(6, 5);
    pair.set({3, 3}, 1);
    pair.set({4, 3}, 1);
    CHECK(despeckle(pair) == pair);
}

TEST_CASE("despeckle leaves homogeneous neighbourhoods alone") {
    gen::Rng rng(43);
    for (int i = 0; i < 300; ++i) {
        const BinaryImage m = zero_pad(gen::random_mask(rng, 24), 1);
        const BinaryImage d = despeckle(m);
        for (int y = 1; y <= m.height(); ++y)
            for (int x = 1; x <= m.width(); ++x) {
                bool homogeneous = true;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const PixelCoord q{x + dx, y + dy};
                        const std::uint8_t v = m.size().contains(q) ? m.at(q) : 0;
                        if (v != m.at({x, y})) homogeneous = false;
                    }
                if (homogeneous) CHECK(d.at({x, y}) == m.at({x, y}));
            }
    }
}

TEST_CASE("candidate of solid blocks") {
    const CurveCandidate c3 = extract_candidate(zero_pad(fixtures::solid_block(3)));
    CHECK(c3.p_preliminary.size() == 8);
    CHECK(c3.eroded_interior.size() == 1);
    CHECK(c3.eroded_interior.contains({3, 3}));
    CHECK(c3.s == c3.p_preliminary);

    const CurveCandidate c4 = extract_candidate(zero_pad(fixtures::solid_block(4)));
    CHECK(c4.s.size() == 12);
    for (const auto& [p, d] : degree_profile(c4.s, Adjacency::Four)) CHECK(d == 2);

    const CurveCandidate c2 = extract_candidate(zero_pad(fixtures::solid_block(2)));
    CHECK(c2.eroded_interior.empty());
    CHECK(c2.s.empty());

    CHECK(extract_candidate(BinaryImage(4, 4)).s.empty());
}

TEST_CASE("candidate matches the set-level description") {
    gen::Rng rng(47);
    for (int i = 0; i < 500; ++i) {
        const BinaryImage m = zero_pad(gen::random_mask(rng, 32), 1);
        const CurveCandidate c = extract_candidate(m);
        CHECK(bits(c.s) == oracle::curve_candidate(m));
        CHECK(c.s.is_subset_of(c.p_preliminary));
        CHECK(c.p_preliminary.is_subset_of(PixelSet(m)));
        CHECK(c.p_preliminary.size() + c.eroded_interior.size() == foreground_count(m));
    }
}

TEST_CASE("canonical verdicts") {
    const JordanVerdict v3 = evaluate(fixtures::solid_block(3));
    CHECK(v3.category == JordanCategory::SingleJordan);
    CHECK(v3.evidence.betti_s == BettiProfile{1, 1});
    CHECK(v3.evidence.complement_b0 == 2);
    CHECK(v3.evidence.curve_points == 8);
    CHECK(v3.evidence.min_points_ok);
    CHECK(v3.evidence.degree_violations.empty());

    const JordanVerdict v4 = evaluate(fixtures::solid_block(4));
    CHECK(v4.category == JordanCategory::SingleJordan);
    CHECK(v4.evidence.curve_points == 12);

    CHECK(evaluate(fixtures::solid_block(2)).category == JordanCategory::EmptyCandidate);
    CHECK(evaluate(BinaryImage(5, 5)).category == JordanCategory::EmptyCandidate);

    const JordanVerdict two = evaluate(fixtures::two_blocks(4, 6));
    CHECK(two.category == JordanCategory::MultiObject);
    CHECK(two.evidence.betti_s == BettiProfile{2, 2});
    CHECK(two.evidence.complement_b0 == 3);
    CHECK(two.evidence.component_sizes == std::vector<std::size_t>{12, 12});
}

TEST_CASE("holed blocks") {
    // In a 6x6 block with a 2x2 hole every mask pixel touches background, so
    // the eroded interior and the candidate are empty.
    const BinaryImage thin = fixtures::holed_block(6, 2);
    CHECK(bits(extract_candidate(zero_pad(thin)).s) == oracle::curve_candidate(zero_pad(thin)));
    CHECK(evaluate(thin).category == JordanCategory::EmptyCandidate);

    // One more ring of material leaves room for an inner and an outer curve.
    const JordanVerdict v = evaluate(fixtures::holed_block(8, 2));
    CHECK(v.category == JordanCategory::WithHoles);
    CHECK(v.evidence.betti_s == BettiProfile{2, 2});
    CHECK(v.evidence.complement_b0 == 3);
    CHECK(v.evidence.component_sizes == std::vector<std::size_t>{28, 12});
    REQUIRE(v.nesting.size() == 2);
    CHECK(v.nesting[0] == NestingEntry{0, std::nullopt});
    CHECK(v.nesting[1] == NestingEntry{1, 0});
}

TEST_CASE("nesting of side-by-side and concentric objects") {
    const JordanVerdict single = evaluate(fixtures::solid_block(3));
    REQUIRE(single.nesting.size() == 1);
    CHECK_FALSE(single.nesting[0].container.has_value());

    const JordanVerdict two = evaluate(fixtures::two_blocks(5, 3));
    REQUIRE(two.nesting.size() == 2);
    CHECK_FALSE(two.nesting[0].container.has_value());
    CHECK_FALSE(two.nesting[1].container.has_value());

    // A block floating inside the hole of a ring is nested in the ring's inner curve.
    BinaryImage island = fixtures::holed_block(21, 11);
    fixtures::fill_square(island, 10, 10, 3);
    const JordanVerdict v = evaluate(island);
    CHECK(v.category == JordanCategory::WithHoles);
    CHECK(v.evidence.betti_s == BettiProfile{3, 3});
    CHECK(v.evidence.complement_b0 == 4);
    REQUIRE(v.nesting.size() == 3);
    CHECK_FALSE(v.nesting[0].container.has_value());
    CHECK(v.nesting[1].container == std::optional<int>(0));
    CHECK(v.nesting[2].container == std::optional<int>(1));

    const ComponentLabeling a = connected_components(PixelSet(Size{3, 3}), Adjacency::Four);
    const ComponentLabeling b = connected_components(PixelSet(Size{4, 3}), Adjacency::Eight);
    CHECK_THROWS_AS(classify_nesting(a, b), std::logic_error);
}

TEST_CASE("fragmented and non-Jordan masks") {
    const JordanVerdict bridge = evaluate(fixtures::corpus_fragmented_object());
    CHECK(bridge.category == JordanCategory::FragmentedObject);
    CHECK(bridge.evidence.betti_s == BettiProfile{2, 2});
    CHECK(bridge.evidence.complement_b0 == 3);

    const JordanVerdict eight = evaluate(fixtures::corpus_not_jordan());
    CHECK(eight.category == JordanCategory::NotJordan);
    CHECK_FALSE(eight.evidence.degree_violations.empty());

    CHECK(evaluate(fixtures::corpus_single_jordan()).category == JordanCategory::SingleJordan);
    CHECK(evaluate(fixtures::corpus_multi_object()).category == JordanCategory::MultiObject);
    CHECK(evaluate(fixtures::corpus_with_holes()).category == JordanCategory::WithHoles);
}

TEST_CASE("category names") {
    for (JordanCategory c : {JordanCategory::SingleJordan, JordanCategory::MultiObject,
                             JordanCategory::FragmentedObject, JordanCategory::WithHoles,
                             JordanCategory::NotJordan, JordanCategory::EmptyCandidate}) {
        CHECK(parse_category(to_string(c)) == c);
    }
    CHECK_FALSE(parse_category("jordan").has_value());
}

TEST_CASE("theorem check on small shapes") {
    const TheoremReport ring = theorem_check(fixtures::square_ring(5, 5, 2, 2, 3));
    CHECK(ring.is_four_curve);
    CHECK(ring.separates_plane);
    CHECK(ring.complement_components == 2);

    const TheoremReport diamond = theorem_check(fixtures::diamond());
    CHECK_FALSE(diamond.is_four_curve);
    CHECK_FALSE(diamond.separates_plane);
    CHECK(diamond.complement_components == 1);

    CHECK_FALSE(theorem_check(PixelSet(BinaryImage(2, 2, 1))).is_four_curve);
}

TEST_CASE("padding does not change the verdict") {
    gen::Rng rng(53);
    for (int i = 0; i < 300; ++i) {
        const BinaryImage m = gen::random_mask(rng, 24);
        const JordanVerdict a = evaluate(m, {.pad = 1});
        const JordanVerdict b = evaluate(m, {.pad = 3});
        CHECK(a.category == b.category);
        CHECK(a.evidence.betti_s == b.evidence.betti_s);
        CHECK(a.evidence.complement_b0 == b.evidence.complement_b0);
        CHECK(a.evidence.curve_points == b.evidence.curve_points);
    }
}

TEST_CASE("self-check agrees with the fast path") {
    gen::Rng rng(59);
    for (int i = 0; i < 200; ++i) {
        const BinaryImage m = gen::random_mask(rng, 24);
        const JordanVerdict fast = evaluate(m);
        const JordanVerdict checked = evaluate(m, {.self_check = true});
        CHECK(fast.category == checked.category);
        CHECK(fast.evidence.betti_s == checked.evidence.betti_s);
    }
}

TEST_CASE("verdict evidence matches brute force") {
    gen::Rng rng(61);
    for (int i = 0; i < 300; ++i) {
        const BinaryImage m = gen::random_mask(rng, 24);
        const JordanVerdict v = raw_verdict(m);
        const std::vector<std::uint8_t> s = oracle::curve_candidate(zero_pad(m));
        const int w = v.padded.width();
        const int h = v.padded.height();
        CHECK(bits(v.candidate.s) == s);
        if (v.category == JordanCategory::EmptyCandidate) continue;
        CHECK(v.evidence.betti_s.b0 == static_cast<std::size_t>(oracle::component_count(s, w, h, 4)));
        CHECK(v.evidence.complement_b0 == oracle::component_count(oracle::invert(s), w, h, 8));

        const bool strict = v.evidence.betti_s == BettiProfile{1, 1} && v.evidence.min_points_ok &&
                            v.evidence.degree_violations.empty();
        CHECK(strict == (v.category == JordanCategory::SingleJordan));
        CHECK(strict == oracle::is_four_curve(s, w, h));
        CHECK(strict == oracle::separates_two_sided(s, w, h));
    }
}

TEST_CASE("forward and converse directions on grown blobs") {
    gen::Rng rng(67);
    int curves = 0;
    for (int i = 0; i < 300; ++i) {
        const int w = gen::uniform(rng, 4, 24);
        const int h = gen::uniform(rng, 4, 24);
        const BinaryImage m = zero_pad(gen::filled_blob(rng, w, h, gen::uniform(rng, 3, 6 * (w + h))));
        const PixelSet s = extract_candidate(m).s;
        const TheoremReport r = theorem_check(s);
        const auto sb = bits(s);
        CHECK(r.is_four_curve == oracle::is_four_curve(sb, m.width(), m.height()));
        CHECK(r.separates_plane == oracle::separates_two_sided(sb, m.width(), m.height()));
        CHECK(r.is_four_curve == r.separates_plane);
        if (r.is_four_curve) ++curves;
    }
    CHECK(curves > 50);
}
