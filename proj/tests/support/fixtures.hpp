#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "jordanmask/grid.hpp"
#include "jordanmask/image_io.hpp"
#include "jordanmask/topology.hpp"

namespace fixtures {

using jordanmask::BinaryImage;
using jordanmask::GrayImage;
using jordanmask::PixelCoord;

/// Mask from ASCII rows; '#' is foreground.
inline BinaryImage from_rows(const std::vector<std::string>& rows) {
    const int h = static_cast<int>(rows.size());
    const int w = static_cast<int>(rows.front().size());
    BinaryImage img(w, h);
    for (int y = 1; y <= h; ++y)
        for (int x = 1; x <= w; ++x)
            if (rows[static_cast<std::size_t>(y - 1)][static_cast<std::size_t>(x - 1)] == '#') img.set({x, y}, 1);
    return img;
}

/// Fills the square [x0, x0 + side) x [y0, y0 + side) with value.
inline void fill_square(BinaryImage& img, int x0, int y0, int side, std::uint8_t value = 1) {
    for (int y = y0; y < y0 + side; ++y)
        for (int x = x0; x < x0 + side; ++x) img.set({x, y}, value);
}

inline BinaryImage solid_block(int side) { return BinaryImage(side, side, 1); }

/// side x side block with a centred hole x hole hole.
inline BinaryImage holed_block(int side, int hole) {
    BinaryImage img = solid_block(side);
    fill_square(img, (side - hole) / 2 + 1, (side - hole) / 2 + 1, hole, 0);
    return img;
}

/// Two side x side blocks separated by `gap` background columns.
inline BinaryImage two_blocks(int side, int gap) {
    BinaryImage img(2 * side + gap, side);
    fill_square(img, 1, 1, side);
    fill_square(img, side + gap + 1, 1, side);
    return img;
}

/// The 4-point diamond {(2,1), (1,2), (3,2), (2,3)} in a 3x3 domain.
inline jordanmask::PixelSet diamond() {
    const std::vector<PixelCoord> pts{{2, 1}, {1, 2}, {3, 2}, {2, 3}};
    return jordanmask::PixelSet({3, 3}, pts);
}

/// Border of a side x side square placed at (x0, y0) inside a w x h domain.
inline jordanmask::PixelSet square_ring(int w, int h, int x0, int y0, int side) {
    jordanmask::PixelSet s(jordanmask::Size{w, h});
    for (int y = y0; y < y0 + side; ++y)
        for (int x = x0; x < x0 + side; ++x)
            if (x == x0 || y == y0 || x == x0 + side - 1 || y == y0 + side - 1) s.insert({x, y});
    return s;
}

// 64 x 64 behaviour fixtures for the bundled corpus ---------------------------

inline constexpr int kCorpusSide = 64;

inline BinaryImage corpus_single_jordan() {
    BinaryImage m(kCorpusSide, kCorpusSide);
    fill_square(m, 20, 22, 20);
    return m;
}

inline BinaryImage corpus_multi_object() {
    BinaryImage m(kCorpusSide, kCorpusSide);
    fill_square(m, 8, 10, 14);
    fill_square(m, 36, 30, 16);
    return m;
}

/// Two blocks joined by a one-pixel bridge: one 8-connected mask whose curve
/// candidate splits into two curves.
inline BinaryImage corpus_fragmented_object() {
    BinaryImage m(kCorpusSide, kCorpusSide);
    fill_square(m, 8, 20, 16);
    fill_square(m, 40, 20, 16);
    for (int x = 24; x < 40; ++x) m.set({x, 28}, 1);
    return m;
}

inline BinaryImage corpus_with_holes() {
    BinaryImage m(kCorpusSide, kCorpusSide);
    fill_square(m, 12, 12, 36);
    fill_square(m, 24, 24, 10, 0);
    return m;
}

/// Two blocks sharing a single corner pixel: a figure eight whose shared
/// pixel has four curve neighbours.
inline BinaryImage corpus_not_jordan() {
    BinaryImage m(kCorpusSide, kCorpusSide);
    fill_square(m, 10, 10, 16);
    fill_square(m, 25, 25, 16);
    return m;
}

/// Photo stand-in for a mask: bright object on a dark background.
inline GrayImage render_photo(const BinaryImage& mask) {
    std::vector<std::uint8_t> px;
    for (std::uint8_t b : mask.pixels()) px.push_back(b ? 210 : 40);
    return GrayImage(mask.width(), mask.height(), std::move(px));
}

struct CorpusFixture {
    const char* class_name;
    BinaryImage mask;
};

inline std::vector<CorpusFixture> behaviour_corpus() {
    return {
        {"fragmented_object", corpus_fragmented_object()},
        {"multi_object", corpus_multi_object()},
        {"not_jordan", corpus_not_jordan()},
        {"single_jordan", corpus_single_jordan()},
        {"with_holes", corpus_with_holes()},
    };
}

/// Writes <root>/<class>/1.pgm (image) and 1.png (mask) for every fixture.
inline void write_behaviour_corpus(const std::filesystem::path& root) {
    for (const auto& f : behaviour_corpus()) {
        const auto dir = root / f.class_name;
        std::filesystem::create_directories(dir);
        jordanmask::write_image(render_photo(f.mask), dir / "1.pgm");
        jordanmask::write_image(f.mask, dir / "1.png");
    }
}

}  // namespace fixtures
