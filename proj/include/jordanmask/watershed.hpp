#pragma once

#include <cstdint>
#include <vector>

#include "jordanmask/grid.hpp"
#include "jordanmask/segment.hpp"

namespace jordanmask {

/// Squared Sobel gradient magnitude, replicated border. Squares are exact
/// integers, so they order pixels identically to the magnitude.
std::vector<std::uint32_t> sobel_magnitude_sq(const GrayImage& img);

/// Labels the regional minima (8-connected plateaus without a lower
/// 8-neighbour) of a surface, 1..count in row-major first-encounter order;
/// other pixels are 0.
std::vector<int> regional_minima(Size size, const std::vector<std::uint32_t>& surface, int& count);

struct WatershedResult {
    Size size{};
    /// 0 marks a watershed-line pixel, 1..basin_count a basin.
    std::vector<int> labels;
    int basin_count = 0;
    std::vector<std::uint32_t> gradient_sq;
};

/// Meyer flooding from the regional minima of the gradient, ordered by
/// (gradient, insertion sequence). A pixel reached by two basins becomes line.
WatershedResult watershed_flood(const GrayImage& img);

/// Floods, then labels a basin foreground when its mean intensity lies on the
/// foreground side of the image's Otsu threshold. A line pixel is foreground
/// when more than half of its in-domain 8-neighbours are foreground basin
/// pixels. Throws DegenerateInput for images smaller than 3x3.
Segmentation watershed_segment(const GrayImage& img, const SegmenterConfig& cfg);
BinaryImage watershed_binary(const GrayImage& img, const SegmenterConfig& cfg);

}  // namespace jordanmask
