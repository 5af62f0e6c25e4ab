#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jordanmask/errors.hpp"

namespace jordanmask {

/// Pixel position. External coordinates are 1-based: x is the column in
/// [1, width], y is the row in [1, height], origin top-left.
struct PixelCoord {
    int x = 1;
    int y = 1;

    friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
    /// Row-major order: by row, then by column.
    friend std::strong_ordering operator<=>(const PixelCoord& a, const PixelCoord& b) {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
};

std::string to_string(PixelCoord p);

struct Size {
    int width = 0;
    int height = 0;

    friend bool operator==(const Size&, const Size&) = default;
    [[nodiscard]] std::size_t area() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    [[nodiscard]] bool contains(PixelCoord p) const {
        return p.x >= 1 && p.x <= width && p.y >= 1 && p.y <= height;
    }
    /// Row-major storage offset of a 1-based coordinate.
    [[nodiscard]] std::size_t index(PixelCoord p) const {
        return static_cast<std::size_t>(p.y - 1) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(p.x - 1);
    }
    [[nodiscard]] PixelCoord coord(std::size_t index) const {
        return {static_cast<int>(index % static_cast<std::size_t>(width)) + 1,
                static_cast<int>(index / static_cast<std::size_t>(width)) + 1};
    }
};

std::string to_string(Size s);

namespace detail {

struct GrayTraits {
    static constexpr std::uint8_t max_value = 255;
    static constexpr const char* name = "GrayImage";
};

struct BinaryTraits {
    static constexpr std::uint8_t max_value = 1;
    static constexpr const char* name = "BinaryImage";
};

void check_raster(Size size, std::span<const std::uint8_t> data, std::uint8_t max_value,
                  const char* name);

}  // namespace detail

/// Row-major 8-bit raster whose values are bounded by Traits::max_value.
template <typename Traits>
class Raster {
public:
    Raster() = default;

    Raster(int width, int height, std::uint8_t fill = 0)
        : size_{width, height}, data_(checked_area(width, height), fill) {
        detail::check_raster(size_, data_, Traits::max_value, Traits::name);
    }

    Raster(int width, int height, std::vector<std::uint8_t> data)
        : size_{width, height}, data_(std::move(data)) {
        checked_area(width, height);
        detail::check_raster(size_, data_, Traits::max_value, Traits::name);
    }

    [[nodiscard]] int width() const { return size_.width; }
    [[nodiscard]] int height() const { return size_.height; }
    [[nodiscard]] Size size() const { return size_; }
    [[nodiscard]] bool empty() const { return data_.empty(); }
    [[nodiscard]] std::span<const std::uint8_t> pixels() const { return data_; }

    [[nodiscard]] std::uint8_t at(PixelCoord p) const { return data_[checked_index(p)]; }

    void set(PixelCoord p, std::uint8_t value) {
        if (value > Traits::max_value) {
            throw std::invalid_argument(std::string(Traits::name) + ": value out of range");
        }
        data_[checked_index(p)] = value;
    }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    static std::size_t checked_area(int width, int height) {
        if (width < 1 || height < 1) {
            throw std::invalid_argument(std::string(Traits::name) +
                                        ": dimensions must be positive, got " +
                                        std::to_string(width) + "x" + std::to_string(height));
        }
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    std::size_t checked_index(PixelCoord p) const {
        if (!size_.contains(p)) {
            throw DomainError(to_string(p) + " outside " + to_string(size_) + " domain");
        }
        return size_.index(p);
    }

    Size size_{};
    std::vector<std::uint8_t> data_;
};

/// Intensities in [0, 255].
using GrayImage = Raster<detail::GrayTraits>;
/// 1 = foreground, 0 = background.
using BinaryImage = Raster<detail::BinaryTraits>;

/// Decoded image prior to intensity conversion: 1 (gray) or 3 (RGB) interleaved channels.
struct RawImage {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> data;
};

/// Rec.-601 luma, rounded half up. 1-channel input passes through.
GrayImage to_grayscale(const RawImage& img);

/// Nearest-neighbour resampling. Output pixel (i, j) samples input column
/// floor((i - 0.5) * w / new_w) + 1 and the analogous row.
GrayImage resize_nearest(const GrayImage& img, int new_width, int new_height);
BinaryImage resize_nearest(const BinaryImage& img, int new_width, int new_height);

/// Surrounds the image with a ring of zeros `margin` pixels wide.
BinaryImage zero_pad(const BinaryImage& img, int margin = 1);
GrayImage zero_pad(const GrayImage& img, int margin = 1);

enum class Polarity { ForegroundAbove, ForegroundBelow };

/// ForegroundAbove: intensity > threshold. ForegroundBelow: intensity <= threshold.
BinaryImage binarize(const GrayImage& img, double threshold, Polarity polarity);

/// Count of foreground pixels.
std::size_t foreground_count(const BinaryImage& img);

/// Parses "WxH" (e.g. "64x64").
Size parse_size(const std::string& text);

}  // namespace jordanmask
