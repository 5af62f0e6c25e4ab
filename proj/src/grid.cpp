#include "jordanmask/grid.hpp"

#include <algorithm>
#include <charconv>

namespace jordanmask {

std::string to_string(PixelCoord p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

std::string to_string(Size s) {
    return std::to_string(s.width) + "x" + std::to_string(s.height);
}

namespace detail {

void check_raster(Size size, std::span<const std::uint8_t> data, std::uint8_t max_value,
                  const char* name) {
    if (data.size() != size.area()) {
        throw std::invalid_argument(std::string(name) + ": expected " +
                                    std::to_string(size.area()) + " pixels, got " +
                                    std::to_string(data.size()));
    }
    if (max_value < 255) {
        auto bad = std::find_if(data.begin(), data.end(),
                                [max_value](std::uint8_t v) { return v > max_value; });
        if (bad != data.end()) {
            throw std::invalid_argument(std::string(name) + ": value " + std::to_string(*bad) +
                                        " exceeds " + std::to_string(max_value));
        }
    }
}

}  // namespace detail

GrayImage to_grayscale(const RawImage& img) {
    const std::size_t n = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
    if (img.channels == 1) {
        return GrayImage(img.width, img.height, img.data);
    }
    if (img.channels != 3) {
        throw UnsupportedFormat("to_grayscale: unsupported channel count " +
                                std::to_string(img.channels));
    }
    if (img.data.size() != 3 * n) {
        throw std::invalid_argument("to_grayscale: pixel buffer does not match dimensions");
    }
    std::vector<std::uint8_t> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned r = img.data[3 * i];
        const unsigned g = img.data[3 * i + 1];
        const unsigned b = img.data[3 * i + 2];
        // 0.299 R + 0.587 G + 0.114 B in thousandths, rounded half up.
        const unsigned luma = (299 * r + 587 * g + 114 * b + 500) / 1000;
        out[i] = static_cast<std::uint8_t>(std::min(luma, 255U));
    }
    return GrayImage(img.width, img.height, std::move(out));
}

namespace {

// floor((i - 0.5) * src / dst) + 1 for 1-based i, clamped to [1, src].
int nearest_source(int i, int src, int dst) {
    const long long num = (2LL * i - 1) * src;
    const long long v = num / (2LL * dst) + 1;
    return static_cast<int>(std::clamp<long long>(v, 1, src));
}

template <typename Image>
Image resize_impl(const Image& img, int new_width, int new_height) {
    if (new_width < 1 || new_height < 1) {
        throw std::invalid_argument("resize_nearest: target size must be positive");
    }
    if (new_width == img.width() && new_height == img.height()) {
        return img;
    }
    std::vector<int> cols(static_cast<std::size_t>(new_width));
    for (int i = 1; i <= new_width; ++i) cols[i - 1] = nearest_source(i, img.width(), new_width);

    const auto src = img.pixels();
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(new_width) * static_cast<std::size_t>(new_height));
    for (int j = 1; j <= new_height; ++j) {
        const std::size_t row =
            static_cast<std::size_t>(nearest_source(j, img.height(), new_height) - 1) *
            static_cast<std::size_t>(img.width());
        for (int c : cols) out.push_back(src[row + static_cast<std::size_t>(c - 1)]);
    }
    return Image(new_width, new_height, std::move(out));
}

template <typename Image>
Image pad_impl(const Image& img, int margin) {
    if (margin < 1) {
        throw std::invalid_argument("zero_pad: margin must be at least 1");
    }
    const int w = img.width() + 2 * margin;
    const int h = img.height() + 2 * margin;
    std::vector<std::uint8_t> out(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
    const auto src = img.pixels();
    for (int y = 0; y < img.height(); ++y) {
        std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(y) * img.width(), img.width(),
                    out.begin() + static_cast<std::ptrdiff_t>(y + margin) * w + margin);
    }
    return Image(w, h, std::move(out));
}

}  // namespace

GrayImage resize_nearest(const GrayImage& img, int new_width, int new_height) {
    return resize_impl(img, new_width, new_height);
}

BinaryImage resize_nearest(const BinaryImage& img, int new_width, int new_height) {
    return resize_impl(img, new_width, new_height);
}

BinaryImage zero_pad(const BinaryImage& img, int margin) { return pad_impl(img, margin); }

GrayImage zero_pad(const GrayImage& img, int margin) { return pad_impl(img, margin); }

BinaryImage binarize(const GrayImage& img, double threshold, Polarity polarity) {
    std::vector<std::uint8_t> out;
    out.reserve(img.size().area());
    for (std::uint8_t v : img.pixels()) {
        const bool above = static_cast<double>(v) > threshold;
        out.push_back((polarity == Polarity::ForegroundAbove) == above ? 1 : 0);
    }
    return BinaryImage(img.width(), img.height(), std::move(out));
}

std::size_t foreground_count(const BinaryImage& img) {
    return static_cast<std::size_t>(std::count(img.pixels().begin(), img.pixels().end(), 1));
}

Size parse_size(const std::string& text) {
    const auto sep = text.find_first_of("xX");
    Size s;
    auto parse = [&text](std::string_view part, int& out) {
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        return ec == std::errc{} && ptr == part.data() + part.size() && out > 0;
    };
    const std::string_view view(text);
    if (sep == std::string::npos || !parse(view.substr(0, sep), s.width) ||
        !parse(view.substr(sep + 1), s.height)) {
        throw std::invalid_argument("expected WxH with positive integers, got '" + text + "'");
    }
    return s;
}

}  // namespace jordanmask
