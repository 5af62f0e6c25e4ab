#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "jordanmask/grid.hpp"

namespace jordanmask {

enum class ImageFormat { Pgm, Png, Jpeg };

/// Identifies the container from its leading bytes.
ImageFormat sniff_format(std::span<const std::uint8_t> bytes);

/// Binary PGM (P5). maxval must be in [1, 255]; sample values are kept as stored.
RawImage decode_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

/// 8-bit PNG. Gray and gray+alpha decode to one channel, everything else to RGB.
RawImage decode_png(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_png(const RawImage& img);

/// Baseline/progressive JPEG (read only; used for photo corpora).
RawImage decode_jpeg(std::span<const std::uint8_t> bytes);

RawImage decode_image(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Decodes any supported file and converts colour input to luma.
GrayImage read_gray(const std::filesystem::path& path);

/// Decodes a mask; any nonzero sample is foreground.
BinaryImage read_mask(const std::filesystem::path& path);

/// Format chosen by extension (.pgm or .png). Binary images are stored as {0, 255}.
void write_image(const GrayImage& img, const std::filesystem::path& path);
void write_image(const BinaryImage& img, const std::filesystem::path& path);

/// Writes a 1- or 3-channel raw image as PNG.
void write_png(const RawImage& img, const std::filesystem::path& path);

/// Luma image of the binary mask, 0 -> 0 and 1 -> 255.
GrayImage mask_to_gray(const BinaryImage& img);

}  // namespace jordanmask
