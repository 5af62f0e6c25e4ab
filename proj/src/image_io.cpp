#include "jordanmask/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>

#include <jpeglib.h>
#include <png.h>

namespace jordanmask {

namespace fs = std::filesystem;

ImageFormat sniff_format(std::span<const std::uint8_t> bytes) {
    static constexpr std::uint8_t png_magic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    if (bytes.size() >= 8 && std::equal(std::begin(png_magic), std::end(png_magic), bytes.begin())) {
        return ImageFormat::Png;
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
        return ImageFormat::Pgm;
    }
    if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) {
        return ImageFormat::Jpeg;
    }
    throw UnsupportedFormat("unrecognised image signature (expected PGM P5, PNG or JPEG)");
}

// PGM ---------------------------------------------------------------------

namespace {

class PgmHeaderReader {
public:
    explicit PgmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    [[nodiscard]] std::size_t offset() const { return pos_; }

    void expect_magic() {
        if (bytes_.size() < 2 || bytes_[0] != 'P' || bytes_[1] != '5') {
            fail("missing P5 magic");
        }
        pos_ = 2;
    }

    int read_number(const char* what) {
        skip_whitespace_and_comments();
        if (pos_ >= bytes_.size()) fail(std::string("truncated header before ") + what);
        if (!is_digit(bytes_[pos_])) fail(std::string("expected ") + what);
        long value = 0;
        while (pos_ < bytes_.size() && is_digit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000) fail(std::string(what) + " too large");
            ++pos_;
        }
        return static_cast<int>(value);
    }

    void expect_single_whitespace() {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
            fail("expected whitespace after maxval");
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw DecodeError("PGM decode error at offset " + std::to_string(pos_) + ": " + msg);
    }

private:
    static bool is_digit(std::uint8_t c) { return c >= '0' && c <= '9'; }
    static bool is_space(std::uint8_t c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    }

    void skip_whitespace_and_comments() {
        while (pos_ < bytes_.size()) {
            if (is_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

RawImage decode_pgm(std::span<const std::uint8_t> bytes) {
    PgmHeaderReader reader(bytes);
    reader.expect_magic();
    const int width = reader.read_number("width");
    const int height = reader.read_number("height");
    const std::size_t maxval_offset = reader.offset();
    const int maxval = reader.read_number("maxval");
    if (width < 1 || height < 1) reader.fail("dimensions must be positive");
    if (maxval < 1 || maxval > 255) {
        throw UnsupportedFormat("PGM maxval " + std::to_string(maxval) + " at offset " +
                                std::to_string(maxval_offset) + " is not 8-bit");
    }
    reader.expect_single_whitespace();

    const std::size_t start = reader.offset();
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() - start < n) {
        throw DecodeError("PGM decode error at offset " + std::to_string(bytes.size()) +
                          ": truncated payload, expected " + std::to_string(n) +
                          " bytes from offset " + std::to_string(start));
    }
    RawImage img{width, height, 1, {}};
    img.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                    bytes.begin() + static_cast<std::ptrdiff_t>(start + n));
    return img;
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
    const std::string header =
        "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels().begin(), img.pixels().end());
    return out;
}

// PNG ---------------------------------------------------------------------

RawImage decode_png(std::span<const std::uint8_t> bytes) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()) == 0) {
        throw DecodeError(std::string("PNG decode error: ") + image.message);
    }
    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

    RawImage out{static_cast<int>(image.width), static_cast<int>(image.height), color ? 3 : 1, {}};
    out.data.resize(PNG_IMAGE_SIZE(image));
    if (png_image_finish_read(&image, nullptr, out.data.data(), 0, nullptr) == 0) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw DecodeError("PNG decode error: " + msg);
    }
    return out;
}

std::vector<std::uint8_t> encode_png(const RawImage& img) {
    if (img.channels != 1 && img.channels != 3) {
        throw UnsupportedFormat("PNG encode: unsupported channel count " +
                                std::to_string(img.channels));
    }
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width);
    image.height = static_cast<png_uint_32>(img.height);
    image.format = img.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

    png_alloc_size_t size = 0;
    if (png_image_write_to_memory(&image, nullptr, &size, 0, img.data.data(), 0, nullptr) == 0) {
        throw Error(std::string("PNG encode error: ") + image.message);
    }
    std::vector<std::uint8_t> out(size);
    if (png_image_write_to_memory(&image, out.data(), &size, 0, img.data.data(), 0, nullptr) == 0) {
        throw Error(std::string("PNG encode error: ") + image.message);
    }
    out.resize(size);
    return out;
}

// JPEG --------------------------------------------------------------------

namespace {

struct JpegErrorManager {
    jpeg_error_mgr pub;
    std::jmp_buf escape;
    char message[JMSG_LENGTH_MAX];
};

extern "C" void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->escape, 1);
}

}  // namespace

RawImage decode_jpeg(std::span<const std::uint8_t> bytes) {
    RawImage out;
    jpeg_decompress_struct cinfo;
    JpegErrorManager err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    err.message[0] = '\0';

    if (setjmp(err.escape)) {
        jpeg_destroy_decompress(&cinfo);
        throw DecodeError(std::string("JPEG decode error: ") + err.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = cinfo.jpeg_color_space == JCS_GRAYSCALE ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);

    out.width = static_cast<int>(cinfo.output_width);
    out.height = static_cast<int>(cinfo.output_height);
    out.channels = cinfo.output_components;
    const std::size_t stride = static_cast<std::size_t>(out.width) * static_cast<std::size_t>(out.channels);
    out.data.resize(stride * static_cast<std::size_t>(out.height));
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = out.data.data() + stride * cinfo.output_scanline;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return out;
}

// Files -------------------------------------------------------------------

RawImage decode_image(std::span<const std::uint8_t> bytes) {
    switch (sniff_format(bytes)) {
        case ImageFormat::Pgm: return decode_pgm(bytes);
        case ImageFormat::Png: return decode_png(bytes);
        case ImageFormat::Jpeg: return decode_jpeg(bytes);
    }
    throw UnsupportedFormat("unknown image format");
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("cannot read " + path.string());
    return bytes;
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("cannot write " + path.string());
}

namespace {

template <typename F>
auto with_path_context(const fs::path& path, F&& f) {
    try {
        return f();
    } catch (const DecodeError& e) {
        throw DecodeError(path.string() + ": " + e.what());
    } catch (const UnsupportedFormat& e) {
        throw UnsupportedFormat(path.string() + ": " + e.what());
    }
}

enum class Container { Pgm, Png };

Container container_for(const fs::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".pgm") return Container::Pgm;
    if (ext == ".png") return Container::Png;
    throw UnsupportedFormat("cannot infer output format from '" + path.string() +
                            "' (use .pgm or .png)");
}

}  // namespace

GrayImage read_gray(const fs::path& path) {
    const auto bytes = read_file(path);
    return with_path_context(path, [&] { return to_grayscale(decode_image(bytes)); });
}

BinaryImage read_mask(const fs::path& path) {
    const auto bytes = read_file(path);
    return with_path_context(path, [&] {
        const GrayImage gray = to_grayscale(decode_image(bytes));
        std::vector<std::uint8_t> bits;
        bits.reserve(gray.size().area());
        for (std::uint8_t v : gray.pixels()) bits.push_back(v != 0 ? 1 : 0);
        return BinaryImage(gray.width(), gray.height(), std::move(bits));
    });
}

GrayImage mask_to_gray(const BinaryImage& img) {
    std::vector<std::uint8_t> out;
    out.reserve(img.size().area());
    for (std::uint8_t v : img.pixels()) out.push_back(v != 0 ? 255 : 0);
    return GrayImage(img.width(), img.height(), std::move(out));
}

void write_image(const GrayImage& img, const fs::path& path) {
    switch (container_for(path)) {
        case Container::Pgm: write_file(path, encode_pgm(img)); break;
        case Container::Png: {
            RawImage raw{img.width(), img.height(), 1,
                         {img.pixels().begin(), img.pixels().end()}};
            write_file(path, encode_png(raw));
            break;
        }
    }
}

void write_image(const BinaryImage& img, const fs::path& path) {
    write_image(mask_to_gray(img), path);
}

void write_png(const RawImage& img, const fs::path& path) { write_file(path, encode_png(img)); }

}  // namespace jordanmask
