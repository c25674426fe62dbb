#include "defog/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>

namespace defog {

namespace {

constexpr double kInv255 = 1.0 / 255.0;

std::uint8_t to_byte(double s) {
    const double v = std::lround(clamp01(s) * 255.0);
    return static_cast<std::uint8_t>(v);
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// ---- PPM (P6, maxval 255) ----

int ppm_next_token(std::FILE* f, char* buf, int cap) {
    int c;
    // skip whitespace and '#' comments
    for (;;) {
        c = std::fgetc(f);
        if (c == EOF) return 0;
        if (c == '#') {
            while (c != EOF && c != '\n') c = std::fgetc(f);
            continue;
        }
        if (!std::isspace(c)) break;
    }
    int len = 0;
    while (c != EOF && !std::isspace(c)) {
        if (len + 1 < cap) buf[len++] = static_cast<char>(c);
        c = std::fgetc(f);
    }
    buf[len] = '\0';
    return len;
}

Image load_ppm(std::FILE* f, const std::string& path) {
    char tok[32];
    if (!ppm_next_token(f, tok, sizeof tok) || std::strcmp(tok, "P6") != 0)
        throw IoError(path + ": not a P6 PPM");
    long w = 0, h = 0, maxval = 0;
    if (!ppm_next_token(f, tok, sizeof tok)) throw IoError(path + ": truncated PPM header");
    w = std::strtol(tok, nullptr, 10);
    if (!ppm_next_token(f, tok, sizeof tok)) throw IoError(path + ": truncated PPM header");
    h = std::strtol(tok, nullptr, 10);
    if (!ppm_next_token(f, tok, sizeof tok)) throw IoError(path + ": truncated PPM header");
    maxval = std::strtol(tok, nullptr, 10);
    if (w < 1 || h < 1) throw IoError(path + ": zero-dimension image");
    if (w > 1000000 || h > 1000000) throw IoError(path + ": implausible PPM dimensions");
    if (maxval != 255) throw IoError(path + ": unsupported PPM maxval (want 255)");

    Image img(static_cast<int>(w), static_cast<int>(h));
    std::vector<std::uint8_t> row(static_cast<std::size_t>(w) * 3);
    std::size_t p = 0;
    for (long y = 0; y < h; ++y) {
        if (std::fread(row.data(), 1, row.size(), f) != row.size())
            throw IoError(path + ": truncated PPM pixel data");
        for (long x = 0; x < w; ++x, ++p) {
            img.r[p] = row[3 * x + 0] * kInv255;
            img.g[p] = row[3 * x + 1] * kInv255;
            img.b[p] = row[3 * x + 2] * kInv255;
        }
    }
    return img;
}

void save_ppm(const Image& img, const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError(path + ": cannot open for writing");
    std::fprintf(f.get(), "P6\n%d %d\n255\n", img.width, img.height);
    std::vector<std::uint8_t> row(static_cast<std::size_t>(img.width) * 3);
    std::size_t p = 0;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x, ++p) {
            row[3 * x + 0] = to_byte(img.r[p]);
            row[3 * x + 1] = to_byte(img.g[p]);
            row[3 * x + 2] = to_byte(img.b[p]);
        }
        if (std::fwrite(row.data(), 1, row.size(), f.get()) != row.size())
            throw IoError(path + ": short write");
    }
}

// ---- PNG via libpng ----

Image load_png(std::FILE* f, const std::string& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                             nullptr, nullptr);
    if (!png) throw IoError(path + ": libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError(path + ": libpng init failed");
    }
    std::vector<std::uint8_t> data;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": PNG decode error");
    }
    png_init_io(png, f);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);
    if (w < 1 || h < 1) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": zero-dimension image");
    }
    if (depth == 16) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": unsupported bit depth (16-bit PNG)");
    }

    // normalize everything to 8-bit RGB, dropping alpha
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const std::size_t stride = png_get_rowbytes(png, info);
    data.resize(stride * h);
    rows.resize(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = data.data() + y * stride;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    Image img(static_cast<int>(w), static_cast<int>(h));
    std::size_t p = 0;
    for (png_uint_32 y = 0; y < h; ++y) {
        const std::uint8_t* src = data.data() + y * stride;
        for (png_uint_32 x = 0; x < w; ++x, ++p) {
            img.r[p] = src[3 * x + 0] * kInv255;
            img.g[p] = src[3 * x + 1] * kInv255;
            img.b[p] = src[3 * x + 2] * kInv255;
        }
    }
    return img;
}

void save_png(const Image& img, const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError(path + ": cannot open for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                              nullptr, nullptr);
    if (!png) throw IoError(path + ": libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError(path + ": libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": PNG encode error");
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<std::uint8_t> row(static_cast<std::size_t>(img.width) * 3);
    std::size_t p = 0;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x, ++p) {
            row[3 * x + 0] = to_byte(img.r[p]);
            row[3 * x + 1] = to_byte(img.g[p]);
            row[3 * x + 2] = to_byte(img.b[p]);
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

bool has_suffix(const std::string& s, const char* suf) {
    const std::size_t n = std::strlen(suf);
    if (s.size() < n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::tolower(static_cast<unsigned char>(s[s.size() - n + i])) !=
            suf[i])
            return false;
    }
    return true;
}

}  // namespace

Image load_image(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw IoError(path + ": cannot open");
    unsigned char magic[8] = {0};
    const std::size_t got = std::fread(magic, 1, sizeof magic, f.get());
    std::rewind(f.get());
    if (got >= 2 && magic[0] == 'P' && magic[1] == '6')
        return load_ppm(f.get(), path);
    if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0)
        return load_png(f.get(), path);
    throw IoError(path + ": unsupported format (want 8-bit PNG or P6 PPM)");
}

void save_image(const Image& img, const std::string& path) {
    if (has_suffix(path, ".png")) {
        save_png(img, path);
    } else if (has_suffix(path, ".ppm")) {
        save_ppm(img, path);
    } else {
        throw IoError(path + ": unknown extension (want .png or .ppm)");
    }
}

Image scalar_to_image(const ScalarMap& map) {
    Image img(map.width, map.height);
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        const double v = clamp01(map.values[i]);
        img.r[i] = v;
        img.g[i] = v;
        img.b[i] = v;
    }
    return img;
}

Image channel_map_to_image(const ChannelIndexMap& map) {
    Image img(map.width, map.height);
    for (std::size_t i = 0; i < map.labels.size(); ++i) {
        img.r[i] = map.labels[i] == 0 ? 1.0 : 0.0;
        img.g[i] = map.labels[i] == 1 ? 1.0 : 0.0;
        img.b[i] = map.labels[i] == 2 ? 1.0 : 0.0;
    }
    return img;
}

}  // namespace defog
