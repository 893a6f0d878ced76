#include "veinproc/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

namespace veinproc {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::string lower_ext(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

// Reads the next PGM header integer, skipping whitespace and '#' comments.
long pgm_header_int(std::istream& in, const std::string& path) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c))
        throw IoError(path + ": malformed PGM header");
    long value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > 1000000000) throw IoError(path + ": PGM header value out of range");
        c = in.get();
    }
    if (c != EOF) in.unget();
    return value;
}

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open file");

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5')
        throw IoError(path + ": not a P5 PGM file");

    const long w = pgm_header_int(in, path);
    const long h = pgm_header_int(in, path);
    const long maxval = pgm_header_int(in, path);
    if (w < 1 || h < 1) throw IoError(path + ": zero-dimension image");
    if (maxval < 1 || maxval > 65535) throw IoError(path + ": invalid PGM maxval");
    in.get();  // single whitespace byte separating header and raster

    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    const int bytes_per_sample = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(n * bytes_per_sample);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        throw IoError(path + ": truncated PGM raster");

    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    const double scale = 1.0 / static_cast<double>(maxval);
    if (bytes_per_sample == 1) {
        for (std::size_t i = 0; i < n; ++i) img.data[i] = raw[i] * scale;
    } else {
        // 16-bit PGM samples are big-endian
        for (std::size_t i = 0; i < n; ++i)
            img.data[i] = ((raw[2 * i] << 8) | raw[2 * i + 1]) * scale;
    }
    return img;
}

GrayImage load_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError(path + ": cannot open file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError(path + ": libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError(path + ": libpng init failed");
    }

    std::vector<unsigned char> raster;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": PNG decode error");
    }

    png_init_io(png, fp.get());
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    int bit_depth = png_get_bit_depth(png, info);

    if (color_type != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": unsupported format (grayscale PNG required)");
    }
    if (w < 1 || h < 1) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": zero-dimension image");
    }
    if (bit_depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
        bit_depth = 8;
    }
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const std::size_t rowbytes = png_get_rowbytes(png, info);
    raster.resize(rowbytes * h);
    rows.resize(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = raster.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    if (bit_depth == 8) {
        for (std::size_t y = 0; y < h; ++y)
            for (std::size_t x = 0; x < w; ++x)
                img.data[y * w + x] = raster[y * rowbytes + x] / 255.0;
    } else {
        // 16-bit PNG samples are big-endian
        for (std::size_t y = 0; y < h; ++y)
            for (std::size_t x = 0; x < w; ++x) {
                const unsigned hi = raster[y * rowbytes + 2 * x];
                const unsigned lo = raster[y * rowbytes + 2 * x + 1];
                img.data[y * w + x] = ((hi << 8) | lo) / 65535.0;
            }
    }
    return img;
}

void save_pgm(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open file for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(img.width));
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x)
            row[static_cast<std::size_t>(x)] = static_cast<unsigned char>(quantize255(img.at(x, y)));
        out.write(reinterpret_cast<const char*>(row.data()), img.width);
    }
    if (!out) throw IoError(path + ": write failed");
}

void save_png(const GrayImage& img, const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError(path + ": cannot open file for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError(path + ": libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError(path + ": libpng init failed");
    }

    std::vector<unsigned char> raster(img.pixel_count());
    std::vector<png_bytep> rows(static_cast<std::size_t>(img.height));
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": PNG encode error");
    }

    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x)
            raster[static_cast<std::size_t>(y) * img.width + x] =
                static_cast<unsigned char>(quantize255(img.at(x, y)));
        rows[static_cast<std::size_t>(y)] = raster.data() + static_cast<std::size_t>(y) * img.width;
    }
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

GrayImage load_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError(path + ": cannot open file");
    unsigned char magic[4] = {0, 0, 0, 0};
    probe.read(reinterpret_cast<char*>(magic), 4);
    probe.close();

    if (magic[0] == 'P' && magic[1] == '5') return load_pgm(path);
    if (magic[0] == 0x89 && magic[1] == 'P' && magic[2] == 'N' && magic[3] == 'G')
        return load_png(path);
    throw IoError(path + ": unsupported format (P5 PGM or grayscale PNG required)");
}

void save_image(const GrayImage& img, const std::string& path) {
    if (img.width < 1 || img.height < 1)
        throw std::invalid_argument("save_image: empty image");
    for (double v : img.data)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("save_image: values outside [0,1]");

    const std::string ext = lower_ext(path);
    if (ext == "pgm" || ext == "pnm")
        save_pgm(img, path);
    else if (ext == "png")
        save_png(img, path);
    else
        throw IoError(path + ": unsupported output format (.pgm/.pnm/.png)");
}

}  // namespace veinproc
