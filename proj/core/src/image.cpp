#include "eyekit/image.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "eyekit/errors.hpp"

namespace eyekit {

namespace {

[[noreturn]] void pgm_fail(std::size_t offset, const std::string& what) {
    throw ParseError("pgm: " + what + " at byte " + std::to_string(offset));
}

bool is_pgm_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

/// Advances over whitespace and '#' comment lines between header tokens.
void skip_separators(std::span<const unsigned char> bytes, std::size_t& pos) {
    while (pos < bytes.size()) {
        if (is_pgm_space(bytes[pos])) {
            ++pos;
        } else if (bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
}

long parse_header_int(std::span<const unsigned char> bytes, std::size_t& pos, const char* field) {
    skip_separators(bytes, pos);
    if (pos >= bytes.size()) pgm_fail(bytes.size(), std::string("truncated header, missing ") + field);
    if (!std::isdigit(bytes[pos])) pgm_fail(pos, std::string("expected digit for ") + field);
    long value = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
        value = value * 10 + (bytes[pos] - '0');
        if (value > 1'000'000'000L) pgm_fail(pos, std::string(field) + " out of range");
        ++pos;
    }
    return value;
}

void validate(const GrayImage& img) {
    if (img.width < 1 || img.height < 1)
        throw std::invalid_argument("image dimensions must be >= 1");
    if (img.pixels.size() != static_cast<std::size_t>(img.width) * img.height)
        throw std::invalid_argument("pixel count does not match width*height");
    for (double p : img.pixels)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("pixel value outside [0, 1]");
}

} // namespace

GrayImage load_pgm(std::span<const unsigned char> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        pgm_fail(0, "expected binary PGM magic \"P5\"");
    std::size_t pos = 2;

    const long width = parse_header_int(bytes, pos, "width");
    const long height = parse_header_int(bytes, pos, "height");
    const long maxval = parse_header_int(bytes, pos, "maxval");
    if (width < 1) pgm_fail(pos, "width must be >= 1");
    if (height < 1) pgm_fail(pos, "height must be >= 1");
    if (maxval == 0) pgm_fail(pos, "maxval must be positive");
    if (maxval > 65535) pgm_fail(pos, "maxval exceeds 65535");

    // Exactly one whitespace byte separates the header from the payload.
    if (pos >= bytes.size() || !is_pgm_space(bytes[pos]))
        pgm_fail(pos, "expected single whitespace before payload");
    ++pos;

    const int sample_bytes = maxval < 256 ? 1 : 2;
    const std::size_t count = static_cast<std::size_t>(width) * height;
    if (bytes.size() - pos < count * sample_bytes)
        pgm_fail(bytes.size(), "truncated pixel payload");

    GrayImage img(static_cast<int>(width), static_cast<int>(height));
    const double scale = 1.0 / static_cast<double>(maxval);
    for (std::size_t i = 0; i < count; ++i) {
        long v;
        if (sample_bytes == 1) {
            v = bytes[pos];
        } else {
            v = (static_cast<long>(bytes[pos]) << 8) | bytes[pos + 1]; // big-endian
        }
        if (v > maxval) pgm_fail(pos, "sample exceeds maxval");
        img.pixels[i] = static_cast<double>(v) * scale;
        pos += sample_bytes;
    }
    return img;
}

std::vector<unsigned char> save_pgm(const GrayImage& img) {
    validate(img);
    char header[64];
    const int n = std::snprintf(header, sizeof header, "P5\n%d %d\n255\n", img.width, img.height);
    std::vector<unsigned char> out(header, header + n);
    out.reserve(out.size() + img.pixels.size());
    for (double p : img.pixels)
        out.push_back(static_cast<unsigned char>(std::lround(p * 255.0)));
    return out;
}

GrayImage load_pgm_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    try {
        return load_pgm(bytes);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_pgm_file(const std::filesystem::path& path, const GrayImage& img) {
    const std::vector<unsigned char> bytes = save_pgm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("short write to " + path.string());
}

int dyadic_side(int width, int height, int target_lowband) {
    if (target_lowband < 1) throw std::invalid_argument("target_lowband must be >= 1");
    if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be >= 1");
    long side = static_cast<long>(target_lowband) * 2; // k >= 1: at least one level
    const long need = std::max(width, height);
    while (side < need) {
        side *= 2;
        if (side > (1L << 30)) throw std::invalid_argument("padded side overflows");
    }
    return static_cast<int>(side);
}

std::pair<int, int> pad_offsets(const GrayImage& img, int target_lowband) {
    const int side = dyadic_side(img.width, img.height, target_lowband);
    return {(side - img.height) / 2, (side - img.width) / 2};
}

GrayImage pad_to_dyadic(const GrayImage& img, int target_lowband) {
    const int side = dyadic_side(img.width, img.height, target_lowband);
    const auto [off_r, off_c] = pad_offsets(img, target_lowband);
    GrayImage out(side, side);
    for (int r = 0; r < side; ++r) {
        const int src_r = std::clamp(r - off_r, 0, img.height - 1);
        for (int c = 0; c < side; ++c) {
            const int src_c = std::clamp(c - off_c, 0, img.width - 1);
            out.at(r, c) = img.at(src_r, src_c);
        }
    }
    return out;
}

EyeAnnotation parse_annotation(std::string_view text) {
    int values[4];
    int count = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (count == 4) throw ParseError("annotation: expected 4 integers, found more");
        int v = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, v);
        if (ec != std::errc() || ptr != text.data() + j)
            throw ParseError("annotation: non-integer token \"" + std::string(text.substr(i, j - i)) + "\"");
        values[count++] = v;
        i = j;
    }
    if (count != 4)
        throw ParseError("annotation: expected 4 integers, found " + std::to_string(count));
    return EyeAnnotation{values[0], values[1], values[2], values[3]};
}

} // namespace eyekit
