#ifndef EYEKIT_IMAGE_HPP
#define EYEKIT_IMAGE_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace eyekit {

/// Grayscale raster, row-major, pixel values normalized to [0, 1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h),
          pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    double& at(int row, int col) {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    double at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
};

/// Ground-truth eye centers, (row, col) in pixel coordinates of the image the
/// annotation belongs to. "Left" is the eye with the smaller column.
struct EyeAnnotation {
    int left_row = 0;
    int left_col = 0;
    int right_row = 0;
    int right_col = 0;
};

/// Parses a binary PGM ("P5", maxval up to 65535, '#' comments allowed in the
/// header). Pixels are divided by maxval. Throws ParseError naming the byte
/// offset on malformed input.
GrayImage load_pgm(std::span<const unsigned char> bytes);

/// Serializes as binary P5 with maxval 255, pixel byte = round(p * 255).
/// Throws std::invalid_argument if the image violates its invariants.
std::vector<unsigned char> save_pgm(const GrayImage& img);

GrayImage load_pgm_file(const std::filesystem::path& path);
void save_pgm_file(const std::filesystem::path& path, const GrayImage& img);

/// Side of the square the image is padded to: target_lowband * 2^k for the
/// smallest k >= 1 with that side covering both dimensions.
int dyadic_side(int width, int height, int target_lowband);

/// (row, col) offset of the original image inside its padded square.
std::pair<int, int> pad_offsets(const GrayImage& img, int target_lowband);

/// Pads to dyadic_side x dyadic_side with the original centered and the
/// border filled by edge replication (nearest original pixel). Replication
/// rather than zero fill: a zero border would manufacture intensity edges
/// that show up as spurious wavelet maxima.
GrayImage pad_to_dyadic(const GrayImage& img, int target_lowband = 32);

/// Parses one line "L_row L_col R_row R_col" of whitespace-separated decimal
/// integers. No bounds check; the image is unknown at parse time.
EyeAnnotation parse_annotation(std::string_view text);

} // namespace eyekit

#endif
