#ifndef EYEKIT_MAXIMA_HPP
#define EYEKIT_MAXIMA_HPP

#include <array>
#include <utility>
#include <vector>

#include "eyekit/wavelet.hpp"

namespace eyekit {

/// Strict local peak of coefficient magnitude, in subband coordinates.
struct MaximaPoint {
    int row = 0;
    int col = 0;
    double magnitude = 0.0;
};

/// 3x3 magnitude neighborhood of a maxima point, row-major. Out-of-band
/// positions are zero-filled.
struct Patch9 {
    std::array<double, 9> values{};
    MaximaPoint center;
};

/// Every cell whose magnitude is >= threshold_ratio * (band max magnitude)
/// and strictly exceeds all in-bounds 8-neighbors. Sorted by descending
/// magnitude, ties by (row, col) ascending. Plateaus of equal neighbors yield
/// no maxima. An all-zero band yields an empty list; a side < 3 is an error.
std::vector<MaximaPoint> detect_maxima(const Subband& band, double threshold_ratio);

/// The 3x3 neighborhood magnitudes around p. With normalize, all nine values
/// are divided by the band's global max magnitude (left untouched if that
/// max is zero).
Patch9 extract_patch(const Subband& band, const MaximaPoint& p, bool normalize);

/// A subband coordinate mapped back to original-image pixels.
struct MappedWindow {
    double center_row = 0.0; // original-image coordinates, half-pixel centered
    double center_col = 0.0;
    int window_side = 0;     // 2^levels
    int row_begin = 0;       // window clipped to the original image, half-open
    int row_end = 0;
    int col_begin = 0;
    int col_end = 0;
    bool padding_artifact = false; // center fell outside the original image
};

/// Inverse of the coordinate contraction applied by `levels` decompositions
/// of a padded image: center = (coord + 0.5) * 2^levels - pad_offset, window
/// side 2^levels. Windows of distinct subband cells tile the padded image
/// disjointly before clipping.
MappedWindow map_to_image(const MaximaPoint& p, int levels, int padded_side,
                          std::pair<int, int> pad_offsets,
                          int original_width, int original_height);

} // namespace eyekit

#endif
