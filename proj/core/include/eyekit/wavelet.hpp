#ifndef EYEKIT_WAVELET_HPP
#define EYEKIT_WAVELET_HPP

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eyekit/image.hpp"
#include "eyekit/matrix.hpp"

namespace eyekit {

enum class WaveletKind { Haar, Cdf22 };

std::string to_string(WaveletKind kind);
WaveletKind wavelet_kind_from_string(std::string_view name); // throws DataError

enum class SubbandKind { LL, LH, HL, HH };

std::string to_string(SubbandKind kind);

/// One quadrant of the decomposition, tagged with the pyramid depth it was
/// extracted at (level 1 = finest).
struct Subband {
    SubbandKind kind = SubbandKind::LL;
    int level = 0;
    Mat data;
};

struct PyramidLevel {
    Subband lh, hl, hh;
};

/// Result of the recursive 2D transform: detail bands for levels 1..levels
/// plus the final approximation band. Critically sampled, so the total
/// coefficient count equals the input pixel count.
struct WaveletPyramid {
    WaveletKind kind = WaveletKind::Haar;
    int levels = 0;
    std::vector<PyramidLevel> detail; // index level-1
    Subband low;                      // LL at the deepest level
};

// --- 1D transforms ---------------------------------------------------------
//
// Haar uses the orthonormal convention:
//   approx[i] = (s[2i] + s[2i+1]) / sqrt(2),  detail[i] = (s[2i] - s[2i+1]) / sqrt(2)
// which makes energy conservation exact.
//
// CDF(2,2) is the 5/3 wavelet factored into lifting steps with symmetric
// (half-sample) boundary extension:
//   split    s[i] = x[2i], d[i] = x[2i+1]
//   predict  d[i] -= (s[i] + s[i+1]) / 2     with s[n/2] == s[n/2-1]
//   update   s[i] += (d[i-1] + d[i]) / 4     with d[-1]  == d[0]
// The inverse runs the steps backwards with flipped signs, so reconstruction
// is exact to rounding.

std::pair<std::vector<double>, std::vector<double>> dwt1d_haar(std::span<const double> signal);
std::vector<double> idwt1d_haar(std::span<const double> approx, std::span<const double> detail);

std::pair<std::vector<double>, std::vector<double>> dwt1d_cdf22(std::span<const double> signal);
std::vector<double> idwt1d_cdf22(std::span<const double> approx, std::span<const double> detail);

struct QuadBands {
    Mat ll, lh, hl, hh;
};

/// One separable 2D level: the 1D transform runs over every row (left half
/// low, right half high), then over every column (top half low, bottom half
/// high). Quadrants are named by (row-direction filter, column-direction
/// filter): LL top-left, HL top-right (row high / column low), LH bottom-left
/// (row low / column high), HH bottom-right.
QuadBands dwt2d_level(const Mat& img, WaveletKind kind);
Mat idwt2d_level(const QuadBands& bands, WaveletKind kind);

/// Recursive Mallat pyramid: the 2D step is re-applied to LL only, until the
/// low band has side target_lowband. The input must be square with side
/// target_lowband * 2^k, k >= 1 (use pad_to_dyadic first).
WaveletPyramid decompose(const GrayImage& img, WaveletKind kind, int target_lowband = 32);

/// Exact inverse of decompose. Throws DataError on inconsistent subband shapes.
Mat reconstruct(const WaveletPyramid& pyr);

/// Min-max scaled coefficient dump for visual inspection; a constant band
/// maps to all zeros.
GrayImage subband_as_image(const Mat& band);

} // namespace eyekit

#endif
