#include "eyekit/maxima.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eyekit/errors.hpp"

namespace eyekit {

namespace {

double max_magnitude(const Mat& m) {
    double best = 0.0;
    for (double v : m.data()) best = std::max(best, std::abs(v));
    return best;
}

} // namespace

std::vector<MaximaPoint> detect_maxima(const Subband& band, double threshold_ratio) {
    const Mat& m = band.data;
    if (m.rows() < 3 || m.cols() < 3)
        throw DataError("detect_maxima: band side must be >= 3");
    if (!(threshold_ratio >= 0.0 && threshold_ratio <= 1.0))
        throw std::invalid_argument("detect_maxima: threshold_ratio must be in [0, 1]");

    const double global_max = max_magnitude(m);
    if (global_max == 0.0) return {};
    const double threshold = threshold_ratio * global_max;

    std::vector<MaximaPoint> out;
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            const double v = std::abs(m(r, c));
            if (v < threshold) continue;
            bool strict = true;
            for (int dr = -1; dr <= 1 && strict; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const int nr = r + dr, nc = c + dc;
                    if (nr < 0 || nr >= m.rows() || nc < 0 || nc >= m.cols()) continue;
                    if (std::abs(m(nr, nc)) >= v) {
                        strict = false;
                        break;
                    }
                }
            }
            if (strict) out.push_back({r, c, v});
        }
    }
    std::sort(out.begin(), out.end(), [](const MaximaPoint& a, const MaximaPoint& b) {
        if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
        if (a.row != b.row) return a.row < b.row;
        return a.col < b.col;
    });
    return out;
}

Patch9 extract_patch(const Subband& band, const MaximaPoint& p, bool normalize) {
    const Mat& m = band.data;
    if (p.row < 0 || p.row >= m.rows() || p.col < 0 || p.col >= m.cols())
        throw std::invalid_argument("extract_patch: point outside band");

    Patch9 patch;
    int k = 0;
    for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc, ++k) {
            const int r = p.row + dr, c = p.col + dc;
            const bool inside = r >= 0 && r < m.rows() && c >= 0 && c < m.cols();
            patch.values[k] = inside ? std::abs(m(r, c)) : 0.0;
        }
    }
    patch.center = MaximaPoint{p.row, p.col, std::abs(m(p.row, p.col))};
    if (normalize) {
        const double global_max = max_magnitude(m);
        if (global_max > 0.0)
            for (double& v : patch.values) v /= global_max;
    }
    return patch;
}

MappedWindow map_to_image(const MaximaPoint& p, int levels, int padded_side,
                          std::pair<int, int> pad_offsets,
                          int original_width, int original_height) {
    if (levels < 1 || levels > 24) throw std::invalid_argument("map_to_image: levels must be >= 1");
    const int scale = 1 << levels;
    if (padded_side <= 0 || padded_side % scale != 0)
        throw std::invalid_argument("map_to_image: padded_side must be a multiple of 2^levels");
    const int band_side = padded_side / scale;
    if (p.row < 0 || p.row >= band_side || p.col < 0 || p.col >= band_side)
        throw std::invalid_argument("map_to_image: point outside the level-" + std::to_string(levels) + " band");

    MappedWindow w;
    w.window_side = scale;
    w.center_row = (p.row + 0.5) * scale - pad_offsets.first;
    w.center_col = (p.col + 0.5) * scale - pad_offsets.second;
    w.row_begin = std::clamp(p.row * scale - pad_offsets.first, 0, original_height);
    w.row_end = std::clamp((p.row + 1) * scale - pad_offsets.first, 0, original_height);
    w.col_begin = std::clamp(p.col * scale - pad_offsets.second, 0, original_width);
    w.col_end = std::clamp((p.col + 1) * scale - pad_offsets.second, 0, original_width);
    w.padding_artifact = w.center_row < 0.0 || w.center_row >= original_height ||
                         w.center_col < 0.0 || w.center_col >= original_width;
    return w;
}

} // namespace eyekit
