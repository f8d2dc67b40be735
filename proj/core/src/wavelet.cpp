#include "eyekit/wavelet.hpp"

#include <cmath>
#include <stdexcept>

#include "eyekit/errors.hpp"

namespace eyekit {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_even(std::size_t n, const char* who) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument(std::string(who) + ": signal length must be even and >= 2");
}

void require_same_halves(std::size_t a, std::size_t d, const char* who) {
    if (a == 0 || a != d)
        throw std::invalid_argument(std::string(who) + ": approx/detail halves must be non-empty and equal length");
}

} // namespace

std::string to_string(WaveletKind kind) {
    return kind == WaveletKind::Haar ? "haar" : "cdf22";
}

WaveletKind wavelet_kind_from_string(std::string_view name) {
    if (name == "haar") return WaveletKind::Haar;
    if (name == "cdf22") return WaveletKind::Cdf22;
    throw DataError("unknown wavelet kind \"" + std::string(name) + "\" (expected haar or cdf22)");
}

std::string to_string(SubbandKind kind) {
    switch (kind) {
        case SubbandKind::LL: return "ll";
        case SubbandKind::LH: return "lh";
        case SubbandKind::HL: return "hl";
        case SubbandKind::HH: return "hh";
    }
    return "?";
}

std::pair<std::vector<double>, std::vector<double>> dwt1d_haar(std::span<const double> signal) {
    require_even(signal.size(), "dwt1d_haar");
    const std::size_t half = signal.size() / 2;
    std::vector<double> approx(half), detail(half);
    for (std::size_t i = 0; i < half; ++i) {
        approx[i] = (signal[2 * i] + signal[2 * i + 1]) * kInvSqrt2;
        detail[i] = (signal[2 * i] - signal[2 * i + 1]) * kInvSqrt2;
    }
    return {std::move(approx), std::move(detail)};
}

std::vector<double> idwt1d_haar(std::span<const double> approx, std::span<const double> detail) {
    require_same_halves(approx.size(), detail.size(), "idwt1d_haar");
    std::vector<double> out(approx.size() * 2);
    for (std::size_t i = 0; i < approx.size(); ++i) {
        out[2 * i] = (approx[i] + detail[i]) * kInvSqrt2;
        out[2 * i + 1] = (approx[i] - detail[i]) * kInvSqrt2;
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>> dwt1d_cdf22(std::span<const double> signal) {
    require_even(signal.size(), "dwt1d_cdf22");
    const std::size_t half = signal.size() / 2;
    std::vector<double> s(half), d(half);
    for (std::size_t i = 0; i < half; ++i) {
        s[i] = signal[2 * i];
        d[i] = signal[2 * i + 1];
    }
    // predict: odd samples lose the linear interpolation of their even
    // neighbors; the right edge mirrors the last even sample
    for (std::size_t i = 0; i < half; ++i) {
        const double right = (i + 1 < half) ? s[i + 1] : s[half - 1];
        d[i] -= 0.5 * (s[i] + right);
    }
    // update: even samples absorb a quarter of their detail neighbors; the
    // left edge mirrors d[0]
    for (std::size_t i = 0; i < half; ++i) {
        const double left = (i == 0) ? d[0] : d[i - 1];
        s[i] += 0.25 * (left + d[i]);
    }
    return {std::move(s), std::move(d)};
}

std::vector<double> idwt1d_cdf22(std::span<const double> approx, std::span<const double> detail) {
    require_same_halves(approx.size(), detail.size(), "idwt1d_cdf22");
    const std::size_t half = approx.size();
    std::vector<double> s(approx.begin(), approx.end());
    std::vector<double> d(detail.begin(), detail.end());
    for (std::size_t i = 0; i < half; ++i) {
        const double left = (i == 0) ? d[0] : d[i - 1];
        s[i] -= 0.25 * (left + d[i]);
    }
    for (std::size_t i = 0; i < half; ++i) {
        const double right = (i + 1 < half) ? s[i + 1] : s[half - 1];
        d[i] += 0.5 * (s[i] + right);
    }
    std::vector<double> out(half * 2);
    for (std::size_t i = 0; i < half; ++i) {
        out[2 * i] = s[i];
        out[2 * i + 1] = d[i];
    }
    return out;
}

namespace {

std::pair<std::vector<double>, std::vector<double>> dwt1d(std::span<const double> signal, WaveletKind kind) {
    return kind == WaveletKind::Haar ? dwt1d_haar(signal) : dwt1d_cdf22(signal);
}

std::vector<double> idwt1d(std::span<const double> approx, std::span<const double> detail, WaveletKind kind) {
    return kind == WaveletKind::Haar ? idwt1d_haar(approx, detail) : idwt1d_cdf22(approx, detail);
}

} // namespace

QuadBands dwt2d_level(const Mat& img, WaveletKind kind) {
    const int rows = img.rows(), cols = img.cols();
    if (rows < 2 || cols < 2 || rows % 2 != 0 || cols % 2 != 0)
        throw std::invalid_argument("dwt2d_level: both dimensions must be even and >= 2");
    const int hr = rows / 2, hc = cols / 2;

    // rows first: [low half | high half]
    Mat stage(rows, cols);
    std::vector<double> line(static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) line[c] = img(r, c);
        auto [a, d] = dwt1d(line, kind);
        for (int c = 0; c < hc; ++c) {
            stage(r, c) = a[c];
            stage(r, hc + c) = d[c];
        }
    }
    // then columns: [low half / high half]
    Mat full(rows, cols);
    std::vector<double> column(static_cast<std::size_t>(rows));
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) column[r] = stage(r, c);
        auto [a, d] = dwt1d(column, kind);
        for (int r = 0; r < hr; ++r) {
            full(r, c) = a[r];
            full(hr + r, c) = d[r];
        }
    }

    QuadBands out{Mat(hr, hc), Mat(hr, hc), Mat(hr, hc), Mat(hr, hc)};
    for (int r = 0; r < hr; ++r) {
        for (int c = 0; c < hc; ++c) {
            out.ll(r, c) = full(r, c);           // row low,  col low
            out.hl(r, c) = full(r, hc + c);      // row high, col low
            out.lh(r, c) = full(hr + r, c);      // row low,  col high
            out.hh(r, c) = full(hr + r, hc + c); // row high, col high
        }
    }
    return out;
}

Mat idwt2d_level(const QuadBands& bands, WaveletKind kind) {
    const int hr = bands.ll.rows(), hc = bands.ll.cols();
    if (hr < 1 || hc < 1) throw DataError("idwt2d_level: empty subbands");
    for (const Mat* m : {&bands.lh, &bands.hl, &bands.hh})
        if (m->rows() != hr || m->cols() != hc)
            throw DataError("idwt2d_level: inconsistent subband shapes");
    const int rows = hr * 2, cols = hc * 2;

    Mat full(rows, cols);
    for (int r = 0; r < hr; ++r) {
        for (int c = 0; c < hc; ++c) {
            full(r, c) = bands.ll(r, c);
            full(r, hc + c) = bands.hl(r, c);
            full(hr + r, c) = bands.lh(r, c);
            full(hr + r, hc + c) = bands.hh(r, c);
        }
    }
    // invert columns, then rows
    Mat stage(rows, cols);
    std::vector<double> approx(static_cast<std::size_t>(hr)), detail(static_cast<std::size_t>(hr));
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < hr; ++r) {
            approx[r] = full(r, c);
            detail[r] = full(hr + r, c);
        }
        const std::vector<double> col = idwt1d(approx, detail, kind);
        for (int r = 0; r < rows; ++r) stage(r, c) = col[r];
    }
    Mat out(rows, cols);
    std::vector<double> ra(static_cast<std::size_t>(hc)), rd(static_cast<std::size_t>(hc));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < hc; ++c) {
            ra[c] = stage(r, c);
            rd[c] = stage(r, hc + c);
        }
        const std::vector<double> row = idwt1d(ra, rd, kind);
        for (int c = 0; c < cols; ++c) out(r, c) = row[c];
    }
    return out;
}

WaveletPyramid decompose(const GrayImage& img, WaveletKind kind, int target_lowband) {
    if (target_lowband < 1) throw std::invalid_argument("target_lowband must be >= 1");
    if (img.width != img.height)
        throw DataError("decompose: image must be square; pad with pad_to_dyadic first");
    const int side = img.width;
    int levels = 0;
    long s = target_lowband;
    while (s < side) {
        s *= 2;
        ++levels;
    }
    if (s != side || levels < 1)
        throw DataError("decompose: side must be target_lowband*2^k with k >= 1; pad with pad_to_dyadic first");

    WaveletPyramid pyr;
    pyr.kind = kind;
    pyr.levels = levels;

    Mat current(side, side);
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) current(r, c) = img.at(r, c);

    for (int level = 1; level <= levels; ++level) {
        QuadBands q = dwt2d_level(current, kind);
        PyramidLevel pl;
        pl.lh = Subband{SubbandKind::LH, level, std::move(q.lh)};
        pl.hl = Subband{SubbandKind::HL, level, std::move(q.hl)};
        pl.hh = Subband{SubbandKind::HH, level, std::move(q.hh)};
        pyr.detail.push_back(std::move(pl));
        current = std::move(q.ll);
    }
    pyr.low = Subband{SubbandKind::LL, levels, std::move(current)};
    return pyr;
}

Mat reconstruct(const WaveletPyramid& pyr) {
    if (pyr.levels < 1 || pyr.detail.size() != static_cast<std::size_t>(pyr.levels))
        throw DataError("reconstruct: malformed pyramid");
    Mat current = pyr.low.data;
    for (int level = pyr.levels; level >= 1; --level) {
        const PyramidLevel& pl = pyr.detail[static_cast<std::size_t>(level - 1)];
        QuadBands q{current, pl.lh.data, pl.hl.data, pl.hh.data};
        current = idwt2d_level(q, pyr.kind);
    }
    return current;
}

GrayImage subband_as_image(const Mat& band) {
    if (band.empty()) throw std::invalid_argument("subband_as_image: empty band");
    double lo = band.data()[0], hi = band.data()[0];
    for (double v : band.data()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    GrayImage img(band.cols(), band.rows());
    const double span = hi - lo;
    if (span > 0)
        for (std::size_t i = 0; i < band.size(); ++i)
            img.pixels[i] = (band.data()[i] - lo) / span;
    return img;
}

} // namespace eyekit
