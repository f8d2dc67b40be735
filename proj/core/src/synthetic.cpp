#include "eyekit/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eyekit/rng.hpp"

namespace eyekit {

namespace {

/// Anti-aliased ellipse membership: 1 well inside, 0 outside, linear ramp
/// across a thin shell so the face boundary stays smooth at every size.
double ellipse_soft(double r, double c, double cr, double cc, double ar, double ac) {
    const double e = ((r - cr) / ar) * ((r - cr) / ar) + ((c - cc) / ac) * ((c - cc) / ac);
    return std::clamp((1.0 - e) / 0.12, 0.0, 1.0);
}

double blob(double r, double c, double br, double bc, double sr, double sc) {
    const double dr = (r - br) / sr, dc = (c - bc) / sc;
    return std::exp(-0.5 * (dr * dr + dc * dc));
}

} // namespace

FaceTraits sample_face_traits(std::uint64_t person_seed) {
    std::mt19937_64 rng(mix_seed(person_seed, 0x5eed));
    FaceTraits t;
    t.background = uniform(rng, 0.36, 0.44);
    t.face_brightness = uniform(rng, 0.72, 0.86);
    t.center_row = 0.5 + uniform(rng, -0.02, 0.02);
    t.center_col = 0.5 + uniform(rng, -0.02, 0.02);
    t.semi_axis_row = uniform(rng, 0.37, 0.43);
    t.semi_axis_col = uniform(rng, 0.28, 0.34);
    // eye positions: anatomical base +-10% of the side, each coordinate
    // jittered independently
    t.eye_row[0] = 0.42 + uniform(rng, -0.10, 0.10);
    t.eye_col[0] = 0.34 + uniform(rng, -0.10, 0.10);
    t.eye_row[1] = 0.42 + uniform(rng, -0.10, 0.10);
    t.eye_col[1] = 0.66 + uniform(rng, -0.10, 0.10);
    // eye spread comparable to one subband cell: big enough to always leave a
    // vertical-detail signature, small enough that the signature stays within
    // one cell of the center
    t.eye_sigma_row = uniform(rng, 0.018, 0.026);
    t.eye_sigma_col = t.eye_sigma_row * uniform(rng, 0.95, 2.1);
    t.eye_depth = uniform(rng, 0.48, 0.68);
    t.has_brows = uniform01(rng) < 0.7;
    t.brow_depth = uniform(rng, 0.06, 0.14);
    t.has_mouth = uniform01(rng) < 0.85;
    t.mouth_row = 0.70 + uniform(rng, -0.02, 0.02);
    t.mouth_depth = uniform(rng, 0.18, 0.30);
    t.mouth_sigma_col = uniform(rng, 0.09, 0.14);
    return t;
}

SyntheticFace render_face(const FaceTraits& traits, std::uint64_t image_seed,
                          int side, bool closed_eyes) {
    if (side < 8) throw std::invalid_argument("render_face: side too small");
    std::mt19937_64 rng(mix_seed(image_seed, 0xface));
    const double s = static_cast<double>(side);

    // per-image variation
    double eye_r[2], eye_c[2];
    for (int e = 0; e < 2; ++e) {
        eye_r[e] = (traits.eye_row[e] + uniform(rng, -0.010, 0.010)) * s;
        eye_c[e] = (traits.eye_col[e] + uniform(rng, -0.010, 0.010)) * s;
    }
    const double grad_strength = uniform(rng, -0.08, 0.08);
    const double grad_angle = uniform(rng, 0.0, 6.283185307179586);
    const double noise_sigma = uniform(rng, 0.006, 0.018);
    const double gx = std::cos(grad_angle), gy = std::sin(grad_angle);

    const double cr = traits.center_row * s, cc = traits.center_col * s;
    const double ar = traits.semi_axis_row * s, ac = traits.semi_axis_col * s;
    const double eye_sr = traits.eye_sigma_row * s, eye_sc = traits.eye_sigma_col * s;
    const double eye_depth = closed_eyes ? 0.5 * traits.eye_depth : traits.eye_depth;
    const double mouth_r = traits.mouth_row * s;

    GrayImage img(side, side);
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            const double rr = r + 0.5, rc = c + 0.5;
            double v = traits.background;
            v += (traits.face_brightness - traits.background) * ellipse_soft(rr, rc, cr, cc, ar, ac);
            for (int e = 0; e < 2; ++e) {
                v -= eye_depth * blob(rr, rc, eye_r[e], eye_c[e], eye_sr, eye_sc);
                if (traits.has_brows)
                    v -= traits.brow_depth *
                         blob(rr, rc, eye_r[e] - 0.09 * s, eye_c[e], 0.010 * s, 0.055 * s);
            }
            if (traits.has_mouth)
                v -= traits.mouth_depth * blob(rr, rc, mouth_r, cc, 0.016 * s, traits.mouth_sigma_col * s);
            v += grad_strength * ((rc - cc) * gx + (rr - cr) * gy) / s;
            v += gaussian(rng, 0.0, noise_sigma);
            img.at(r, c) = std::clamp(v, 0.0, 1.0);
        }
    }

    EyeAnnotation eyes;
    eyes.left_row = static_cast<int>(std::lround(eye_r[0] - 0.5));
    eyes.left_col = static_cast<int>(std::lround(eye_c[0] - 0.5));
    eyes.right_row = static_cast<int>(std::lround(eye_r[1] - 0.5));
    eyes.right_col = static_cast<int>(std::lround(eye_c[1] - 0.5));
    return SyntheticFace{std::move(img), eyes};
}

SyntheticFace generate_synthetic_face(std::uint64_t seed, int side) {
    if (side != 64 && side != 128 && side != 256)
        throw std::invalid_argument("generate_synthetic_face: side must be 64, 128, or 256");
    return render_face(sample_face_traits(seed), mix_seed(seed, 0x1ca6e), side);
}

} // namespace eyekit
