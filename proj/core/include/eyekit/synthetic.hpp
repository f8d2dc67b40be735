#ifndef EYEKIT_SYNTHETIC_HPP
#define EYEKIT_SYNTHETIC_HPP

#include <cstdint>

#include "eyekit/image.hpp"

namespace eyekit {

struct SyntheticFace {
    GrayImage image;
    EyeAnnotation eyes;
};

/// Stable per-person appearance: a bright elliptical face on a mid-gray
/// background, two dark Gaussian eye blobs, and optional darker brow/mouth
/// distractor blobs. All geometry is stored as fractions of the image side so
/// the same person renders consistently at 64/128/256.
struct FaceTraits {
    double background = 0.40;
    double face_brightness = 0.80;
    double center_row = 0.5, center_col = 0.5;   // ellipse center
    double semi_axis_row = 0.40, semi_axis_col = 0.31;
    double eye_row[2] = {0.42, 0.42};            // [0] left (smaller col), [1] right
    double eye_col[2] = {0.34, 0.66};
    double eye_sigma_row = 0.035;
    double eye_sigma_col = 0.035;
    double eye_depth = 0.5;
    bool has_brows = true;
    double brow_depth = 0.18;
    bool has_mouth = true;
    double mouth_row = 0.70;
    double mouth_depth = 0.30;
    double mouth_sigma_col = 0.12;
};

/// Person appearance drawn from a seed. Eye positions jitter uniformly by
/// up to +-10% of the side around their anatomical base positions.
FaceTraits sample_face_traits(std::uint64_t person_seed);

/// Renders one image of a person: per-image eye jitter (+-1.5% of side), an
/// illumination gradient, and additive Gaussian noise (sigma <= 0.05) on top
/// of the person's traits. closed_eyes halves the eye blob depth.
/// Deterministic for a given (traits, image_seed, side).
SyntheticFace render_face(const FaceTraits& traits, std::uint64_t image_seed,
                          int side, bool closed_eyes = false);

/// A fresh face per seed: traits and per-image variation both derived from
/// the one seed. side must be 64, 128, or 256.
SyntheticFace generate_synthetic_face(std::uint64_t seed, int side);

} // namespace eyekit

#endif
