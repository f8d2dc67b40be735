#ifndef EYEKIT_TOOLS_HARNESS_HPP
#define EYEKIT_TOOLS_HARNESS_HPP

#include <vector>

#include "eyekit/detector.hpp"
#include "eyekit/image.hpp"

namespace eyekit::cli {

/// One localized eye hypothesis: the score-weighted centroid of a cluster of
/// accepted detections.
struct EyeLocalization {
    double row = 0.0;
    double col = 0.0;
    double score = 0.0; // best member score
    int window_side = 0;
};

/// Groups score-ordered detections into clusters of radius 2.25 window sides
/// around each strongest unclaimed detection and returns the score-weighted
/// centroid per cluster, strongest first. The wavelet signature of one eye
/// often splits into responses just above and below it; the centroid cancels
/// that split, while distinct eyes (several windows apart) stay separate.
std::vector<EyeLocalization> localize_eyes(const std::vector<Detection>& detections);

/// Both annotated eyes matched one-to-one by the top two localizations, each
/// within one window side (Euclidean, pixel centers).
bool both_eyes_localized(const std::vector<EyeLocalization>& localizations,
                         const EyeAnnotation& truth);

} // namespace eyekit::cli

#endif
