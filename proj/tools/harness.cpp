#include "harness.hpp"

#include <cmath>

namespace eyekit::cli {

std::vector<EyeLocalization> localize_eyes(const std::vector<Detection>& detections) {
    std::vector<EyeLocalization> out;
    std::vector<bool> claimed(detections.size(), false);
    for (std::size_t i = 0; i < detections.size(); ++i) {
        if (claimed[i]) continue;
        const Detection& seed = detections[i];
        const double radius = 2.25 * seed.window_side;
        double weight_sum = 0.0, row_sum = 0.0, col_sum = 0.0;
        for (std::size_t j = i; j < detections.size(); ++j) {
            if (claimed[j]) continue;
            const Detection& d = detections[j];
            const double dist = std::hypot(d.center_row - seed.center_row,
                                           d.center_col - seed.center_col);
            if (dist >= radius) continue;
            claimed[j] = true;
            const double w = d.score; // accepted detections have score > 0
            weight_sum += w;
            row_sum += w * d.center_row;
            col_sum += w * d.center_col;
        }
        out.push_back(EyeLocalization{row_sum / weight_sum, col_sum / weight_sum,
                                      seed.score, seed.window_side});
    }
    return out;
}

bool both_eyes_localized(const std::vector<EyeLocalization>& localizations,
                         const EyeAnnotation& truth) {
    if (localizations.size() < 2) return false;
    const double eye[2][2] = {
        {truth.left_row + 0.5, truth.left_col + 0.5},
        {truth.right_row + 0.5, truth.right_col + 0.5},
    };
    auto hit = [&](const EyeLocalization& loc, int e) {
        return std::hypot(loc.row - eye[e][0], loc.col - eye[e][1]) <= loc.window_side;
    };
    const EyeLocalization& a = localizations[0];
    const EyeLocalization& b = localizations[1];
    return (hit(a, 0) && hit(b, 1)) || (hit(a, 1) && hit(b, 0));
}

} // namespace eyekit::cli
