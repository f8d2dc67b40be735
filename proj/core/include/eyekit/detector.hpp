#ifndef EYEKIT_DETECTOR_HPP
#define EYEKIT_DETECTOR_HPP

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "eyekit/image.hpp"
#include "eyekit/maxima.hpp"
#include "eyekit/mlp.hpp"
#include "eyekit/wavelet.hpp"

namespace eyekit {

/// Pipeline tunables shared by training, detection, and matching. wavelet,
/// target_lowband, and normalize_patches form the compatibility fingerprint
/// stored with every template.
struct PipelineConfig {
    WaveletKind wavelet = WaveletKind::Haar;
    int target_lowband = 32;
    double threshold_ratio = 0.2;
    int label_radius = 1;          // Chebyshev radius, in subband cells, for eye labels
    bool normalize_patches = true;
    bool balance = false;          // subsample non-eye samples down to the eye count
};

/// An eye candidate accepted by the classifier, mapped back to
/// original-image pixels.
struct Detection {
    double center_row = 0.0;
    double center_col = 0.0;
    int window_side = 0; // 2^levels
    double score = 0.0;  // classify() score of the source patch
    MaximaPoint source;  // subband coordinates
};

/// One dataset entry: `<root>/<person_id>/<image>.pgm` plus its `.eyes`
/// annotation sidecar.
struct DatasetImage {
    std::filesystem::path image_path;
    std::filesystem::path annotation_path;
    std::string person_id;
};

/// Scans the `<root>/<person_id>/<image>.pgm` layout; entries are sorted
/// lexicographically by path so every downstream ordering is deterministic.
std::vector<DatasetImage> scan_dataset(const std::filesystem::path& root);

/// Everything the front half of the pipeline produces for one image:
/// pad -> decompose -> maxima in the deepest LH band -> 3x3 patches.
struct PipelineCandidates {
    int levels = 0;
    int padded_side = 0;
    std::pair<int, int> pad_offsets{0, 0};
    std::vector<MaximaPoint> maxima;
    std::vector<Patch9> patches; // parallel to maxima
};

PipelineCandidates run_pipeline(const GrayImage& img, const PipelineConfig& cfg);

struct ImageSampleCounts {
    std::filesystem::path image_path;
    int eye_samples = 0;
    int non_eye_samples = 0;
    int missed_eyes = 0; // annotated eyes with no maximum within label_radius
};

struct TrainingSet {
    std::vector<TrainingSample> samples;
    std::vector<ImageSampleCounts> per_image; // counts before any balancing
    int eye_total = 0;
    int non_eye_total = 0;
};

/// Labels every detected maximum of every image: Eye iff it lies within
/// Chebyshev distance label_radius of either annotated eye center mapped into
/// subband coordinates (floor((coord + pad_offset) / 2^levels)), NonEye
/// otherwise. Throws DataError naming the file when an annotation maps
/// outside the subband.
TrainingSet build_training_set(const std::vector<DatasetImage>& images,
                               const PipelineConfig& cfg);

/// Full detection pass: candidates classified Eye, mapped to image
/// coordinates, padding artifacts dropped, sorted by descending score.
std::vector<Detection> detect_eyes(const GrayImage& img, const Mlp& net,
                                   const PipelineConfig& cfg);

/// Eye-labeled patch inputs of a dataset, e.g. for use as negatives when
/// enrolling a different person.
std::vector<std::array<double, kMlpInputs>> collect_eye_patches(
    const std::vector<DatasetImage>& images, const PipelineConfig& cfg);

} // namespace eyekit

#endif
