#include "eyekit/detector.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "eyekit/errors.hpp"

namespace eyekit {

namespace {

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct LabeledImage {
    GrayImage image;
    EyeAnnotation eyes;
};

LabeledImage load_labeled(const DatasetImage& entry) {
    LabeledImage li;
    li.image = load_pgm_file(entry.image_path);
    EyeAnnotation ann;
    try {
        ann = parse_annotation(read_text_file(entry.annotation_path));
    } catch (const ParseError& e) {
        throw ParseError(entry.annotation_path.string() + ": " + e.what());
    }
    auto inside = [&](int r, int c) {
        return r >= 0 && r < li.image.height && c >= 0 && c < li.image.width;
    };
    if (!inside(ann.left_row, ann.left_col) || !inside(ann.right_row, ann.right_col))
        throw DataError(entry.annotation_path.string() + ": eye coordinates outside image bounds");
    li.eyes = ann;
    return li;
}

} // namespace

std::vector<DatasetImage> scan_dataset(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root)) throw DataError("dataset root is not a directory: " + root.string());

    std::vector<fs::path> person_dirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) person_dirs.push_back(entry.path());
    std::sort(person_dirs.begin(), person_dirs.end());

    std::vector<DatasetImage> out;
    for (const fs::path& dir : person_dirs) {
        std::vector<fs::path> images;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".pgm")
                images.push_back(entry.path());
        std::sort(images.begin(), images.end());
        for (const fs::path& img : images) {
            DatasetImage di;
            di.image_path = img;
            di.annotation_path = fs::path(img).replace_extension(".eyes");
            di.person_id = dir.filename().string();
            out.push_back(std::move(di));
        }
    }
    return out;
}

PipelineCandidates run_pipeline(const GrayImage& img, const PipelineConfig& cfg) {
    if (cfg.target_lowband < 3)
        throw DataError("target_lowband must be >= 3 so the low band supports 3x3 patches");

    const GrayImage padded = pad_to_dyadic(img, cfg.target_lowband);
    PipelineCandidates out;
    out.padded_side = padded.width;
    out.pad_offsets = pad_offsets(img, cfg.target_lowband);

    const WaveletPyramid pyr = decompose(padded, cfg.wavelet, cfg.target_lowband);
    out.levels = pyr.levels;

    const Subband& lh = pyr.detail.back().lh;
    out.maxima = detect_maxima(lh, cfg.threshold_ratio);
    out.patches.reserve(out.maxima.size());
    for (const MaximaPoint& p : out.maxima)
        out.patches.push_back(extract_patch(lh, p, cfg.normalize_patches));
    return out;
}

TrainingSet build_training_set(const std::vector<DatasetImage>& images,
                               const PipelineConfig& cfg) {
    TrainingSet set;
    for (const DatasetImage& entry : images) {
        const LabeledImage li = load_labeled(entry);
        const PipelineCandidates cand = run_pipeline(li.image, cfg);
        const int scale = 1 << cand.levels;
        const int band_side = cand.padded_side / scale;

        // annotated eye centers in subband coordinates of the padded image
        const int eye_sub[2][2] = {
            {(li.eyes.left_row + cand.pad_offsets.first) / scale,
             (li.eyes.left_col + cand.pad_offsets.second) / scale},
            {(li.eyes.right_row + cand.pad_offsets.first) / scale,
             (li.eyes.right_col + cand.pad_offsets.second) / scale},
        };
        for (const auto& e : eye_sub)
            if (e[0] < 0 || e[0] >= band_side || e[1] < 0 || e[1] >= band_side)
                throw DataError(entry.image_path.string() + ": annotation maps outside the subband");

        ImageSampleCounts counts;
        counts.image_path = entry.image_path;
        bool eye_hit[2] = {false, false};
        for (std::size_t i = 0; i < cand.maxima.size(); ++i) {
            const MaximaPoint& p = cand.maxima[i];
            bool is_eye = false;
            for (int e = 0; e < 2; ++e) {
                const int dist = std::max(std::abs(p.row - eye_sub[e][0]),
                                          std::abs(p.col - eye_sub[e][1]));
                if (dist <= cfg.label_radius) {
                    is_eye = true;
                    eye_hit[e] = true;
                }
            }
            TrainingSample sample;
            sample.input = cand.patches[i].values;
            sample.target = is_eye ? kEyeTarget : kNonEyeTarget;
            set.samples.push_back(sample);
            (is_eye ? counts.eye_samples : counts.non_eye_samples)++;
        }
        counts.missed_eyes = (eye_hit[0] ? 0 : 1) + (eye_hit[1] ? 0 : 1);
        set.eye_total += counts.eye_samples;
        set.non_eye_total += counts.non_eye_samples;
        set.per_image.push_back(std::move(counts));
    }

    if (cfg.balance && set.eye_total > 0 && set.non_eye_total > set.eye_total) {
        // keep all eye samples and an evenly strided subset of non-eyes
        std::vector<TrainingSample> kept;
        kept.reserve(static_cast<std::size_t>(set.eye_total) * 2);
        const long long keep = set.eye_total, total = set.non_eye_total;
        long long j = 0;
        for (const TrainingSample& s : set.samples) {
            if (s.target == kEyeTarget) {
                kept.push_back(s);
            } else {
                if ((j + 1) * keep / total > j * keep / total) kept.push_back(s);
                ++j;
            }
        }
        set.samples = std::move(kept);
    }
    return set;
}

std::vector<Detection> detect_eyes(const GrayImage& img, const Mlp& net,
                                   const PipelineConfig& cfg) {
    const PipelineCandidates cand = run_pipeline(img, cfg);
    std::vector<Detection> out;
    for (std::size_t i = 0; i < cand.maxima.size(); ++i) {
        const Classification cls = classify(net, cand.patches[i]);
        if (cls.label != EyeLabel::Eye) continue;
        const MappedWindow w = map_to_image(cand.maxima[i], cand.levels, cand.padded_side,
                                            cand.pad_offsets, img.width, img.height);
        if (w.padding_artifact) continue;
        out.push_back(Detection{w.center_row, w.center_col, w.window_side, cls.score, cand.maxima[i]});
    }
    std::sort(out.begin(), out.end(), [](const Detection& a, const Detection& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.source.row != b.source.row) return a.source.row < b.source.row;
        return a.source.col < b.source.col;
    });
    return out;
}

std::vector<std::array<double, kMlpInputs>> collect_eye_patches(
    const std::vector<DatasetImage>& images, const PipelineConfig& cfg) {
    PipelineConfig unbalanced = cfg;
    unbalanced.balance = false;
    const TrainingSet set = build_training_set(images, unbalanced);
    std::vector<std::array<double, kMlpInputs>> out;
    for (const TrainingSample& s : set.samples)
        if (s.target == kEyeTarget) out.push_back(s.input);
    return out;
}

} // namespace eyekit
