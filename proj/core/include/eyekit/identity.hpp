#ifndef EYEKIT_IDENTITY_HPP
#define EYEKIT_IDENTITY_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eyekit/detector.hpp"
#include "eyekit/image.hpp"
#include "eyekit/mlp.hpp"

namespace eyekit {

/// Pipeline settings a template is bound to. Probes are only ever scored
/// under the exact configuration the template was enrolled with.
struct ConfigFingerprint {
    WaveletKind wavelet = WaveletKind::Haar;
    int target_lowband = 32;
    bool normalize_patches = true;

    bool operator==(const ConfigFingerprint&) const = default;
};

ConfigFingerprint fingerprint_of(const PipelineConfig& cfg);

/// PipelineConfig matching a fingerprint, defaults for the remaining knobs.
PipelineConfig pipeline_from_fingerprint(const ConfigFingerprint& fp);

struct TemplateMetadata {
    int image_count = 0;
    double final_mse = 0.0;
};

/// A person's stored network: the flat 74-value parameter vector in mlp
/// ordering plus the fingerprint it must be replayed under.
struct Template {
    std::string person_id;
    std::vector<double> parameters; // kMlpParameterCount values
    ConfigFingerprint fingerprint;
    TemplateMetadata metadata;
};

struct MatchResult {
    std::string person_id;
    double match_score = 0.0; // in [0, 1]
    bool accepted = false;    // match_score >= the threshold in force
};

struct TemplateStore {
    std::vector<Template> templates; // person_id unique
};

/// Trains a fresh network for one person: positives are the person's
/// eye-labeled patches; negatives are the person's non-eye maxima plus
/// negative_patches (typically other persons' eye patches). Fails with
/// DataError when no positives exist or the trained network fits poorly
/// (final MSE > 0.25); NumericError propagates from training.
Template enroll(const std::string& person_id,
                const std::vector<DatasetImage>& person_images,
                std::span<const std::array<double, kMlpInputs>> negative_patches,
                const PipelineConfig& pipeline_cfg,
                const TrainingConfig& train_cfg);

/// Runs the probe through the pipeline under the template's fingerprint and
/// scores it: (accepted candidates capped at 2, halved) times the mean
/// (output[1] - output[0] + 1)/2 over all accepted candidates; 0 when no
/// candidate is accepted. A candidate is accepted when it classifies Eye with
/// positive score. When cfg is given, its fingerprint fields must equal the
/// template's (DataError otherwise) - a probe is never silently rescored
/// under a different configuration.
double match_score(const Template& tpl, const GrayImage& probe,
                   const std::optional<PipelineConfig>& cfg = std::nullopt);

/// Argmax of match_score over the store; ties broken by lexicographic
/// person_id; std::nullopt on an empty store.
std::optional<MatchResult> identify(const TemplateStore& store, const GrayImage& probe,
                                    double threshold = 0.5,
                                    const std::optional<PipelineConfig>& cfg = std::nullopt);

/// Versioned JSON document. Parameters are written as decimal strings with
/// round-trip precision, so load(save(store)) reproduces every score
/// bit-exactly.
std::string store_save(const TemplateStore& store);

/// Throws ParseError on malformed JSON, DataError on unknown format_version,
/// duplicate person_id, or a parameter count other than 74.
TemplateStore store_load(std::string_view text);

} // namespace eyekit

#endif
