#include "eyekit/identity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

#include <json.hpp>

#include "eyekit/errors.hpp"

namespace eyekit {

namespace {

constexpr int kStoreFormatVersion = 1;

std::string format_exact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_exact(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + s.size() || s.empty())
        throw ParseError("store: malformed decimal \"" + s + "\"");
    if (!std::isfinite(v)) throw DataError("store: non-finite parameter \"" + s + "\"");
    return v;
}

PipelineConfig resolve_pipeline(const Template& tpl, const std::optional<PipelineConfig>& cfg) {
    if (!cfg) return pipeline_from_fingerprint(tpl.fingerprint);
    if (fingerprint_of(*cfg) != tpl.fingerprint)
        throw DataError("fingerprint mismatch for template \"" + tpl.person_id +
                        "\": probe configuration differs from enrollment");
    return *cfg;
}

} // namespace

ConfigFingerprint fingerprint_of(const PipelineConfig& cfg) {
    return ConfigFingerprint{cfg.wavelet, cfg.target_lowband, cfg.normalize_patches};
}

PipelineConfig pipeline_from_fingerprint(const ConfigFingerprint& fp) {
    PipelineConfig cfg;
    cfg.wavelet = fp.wavelet;
    cfg.target_lowband = fp.target_lowband;
    cfg.normalize_patches = fp.normalize_patches;
    return cfg;
}

Template enroll(const std::string& person_id,
                const std::vector<DatasetImage>& person_images,
                std::span<const std::array<double, kMlpInputs>> negative_patches,
                const PipelineConfig& pipeline_cfg,
                const TrainingConfig& train_cfg) {
    if (person_id.empty()) throw DataError("enroll: empty person_id");
    if (person_images.empty()) throw DataError("enroll: no images for \"" + person_id + "\"");

    TrainingSet set = build_training_set(person_images, pipeline_cfg);
    if (set.eye_total == 0)
        throw DataError("enrollment failed for \"" + person_id + "\": images produced no eye samples");

    std::vector<TrainingSample> samples = std::move(set.samples);
    for (const auto& patch : negative_patches) {
        TrainingSample s;
        s.input = patch;
        s.target = kNonEyeTarget;
        samples.push_back(s);
    }

    const Mlp initial = init_mlp(train_cfg.seed);
    auto [net, report] = train(initial, samples, train_cfg);
    const double final_mse = report.records.back().value;
    if (final_mse > 0.25)
        throw DataError("enrollment failed for \"" + person_id + "\": training stopped (" +
                        to_string(report.stop_reason) + ") with MSE " + format_exact(final_mse));

    Template tpl;
    tpl.person_id = person_id;
    tpl.parameters = flatten(net);
    tpl.fingerprint = fingerprint_of(pipeline_cfg);
    tpl.metadata = TemplateMetadata{static_cast<int>(person_images.size()), final_mse};
    return tpl;
}

double match_score(const Template& tpl, const GrayImage& probe,
                   const std::optional<PipelineConfig>& cfg) {
    const PipelineConfig run_cfg = resolve_pipeline(tpl, cfg);
    const Mlp net = unflatten(tpl.parameters);
    const PipelineCandidates cand = run_pipeline(probe, run_cfg);

    int accepted = 0;
    double margin_sum = 0.0;
    for (const Patch9& patch : cand.patches) {
        const Classification cls = classify(net, patch);
        if (cls.label == EyeLabel::Eye && cls.score > 0.0) {
            ++accepted;
            margin_sum += (cls.score + 1.0) / 2.0;
        }
    }
    if (accepted == 0) return 0.0;
    const double count_factor = std::min(accepted, 2) / 2.0;
    return count_factor * (margin_sum / accepted);
}

std::optional<MatchResult> identify(const TemplateStore& store, const GrayImage& probe,
                                    double threshold,
                                    const std::optional<PipelineConfig>& cfg) {
    if (store.templates.empty()) return std::nullopt;

    std::vector<const Template*> order;
    order.reserve(store.templates.size());
    for (const Template& t : store.templates) order.push_back(&t);
    std::sort(order.begin(), order.end(),
              [](const Template* a, const Template* b) { return a->person_id < b->person_id; });

    const Template* best = nullptr;
    double best_score = -1.0;
    for (const Template* t : order) {
        const double score = match_score(*t, probe, cfg);
        if (score > best_score) { // strict: ties keep the lexicographically first
            best_score = score;
            best = t;
        }
    }
    return MatchResult{best->person_id, best_score, best_score >= threshold};
}

std::string store_save(const TemplateStore& store) {
    nlohmann::json doc;
    doc["format_version"] = kStoreFormatVersion;
    nlohmann::json templates = nlohmann::json::array();

    std::vector<const Template*> order;
    for (const Template& t : store.templates) order.push_back(&t);
    std::sort(order.begin(), order.end(),
              [](const Template* a, const Template* b) { return a->person_id < b->person_id; });

    for (const Template* t : order) {
        nlohmann::json jt;
        jt["person_id"] = t->person_id;
        jt["fingerprint"] = {
            {"wavelet", to_string(t->fingerprint.wavelet)},
            {"lowband", t->fingerprint.target_lowband},
            {"normalize_patches", t->fingerprint.normalize_patches},
        };
        nlohmann::json params = nlohmann::json::array();
        for (double p : t->parameters) params.push_back(format_exact(p));
        jt["parameters"] = std::move(params);
        jt["metadata"] = {
            {"image_count", t->metadata.image_count},
            {"final_mse", format_exact(t->metadata.final_mse)},
        };
        templates.push_back(std::move(jt));
    }
    doc["templates"] = std::move(templates);
    return doc.dump(2) + "\n";
}

TemplateStore store_load(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("store: ") + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("format_version") || !doc["format_version"].is_number_integer())
            throw DataError("store: missing format_version");
        if (doc["format_version"].get<int>() != kStoreFormatVersion)
            throw DataError("store: unknown format_version " + doc["format_version"].dump());
        if (!doc.contains("templates") || !doc["templates"].is_array())
            throw DataError("store: missing templates array");

        TemplateStore store;
        std::set<std::string> seen;
        for (const nlohmann::json& jt : doc["templates"]) {
            Template t;
            t.person_id = jt.at("person_id").get<std::string>();
            if (t.person_id.empty()) throw DataError("store: empty person_id");
            if (!seen.insert(t.person_id).second)
                throw DataError("store: duplicate person_id \"" + t.person_id + "\"");

            const nlohmann::json& fp = jt.at("fingerprint");
            t.fingerprint.wavelet = wavelet_kind_from_string(fp.at("wavelet").get<std::string>());
            t.fingerprint.target_lowband = fp.at("lowband").get<int>();
            t.fingerprint.normalize_patches = fp.at("normalize_patches").get<bool>();
            if (t.fingerprint.target_lowband < 3)
                throw DataError("store: lowband out of range for \"" + t.person_id + "\"");

            const nlohmann::json& params = jt.at("parameters");
            if (!params.is_array() || params.size() != kMlpParameterCount)
                throw DataError("store: template \"" + t.person_id + "\" has " +
                                std::to_string(params.size()) + " parameters, expected " +
                                std::to_string(kMlpParameterCount));
            t.parameters.reserve(kMlpParameterCount);
            for (const nlohmann::json& p : params)
                t.parameters.push_back(parse_exact(p.get<std::string>()));

            const nlohmann::json& meta = jt.at("metadata");
            t.metadata.image_count = meta.at("image_count").get<int>();
            t.metadata.final_mse = parse_exact(meta.at("final_mse").get<std::string>());
            store.templates.push_back(std::move(t));
        }
        return store;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("store: ") + e.what());
    }
}

} // namespace eyekit
