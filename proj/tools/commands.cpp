#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "eyekit/errors.hpp"
#include "eyekit/identity.hpp"
#include "eyekit/rng.hpp"
#include "eyekit/synthetic.hpp"
#include "harness.hpp"

namespace fs = std::filesystem;

namespace eyekit::cli {

namespace {

constexpr int kNetworkFormatVersion = 1;

std::string format_exact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw DataError("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_pgm_atomic(const fs::path& path, const GrayImage& img) {
    const std::vector<unsigned char> bytes = save_pgm(img);
    write_file_atomic(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

struct NetworkFile {
    Mlp net;
    ConfigFingerprint fingerprint;
};

void save_network(const fs::path& path, const Mlp& net, const ConfigFingerprint& fp,
                  const TrainingReport& report) {
    nlohmann::json doc;
    doc["format_version"] = kNetworkFormatVersion;
    doc["fingerprint"] = {
        {"wavelet", to_string(fp.wavelet)},
        {"lowband", fp.target_lowband},
        {"normalize_patches", fp.normalize_patches},
    };
    nlohmann::json params = nlohmann::json::array();
    for (double p : flatten(net)) params.push_back(format_exact(p));
    doc["parameters"] = std::move(params);
    doc["stop_reason"] = to_string(report.stop_reason);
    doc["final_mse"] = format_exact(report.records.back().value);
    write_file_atomic(path, doc.dump(2) + "\n");
}

NetworkFile load_network(const fs::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    try {
        if (doc.at("format_version").get<int>() != kNetworkFormatVersion)
            throw DataError(path.string() + ": unknown format_version");
        NetworkFile nf;
        const nlohmann::json& fp = doc.at("fingerprint");
        nf.fingerprint.wavelet = wavelet_kind_from_string(fp.at("wavelet").get<std::string>());
        nf.fingerprint.target_lowband = fp.at("lowband").get<int>();
        nf.fingerprint.normalize_patches = fp.at("normalize_patches").get<bool>();
        const nlohmann::json& params = doc.at("parameters");
        if (!params.is_array() || params.size() != kMlpParameterCount)
            throw DataError(path.string() + ": wrong parameter count");
        std::vector<double> values;
        values.reserve(kMlpParameterCount);
        for (const nlohmann::json& p : params) {
            const std::string s = p.get<std::string>();
            char* end = nullptr;
            const double v = std::strtod(s.c_str(), &end);
            if (end != s.c_str() + s.size() || !std::isfinite(v))
                throw DataError(path.string() + ": malformed parameter \"" + s + "\"");
            values.push_back(v);
        }
        nf.net = unflatten(values);
        return nf;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

/// Pinned fingerprint flags must agree with a stored fingerprint; unset ones
/// adopt it.
void check_pinned(const RunConfig& cfg, const ConfigFingerprint& fp, const std::string& what) {
    if (cfg.wavelet_pinned && cfg.pipeline.wavelet != fp.wavelet)
        throw DataError(what + " used wavelet " + to_string(fp.wavelet) +
                        ", conflicting with the requested " + to_string(cfg.pipeline.wavelet));
    if (cfg.lowband_pinned && cfg.pipeline.target_lowband != fp.target_lowband)
        throw DataError(what + " used lowband " + std::to_string(fp.target_lowband) +
                        ", conflicting with the requested " + std::to_string(cfg.pipeline.target_lowband));
    if (cfg.normalize_pinned && cfg.pipeline.normalize_patches != fp.normalize_patches)
        throw DataError(what + " disagrees with the requested patch normalization");
}

PipelineConfig pipeline_under(const RunConfig& cfg, const ConfigFingerprint& fp) {
    PipelineConfig p = cfg.pipeline;
    p.wavelet = fp.wavelet;
    p.target_lowband = fp.target_lowband;
    p.normalize_patches = fp.normalize_patches;
    return p;
}

std::vector<DatasetImage> scan_required(const RunConfig& cfg) {
    if (cfg.data_root.empty()) throw UsageError("--data is required");
    std::vector<DatasetImage> images = scan_dataset(cfg.data_root);
    if (images.empty()) throw DataError("no images found under " + cfg.data_root);
    return images;
}

void ensure_out_dir(const RunConfig& cfg) {
    if (!cfg.out_dir.empty()) fs::create_directories(cfg.out_dir);
}

std::string format_rate(int hits, int total) {
    char buf[64];
    if (total == 0) {
        std::snprintf(buf, sizeof buf, "n/a (0/0)");
    } else {
        std::snprintf(buf, sizeof buf, "%.4f (%d/%d)", static_cast<double>(hits) / total, hits, total);
    }
    return buf;
}

} // namespace

void cmd_decompose(const RunConfig& cfg, const std::string& image_path) {
    const GrayImage img = load_pgm_file(image_path);
    const GrayImage padded = pad_to_dyadic(img, cfg.pipeline.target_lowband);
    const WaveletPyramid pyr = decompose(padded, cfg.pipeline.wavelet, cfg.pipeline.target_lowband);

    ensure_out_dir(cfg);
    const std::string stem = fs::path(image_path).stem().string();
    auto band_path = [&](int level, const char* band) {
        return fs::path(cfg.out_dir) / (stem + "_l" + std::to_string(level) + "_" + band + ".pgm");
    };

    for (int level = 1; level <= pyr.levels; ++level) {
        const PyramidLevel& pl = pyr.detail[static_cast<std::size_t>(level - 1)];
        write_pgm_atomic(band_path(level, "lh"), subband_as_image(pl.lh.data));
        write_pgm_atomic(band_path(level, "hl"), subband_as_image(pl.hl.data));
        write_pgm_atomic(band_path(level, "hh"), subband_as_image(pl.hh.data));
    }
    write_pgm_atomic(band_path(pyr.levels, "ll"), subband_as_image(pyr.low.data));

    const std::vector<MaximaPoint> maxima =
        detect_maxima(pyr.detail.back().lh, cfg.pipeline.threshold_ratio);
    std::string text;
    for (const MaximaPoint& p : maxima)
        text += std::to_string(p.row) + " " + std::to_string(p.col) + " " + format_exact(p.magnitude) + "\n";
    const fs::path maxima_path = fs::path(cfg.out_dir) / (stem + "_maxima.txt");
    write_file_atomic(maxima_path, text);

    std::printf("levels %d maxima %zu\n", pyr.levels, maxima.size());
}

void cmd_train(const RunConfig& cfg) {
    const std::vector<DatasetImage> images = scan_required(cfg);
    const TrainingSet set = build_training_set(images, cfg.pipeline);
    if (set.samples.empty()) throw DataError("no samples");

    const Mlp initial = init_mlp(cfg.training.seed);
    const auto [net, report] = train(initial, set.samples, cfg.training);
    for (const std::string& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

    ensure_out_dir(cfg);
    save_network(fs::path(cfg.out_dir) / "network.json", net, fingerprint_of(cfg.pipeline), report);
    write_file_atomic(fs::path(cfg.out_dir) / "training_report.txt", report_to_text(report));

    const EpochRecord& last = report.records.back();
    std::printf("samples %zu (eye %d, non-eye %d)\n", set.samples.size(), set.eye_total, set.non_eye_total);
    std::printf("epochs %d stop %s mse %s gradient %s\n", last.epoch,
                to_string(report.stop_reason).c_str(), format_exact(last.value).c_str(),
                format_exact(last.gradient_norm).c_str());
}

void cmd_detect(const RunConfig& cfg, const std::string& image_path,
                const std::string& network_path, const std::string& overlay_path) {
    const NetworkFile nf = load_network(network_path);
    check_pinned(cfg, nf.fingerprint, "network " + network_path);
    const PipelineConfig pipeline = pipeline_under(cfg, nf.fingerprint);

    const GrayImage img = load_pgm_file(image_path);
    const std::vector<Detection> detections = detect_eyes(img, nf.net, pipeline);

    for (const Detection& d : detections)
        std::printf("%s %s %d %s\n", format_exact(d.center_row).c_str(),
                    format_exact(d.center_col).c_str(), d.window_side,
                    format_exact(d.score).c_str());

    if (!overlay_path.empty()) {
        GrayImage overlay = img;
        for (const Detection& d : detections) {
            const int half = d.window_side / 2;
            const int r0 = std::clamp(static_cast<int>(std::llround(d.center_row - half)), 0, img.height - 1);
            const int r1 = std::clamp(static_cast<int>(std::llround(d.center_row + half)) - 1, 0, img.height - 1);
            const int c0 = std::clamp(static_cast<int>(std::llround(d.center_col - half)), 0, img.width - 1);
            const int c1 = std::clamp(static_cast<int>(std::llround(d.center_col + half)) - 1, 0, img.width - 1);
            for (int c = c0; c <= c1; ++c) {
                overlay.at(r0, c) = 1.0;
                overlay.at(r1, c) = 1.0;
            }
            for (int r = r0; r <= r1; ++r) {
                overlay.at(r, c0) = 1.0;
                overlay.at(r, c1) = 1.0;
            }
        }
        write_pgm_atomic(overlay_path, overlay);
    }
}

void cmd_enroll(const RunConfig& cfg, const std::string& person_id) {
    if (cfg.store_path.empty()) throw UsageError("--store is required");
    const std::vector<DatasetImage> all = scan_required(cfg);

    std::vector<DatasetImage> person_images, other_images;
    for (const DatasetImage& di : all)
        (di.person_id == person_id ? person_images : other_images).push_back(di);
    if (person_images.empty())
        throw DataError("person \"" + person_id + "\" not found under " + cfg.data_root);

    TemplateStore store;
    if (fs::exists(cfg.store_path)) store = store_load(read_file(cfg.store_path));
    for (const Template& t : store.templates)
        if (t.person_id == person_id)
            throw DataError("person \"" + person_id + "\" already enrolled");

    const auto negatives = collect_eye_patches(other_images, cfg.pipeline);
    TrainingConfig tcfg = cfg.training;
    tcfg.seed = mix_seed(cfg.seed, fnv1a(person_id));
    const Template tpl = enroll(person_id, person_images, negatives, cfg.pipeline, tcfg);

    store.templates.push_back(tpl);
    write_file_atomic(cfg.store_path, store_save(store));
    std::printf("enrolled %s images %d mse %s\n", person_id.c_str(), tpl.metadata.image_count,
                format_exact(tpl.metadata.final_mse).c_str());
}

void cmd_identify(const RunConfig& cfg, const std::string& image_path, double threshold) {
    if (cfg.store_path.empty()) throw UsageError("--store is required");
    const TemplateStore store = store_load(read_file(cfg.store_path));
    for (const Template& t : store.templates)
        check_pinned(cfg, t.fingerprint, "template \"" + t.person_id + "\"");

    const GrayImage probe = load_pgm_file(image_path);
    const std::optional<MatchResult> result = identify(store, probe, threshold);
    if (!result) {
        std::printf("NOMATCH\n");
    } else {
        std::printf("%s %s %d\n", result->person_id.c_str(),
                    format_exact(result->match_score).c_str(), result->accepted ? 1 : 0);
    }
}

void cmd_eval(const RunConfig& cfg, int enroll_count, double threshold) {
    if (enroll_count < 1) throw UsageError("--enroll-count must be >= 1");
    const std::vector<DatasetImage> all = scan_required(cfg);

    // per person: the first enroll_count images (paths sorted) enroll/train,
    // the rest probe
    std::map<std::string, std::vector<DatasetImage>> by_person;
    for (const DatasetImage& di : all) by_person[di.person_id].push_back(di);

    std::vector<DatasetImage> gallery, probes;
    for (const auto& [person, list] : by_person) {
        for (std::size_t i = 0; i < list.size(); ++i)
            (static_cast<int>(i) < enroll_count ? gallery : probes).push_back(list[i]);
    }

    // shared detector trained on the gallery
    const TrainingSet set = build_training_set(gallery, cfg.pipeline);
    if (set.samples.empty()) throw DataError("no samples");
    const auto [net, report] = train(init_mlp(cfg.training.seed), set.samples, cfg.training);
    (void)report;

    auto detection_pass = [&](const DatasetImage& di) {
        const GrayImage img = load_pgm_file(di.image_path);
        const EyeAnnotation gt = parse_annotation(read_file(di.annotation_path));
        return both_eyes_localized(localize_eyes(detect_eyes(img, net, cfg.pipeline)), gt);
    };
    int det_train_hits = 0, det_test_hits = 0;
    for (const DatasetImage& di : gallery) det_train_hits += detection_pass(di) ? 1 : 0;
    for (const DatasetImage& di : probes) det_test_hits += detection_pass(di) ? 1 : 0;

    // one template per person, negatives drawn from the other persons' eyes
    TemplateStore store;
    for (const auto& [person, list] : by_person) {
        std::vector<DatasetImage> own(list.begin(),
                                      list.begin() + std::min<std::size_t>(enroll_count, list.size()));
        std::vector<DatasetImage> others;
        for (const DatasetImage& di : gallery)
            if (di.person_id != person) others.push_back(di);
        TrainingConfig tcfg = cfg.training;
        tcfg.seed = mix_seed(cfg.seed, fnv1a(person));
        store.templates.push_back(
            enroll(person, own, collect_eye_patches(others, cfg.pipeline), cfg.pipeline, tcfg));
    }

    int id_train_hits = 0, id_test_hits = 0;
    std::string csv = "probe_person,matched_person,score,accepted\n";
    for (const DatasetImage& di : gallery) {
        const auto r = identify(store, load_pgm_file(di.image_path), threshold);
        if (r && r->person_id == di.person_id) ++id_train_hits;
    }
    for (const DatasetImage& di : probes) {
        const auto r = identify(store, load_pgm_file(di.image_path), threshold);
        if (r && r->person_id == di.person_id) ++id_test_hits;
        csv += di.person_id + "," + (r ? r->person_id : "") + "," +
               (r ? format_exact(r->match_score) : "0") + "," +
               ((r && r->accepted) ? "1" : "0") + "\n";
    }

    std::printf("detection_rate_train %s\n", format_rate(det_train_hits, static_cast<int>(gallery.size())).c_str());
    std::printf("detection_rate_test %s\n", format_rate(det_test_hits, static_cast<int>(probes.size())).c_str());
    std::printf("identification_rank1_train %s\n", format_rate(id_train_hits, static_cast<int>(gallery.size())).c_str());
    std::printf("identification_rank1_test %s\n", format_rate(id_test_hits, static_cast<int>(probes.size())).c_str());
    std::fputs(csv.c_str(), stdout);

    if (!cfg.out_dir.empty() && cfg.out_dir != ".") {
        ensure_out_dir(cfg);
        write_file_atomic(fs::path(cfg.out_dir) / "confusion.csv", csv);
    }
}

void cmd_synth(const RunConfig& cfg, int persons, int images_per_person, int side) {
    if (persons < 1) throw UsageError("--n must be >= 1");
    if (images_per_person < 1) throw UsageError("--images must be >= 1");
    if (side != 64 && side != 128 && side != 256) throw UsageError("--side must be 64, 128, or 256");

    ensure_out_dir(cfg);
    char name[32];
    for (int p = 0; p < persons; ++p) {
        const std::uint64_t person_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(p));
        const FaceTraits traits = sample_face_traits(person_seed);
        std::snprintf(name, sizeof name, "p%03d", p);
        const fs::path dir = fs::path(cfg.out_dir) / name;
        fs::create_directories(dir);
        for (int i = 0; i < images_per_person; ++i) {
            const std::uint64_t image_seed = mix_seed(person_seed, 1000 + static_cast<std::uint64_t>(i));
            const SyntheticFace face = render_face(traits, image_seed, side);
            std::snprintf(name, sizeof name, "i%02d", i);
            write_pgm_atomic(dir / (std::string(name) + ".pgm"), face.image);
            const std::string ann = std::to_string(face.eyes.left_row) + " " +
                                    std::to_string(face.eyes.left_col) + " " +
                                    std::to_string(face.eyes.right_row) + " " +
                                    std::to_string(face.eyes.right_col) + "\n";
            write_file_atomic(dir / (std::string(name) + ".eyes"), ann);
        }
    }
    std::printf("generated %d persons x %d images at %dx%d\n", persons, images_per_person, side, side);
}

} // namespace eyekit::cli
