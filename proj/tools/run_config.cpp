#include "run_config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "eyekit/errors.hpp"

namespace eyekit::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file " + path);
    std::map<std::string, std::string> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw DataError(path + ":" + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw DataError(path + ":" + std::to_string(line_no) + ": empty key");
        if (!entries.emplace(key, value).second)
            throw DataError(path + ":" + std::to_string(line_no) + ": duplicate key \"" + key + "\"");
    }
    return entries;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw DataError("config key \"" + key + "\": expected true/false, got \"" + value + "\"");
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T v{};
    if constexpr (std::is_floating_point_v<T>) {
        std::istringstream ss(value);
        ss >> v;
        if (ss.fail() || !ss.eof())
            throw DataError("config key \"" + key + "\": expected number, got \"" + value + "\"");
    } else {
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || ptr != value.data() + value.size())
            throw DataError("config key \"" + key + "\": expected integer, got \"" + value + "\"");
    }
    return v;
}

void validate(const RunConfig& cfg) {
    auto fail = [](const std::string& what) { throw UsageError(what); };
    if (cfg.pipeline.target_lowband < 3) fail("lowband must be >= 3");
    if (!(cfg.pipeline.threshold_ratio >= 0.0 && cfg.pipeline.threshold_ratio <= 1.0))
        fail("threshold_ratio must be in [0, 1]");
    if (cfg.pipeline.label_radius < 0) fail("label_radius must be >= 0");
    if (!(cfg.training.mse_goal > 0.0)) fail("mse_goal must be positive");
    if (cfg.training.max_epochs < 1) fail("max_epochs must be >= 1");
    if (!(cfg.training.min_gradient > 0.0)) fail("min_gradient must be positive");
    if (!(cfg.training.initial_step > 0.0)) fail("initial_step must be positive");
    if (!(cfg.training.armijo_c1 > 0.0)) fail("armijo_c1 must be positive");
    if (cfg.training.restart_interval < 1) fail("restart_interval must be >= 1");
}

} // namespace

RunConfig build_run_config(const RawOptions& raw) {
    RunConfig cfg;

    if (raw.config_path) {
        auto entries = parse_config_file(*raw.config_path);
        for (const auto& [key, value] : entries) {
            if (key == "wavelet") {
                cfg.pipeline.wavelet = wavelet_kind_from_string(value);
                cfg.wavelet_pinned = true;
            } else if (key == "lowband") {
                cfg.pipeline.target_lowband = parse_number<int>(key, value);
                cfg.lowband_pinned = true;
            } else if (key == "threshold_ratio") {
                cfg.pipeline.threshold_ratio = parse_number<double>(key, value);
            } else if (key == "label_radius") {
                cfg.pipeline.label_radius = parse_number<int>(key, value);
            } else if (key == "normalize_patches") {
                cfg.pipeline.normalize_patches = parse_bool(key, value);
                cfg.normalize_pinned = true;
            } else if (key == "balance") {
                cfg.pipeline.balance = parse_bool(key, value);
            } else if (key == "mse_goal") {
                cfg.training.mse_goal = parse_number<double>(key, value);
            } else if (key == "max_epochs") {
                cfg.training.max_epochs = parse_number<int>(key, value);
            } else if (key == "min_gradient") {
                cfg.training.min_gradient = parse_number<double>(key, value);
            } else if (key == "initial_step") {
                cfg.training.initial_step = parse_number<double>(key, value);
            } else if (key == "armijo_c1") {
                cfg.training.armijo_c1 = parse_number<double>(key, value);
            } else if (key == "restart_interval") {
                cfg.training.restart_interval = parse_number<int>(key, value);
            } else if (key == "seed") {
                cfg.seed = parse_number<std::uint64_t>(key, value);
            } else if (key == "data") {
                cfg.data_root = value;
            } else if (key == "store") {
                cfg.store_path = value;
            } else if (key == "out") {
                cfg.out_dir = value;
            } else {
                throw DataError("config file: unknown key \"" + key + "\"");
            }
        }
    }

    if (raw.wavelet) {
        cfg.pipeline.wavelet = wavelet_kind_from_string(*raw.wavelet);
        cfg.wavelet_pinned = true;
    }
    if (raw.lowband) {
        cfg.pipeline.target_lowband = *raw.lowband;
        cfg.lowband_pinned = true;
    }
    if (raw.threshold_ratio) cfg.pipeline.threshold_ratio = *raw.threshold_ratio;
    if (raw.label_radius) cfg.pipeline.label_radius = *raw.label_radius;
    if (raw.normalize_patches) {
        cfg.pipeline.normalize_patches = *raw.normalize_patches;
        cfg.normalize_pinned = true;
    }
    if (raw.balance) cfg.pipeline.balance = *raw.balance;
    if (raw.mse_goal) cfg.training.mse_goal = *raw.mse_goal;
    if (raw.max_epochs) cfg.training.max_epochs = *raw.max_epochs;
    if (raw.min_gradient) cfg.training.min_gradient = *raw.min_gradient;
    if (raw.initial_step) cfg.training.initial_step = *raw.initial_step;
    if (raw.armijo_c1) cfg.training.armijo_c1 = *raw.armijo_c1;
    if (raw.restart_interval) cfg.training.restart_interval = *raw.restart_interval;
    if (raw.seed) cfg.seed = *raw.seed;
    if (raw.data) cfg.data_root = *raw.data;
    if (raw.store) cfg.store_path = *raw.store;
    if (raw.out) cfg.out_dir = *raw.out;

    cfg.training.seed = cfg.seed;
    cfg.training.normalize_patches = cfg.pipeline.normalize_patches;
    validate(cfg);
    return cfg;
}

} // namespace eyekit::cli
