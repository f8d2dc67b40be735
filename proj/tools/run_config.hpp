#ifndef EYEKIT_TOOLS_RUN_CONFIG_HPP
#define EYEKIT_TOOLS_RUN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "eyekit/detector.hpp"
#include "eyekit/mlp.hpp"

namespace eyekit::cli {

/// Bad flag values or missing required flags; exits with code 1.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Option values as given on the command line, before merging. Empty optionals
/// fall back to the config file and then to built-in defaults.
struct RawOptions {
    std::optional<std::string> config_path;
    std::optional<std::string> wavelet;
    std::optional<int> lowband;
    std::optional<double> threshold_ratio;
    std::optional<int> label_radius;
    std::optional<bool> normalize_patches;
    std::optional<bool> balance;
    std::optional<double> mse_goal;
    std::optional<int> max_epochs;
    std::optional<double> min_gradient;
    std::optional<double> initial_step;
    std::optional<double> armijo_c1;
    std::optional<int> restart_interval;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> data;
    std::optional<std::string> store;
    std::optional<std::string> out;
};

/// Fully merged command configuration: defaults, then config file, then flags.
struct RunConfig {
    PipelineConfig pipeline;
    TrainingConfig training;
    std::uint64_t seed = 0;
    std::string data_root;
    std::string store_path;
    std::string out_dir = ".";

    // whether the user pinned a fingerprint field (flag or config file);
    // pinned fields are checked against stored fingerprints instead of
    // silently rescoring under a different configuration
    bool wavelet_pinned = false;
    bool lowband_pinned = false;
    bool normalize_pinned = false;
};

/// Merges built-in defaults, the optional key=value config file, and
/// command-line values (strongest). Unknown config keys are rejected with
/// DataError; domain violations raise UsageError.
RunConfig build_run_config(const RawOptions& raw);

} // namespace eyekit::cli

#endif
