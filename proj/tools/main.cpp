#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "eyekit/errors.hpp"
#include "run_config.hpp"

namespace {

using eyekit::cli::RawOptions;

void add_common_options(CLI::App* cmd, RawOptions& raw) {
    cmd->add_option("--config", raw.config_path, "key=value config file; flags override file values");
    cmd->add_option("--wavelet", raw.wavelet, "wavelet kind: haar or cdf22 (default haar)");
    cmd->add_option("--lowband", raw.lowband, "side of the lowest-frequency subband (default 32)");
    cmd->add_option("--threshold-ratio", raw.threshold_ratio,
                    "maxima threshold as a fraction of the band max magnitude (default 0.2)");
    cmd->add_option("--label-radius", raw.label_radius,
                    "Chebyshev radius in subband cells for eye labels (default 1)");
    cmd->add_option("--normalize-patches", raw.normalize_patches,
                    "divide patches by the band max magnitude (default true)");
    cmd->add_option("--balance", raw.balance,
                    "subsample non-eye training samples to the eye count (default false)");
    cmd->add_option("--mse-goal", raw.mse_goal, "training MSE goal (default 1e-3)");
    cmd->add_option("--max-epochs", raw.max_epochs, "maximum training epochs (default 1000)");
    cmd->add_option("--min-gradient", raw.min_gradient, "gradient-norm stop (default 1e-6)");
    cmd->add_option("--initial-step", raw.initial_step, "line-search initial step (default 0.5)");
    cmd->add_option("--armijo-c1", raw.armijo_c1, "sufficient-decrease constant (default 1e-4)");
    cmd->add_option("--restart-interval", raw.restart_interval,
                    "steepest-descent restart period (default 74)");
    cmd->add_option("--seed", raw.seed, "random seed (default 0)");
    cmd->add_option("--data", raw.data, "dataset root: <root>/<person>/<image>.pgm + .eyes");
    cmd->add_option("--store", raw.store, "template store file");
    cmd->add_option("--out", raw.out, "output directory (default .)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavelet-maxima eye detection and template-based identification"};
    app.require_subcommand(1);

    RawOptions raw;
    std::string image_path, network_path, overlay_path, person_id;
    double threshold = 0.5;
    int enroll_count = 8, persons = 1, images_per_person = 1, side = 128;

    CLI::App* decompose = app.add_subcommand(
        "decompose", "write per-level subband dumps and the wavelet-maxima list");
    decompose->add_option("image", image_path, "input PGM")->required();
    add_common_options(decompose, raw);

    CLI::App* train = app.add_subcommand(
        "train", "train the eye/non-eye network on an annotated dataset");
    add_common_options(train, raw);

    CLI::App* detect = app.add_subcommand("detect", "locate eyes in an image");
    detect->add_option("image", image_path, "input PGM")->required();
    detect->add_option("--network", network_path, "network file from train")->required();
    detect->add_option("--overlay", overlay_path, "write a PGM with detection windows outlined");
    add_common_options(detect, raw);

    CLI::App* enroll = app.add_subcommand("enroll", "add a person's template to the store");
    enroll->add_option("--person", person_id, "person id (a directory under --data)")->required();
    add_common_options(enroll, raw);

    CLI::App* identify = app.add_subcommand("identify", "match a probe image against the store");
    identify->add_option("image", image_path, "probe PGM")->required();
    identify->add_option("--threshold", threshold, "acceptance threshold (default 0.5)");
    add_common_options(identify, raw);

    CLI::App* eval = app.add_subcommand(
        "eval", "detection rate and identification confusion matrix over a dataset");
    eval->add_option("--enroll-count", enroll_count,
                     "images per person used for training/enrollment (default 8)");
    eval->add_option("--threshold", threshold, "acceptance threshold (default 0.5)");
    add_common_options(eval, raw);

    CLI::App* synth = app.add_subcommand("synth", "generate a deterministic synthetic face corpus");
    synth->add_option("--n", persons, "number of persons")->required();
    synth->add_option("--images", images_per_person, "images per person (default 1)");
    synth->add_option("--side", side, "image side: 64, 128, or 256 (default 128)");
    add_common_options(synth, raw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage errors exit 1; --help exits 0
    }

    try {
        const eyekit::cli::RunConfig cfg = eyekit::cli::build_run_config(raw);
        if (decompose->parsed()) eyekit::cli::cmd_decompose(cfg, image_path);
        else if (train->parsed()) eyekit::cli::cmd_train(cfg);
        else if (detect->parsed()) eyekit::cli::cmd_detect(cfg, image_path, network_path, overlay_path);
        else if (enroll->parsed()) eyekit::cli::cmd_enroll(cfg, person_id);
        else if (identify->parsed()) eyekit::cli::cmd_identify(cfg, image_path, threshold);
        else if (eval->parsed()) eyekit::cli::cmd_eval(cfg, enroll_count, threshold);
        else if (synth->parsed()) eyekit::cli::cmd_synth(cfg, persons, images_per_person, side);
        return 0;
    } catch (const eyekit::cli::UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const eyekit::NumericError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
