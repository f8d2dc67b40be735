#ifndef EYEKIT_TOOLS_COMMANDS_HPP
#define EYEKIT_TOOLS_COMMANDS_HPP

#include <string>

#include "run_config.hpp"

namespace eyekit::cli {

// Subcommand bodies. Each throws on failure; main() maps exception types to
// exit codes (1 usage, 2 data, 3 numeric). All file outputs are written to a
// temp file and renamed, so interrupted runs never leave partial files.

void cmd_decompose(const RunConfig& cfg, const std::string& image_path);
void cmd_train(const RunConfig& cfg);
void cmd_detect(const RunConfig& cfg, const std::string& image_path,
                const std::string& network_path, const std::string& overlay_path);
void cmd_enroll(const RunConfig& cfg, const std::string& person_id);
void cmd_identify(const RunConfig& cfg, const std::string& image_path, double threshold);
void cmd_eval(const RunConfig& cfg, int enroll_count, double threshold);
void cmd_synth(const RunConfig& cfg, int persons, int images_per_person, int side);

} // namespace eyekit::cli

#endif
