#ifndef EYEKIT_MLP_HPP
#define EYEKIT_MLP_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eyekit/maxima.hpp"
#include "eyekit/optimize.hpp"

namespace eyekit {

inline constexpr int kMlpInputs = 9;
inline constexpr int kMlpHidden = 6;
inline constexpr int kMlpOutputs = 2;
inline constexpr int kMlpParameterCount =
    kMlpHidden * kMlpInputs + kMlpHidden + kMlpOutputs * kMlpHidden + kMlpOutputs; // 74

/// The fixed 9-6-2 network, logistic sigmoid on both layers.
///
/// Flat parameter order (used by flatten/unflatten, gradients, and template
/// serialization): w1 row-major, b1, w2 row-major, b2.
struct Mlp {
    std::array<double, kMlpHidden * kMlpInputs> w1{};  // w1[h*9 + i]
    std::array<double, kMlpHidden> b1{};
    std::array<double, kMlpOutputs * kMlpHidden> w2{}; // w2[o*6 + h]
    std::array<double, kMlpOutputs> b2{};
};

/// Output coding: (0,1) marks an eye, (1,0) a non-eye.
inline constexpr std::array<double, 2> kEyeTarget{0.0, 1.0};
inline constexpr std::array<double, 2> kNonEyeTarget{1.0, 0.0};

struct TrainingSample {
    std::array<double, kMlpInputs> input{};
    std::array<double, kMlpOutputs> target{};
};

struct TrainingConfig {
    double mse_goal = 1e-3;
    int max_epochs = 1000;
    double min_gradient = 1e-6;
    double initial_step = 0.5; // the paper-quoted "learning rate" seeds the line search
    double armijo_c1 = 1e-4;
    int restart_interval = kMlpParameterCount;
    std::uint64_t seed = 0;
    bool normalize_patches = true; // recorded here so the paper-literal raw mode stays reproducible
};

struct TrainingReport {
    std::vector<EpochRecord> records; // consecutive epochs from 0: (epoch, mse, ||g||)
    StopReason stop_reason = StopReason::MaxEpochs;
    std::vector<std::string> warnings;
};

/// Weights uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)] per layer, biases
/// zero. Bit-identical for a given seed.
Mlp init_mlp(std::uint64_t seed);

struct ForwardResult {
    std::array<double, kMlpOutputs> output{};
    std::array<double, kMlpHidden> hidden{};
};

ForwardResult forward(const Mlp& net, std::span<const double, kMlpInputs> input);

/// (1 / (N * 2)) * sum over samples and output nodes of (output - target)^2.
double mse(const Mlp& net, std::span<const TrainingSample> samples);

/// Exact analytic gradient of mse(), flattened in the documented order.
std::vector<double> gradient(const Mlp& net, std::span<const TrainingSample> samples);

std::vector<double> flatten(const Mlp& net);
Mlp unflatten(std::span<const double> params); // throws DataError on wrong count

/// Fletcher-Reeves conjugate-gradient training on the full batch; one epoch
/// is one CG iteration. Stops on mse_goal, min_gradient, max_epochs, or a
/// failed line search.
std::pair<Mlp, TrainingReport> train(const Mlp& net,
                                     std::span<const TrainingSample> samples,
                                     const TrainingConfig& cfg);

enum class EyeLabel { Eye, NonEye };

struct Classification {
    EyeLabel label = EyeLabel::NonEye;
    double score = 0.0; // output[1] - output[0], in (-1, 1)
};

/// Eye iff output[1] > output[0]; an exact tie is NonEye.
Classification classify(const Mlp& net, const Patch9& patch);

/// "epoch<TAB>mse<TAB>gradient_norm" per record.
std::string report_to_text(const TrainingReport& report);

} // namespace eyekit

#endif
