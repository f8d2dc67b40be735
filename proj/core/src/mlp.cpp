#include "eyekit/mlp.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "eyekit/errors.hpp"
#include "eyekit/rng.hpp"

namespace eyekit {

namespace {

double sigmoid(double t) {
    return 1.0 / (1.0 + std::exp(-t));
}

void require_samples(std::span<const TrainingSample> samples, const char* who) {
    if (samples.empty()) throw DataError(std::string(who) + ": empty sample list");
}

} // namespace

Mlp init_mlp(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Mlp net;
    const double bound1 = 1.0 / std::sqrt(static_cast<double>(kMlpInputs));
    const double bound2 = 1.0 / std::sqrt(static_cast<double>(kMlpHidden));
    for (double& w : net.w1) w = uniform(rng, -bound1, bound1);
    for (double& w : net.w2) w = uniform(rng, -bound2, bound2);
    // biases stay zero
    return net;
}

ForwardResult forward(const Mlp& net, std::span<const double, kMlpInputs> input) {
    ForwardResult r;
    for (int h = 0; h < kMlpHidden; ++h) {
        double z = net.b1[h];
        for (int i = 0; i < kMlpInputs; ++i) z += net.w1[h * kMlpInputs + i] * input[i];
        r.hidden[h] = sigmoid(z);
    }
    for (int o = 0; o < kMlpOutputs; ++o) {
        double z = net.b2[o];
        for (int h = 0; h < kMlpHidden; ++h) z += net.w2[o * kMlpHidden + h] * r.hidden[h];
        r.output[o] = sigmoid(z);
    }
    return r;
}

double mse(const Mlp& net, std::span<const TrainingSample> samples) {
    require_samples(samples, "mse");
    double sum = 0.0;
    for (const TrainingSample& s : samples) {
        const ForwardResult r = forward(net, s.input);
        for (int o = 0; o < kMlpOutputs; ++o) {
            const double e = r.output[o] - s.target[o];
            sum += e * e;
        }
    }
    return sum / (static_cast<double>(samples.size()) * kMlpOutputs);
}

std::vector<double> gradient(const Mlp& net, std::span<const TrainingSample> samples) {
    require_samples(samples, "gradient");
    std::vector<double> grad(kMlpParameterCount, 0.0);
    double* gw1 = grad.data();
    double* gb1 = gw1 + kMlpHidden * kMlpInputs;
    double* gw2 = gb1 + kMlpHidden;
    double* gb2 = gw2 + kMlpOutputs * kMlpHidden;

    const double inv = 1.0 / (static_cast<double>(samples.size()) * kMlpOutputs);
    for (const TrainingSample& s : samples) {
        const ForwardResult r = forward(net, s.input);
        double delta2[kMlpOutputs];
        for (int o = 0; o < kMlpOutputs; ++o) {
            const double y = r.output[o];
            delta2[o] = 2.0 * inv * (y - s.target[o]) * y * (1.0 - y);
        }
        for (int o = 0; o < kMlpOutputs; ++o) {
            for (int h = 0; h < kMlpHidden; ++h) gw2[o * kMlpHidden + h] += delta2[o] * r.hidden[h];
            gb2[o] += delta2[o];
        }
        for (int h = 0; h < kMlpHidden; ++h) {
            double back = 0.0;
            for (int o = 0; o < kMlpOutputs; ++o) back += net.w2[o * kMlpHidden + h] * delta2[o];
            const double delta1 = back * r.hidden[h] * (1.0 - r.hidden[h]);
            for (int i = 0; i < kMlpInputs; ++i) gw1[h * kMlpInputs + i] += delta1 * s.input[i];
            gb1[h] += delta1;
        }
    }
    return grad;
}

std::vector<double> flatten(const Mlp& net) {
    std::vector<double> out;
    out.reserve(kMlpParameterCount);
    out.insert(out.end(), net.w1.begin(), net.w1.end());
    out.insert(out.end(), net.b1.begin(), net.b1.end());
    out.insert(out.end(), net.w2.begin(), net.w2.end());
    out.insert(out.end(), net.b2.begin(), net.b2.end());
    return out;
}

Mlp unflatten(std::span<const double> params) {
    if (params.size() != kMlpParameterCount)
        throw DataError("unflatten: expected " + std::to_string(kMlpParameterCount) +
                        " parameters, got " + std::to_string(params.size()));
    Mlp net;
    std::size_t k = 0;
    for (double& w : net.w1) w = params[k++];
    for (double& b : net.b1) b = params[k++];
    for (double& w : net.w2) w = params[k++];
    for (double& b : net.b2) b = params[k++];
    return net;
}

std::pair<Mlp, TrainingReport> train(const Mlp& net,
                                     std::span<const TrainingSample> samples,
                                     const TrainingConfig& cfg) {
    require_samples(samples, "train");

    TrainingReport report;
    bool has_eye = false, has_non_eye = false;
    for (const TrainingSample& s : samples) {
        if (s.target == kEyeTarget) has_eye = true;
        else if (s.target == kNonEyeTarget) has_non_eye = true;
    }
    if (!has_eye) report.warnings.push_back("training set contains no eye samples");
    if (!has_non_eye) report.warnings.push_back("training set contains no non-eye samples");

    const ValueFn value = [samples](const std::vector<double>& x) {
        return mse(unflatten(x), samples);
    };
    const GradientFn grad = [samples](const std::vector<double>& x) {
        return gradient(unflatten(x), samples);
    };

    FletcherReevesOptions opt;
    opt.value_goal = cfg.mse_goal;
    opt.gradient_tol = cfg.min_gradient;
    opt.max_epochs = cfg.max_epochs;
    opt.initial_step = cfg.initial_step;
    opt.armijo_c1 = cfg.armijo_c1;
    opt.restart_interval = cfg.restart_interval;

    MinimizeResult res = minimize_fletcher_reeves(value, grad, flatten(net), opt);
    report.records = std::move(res.trace);
    report.stop_reason = res.reason;
    return {unflatten(res.x), std::move(report)};
}

Classification classify(const Mlp& net, const Patch9& patch) {
    const ForwardResult r = forward(net, patch.values);
    Classification c;
    c.score = r.output[1] - r.output[0];
    c.label = r.output[1] > r.output[0] ? EyeLabel::Eye : EyeLabel::NonEye;
    return c;
}

std::string report_to_text(const TrainingReport& report) {
    std::string out;
    char line[96];
    for (const EpochRecord& rec : report.records) {
        std::snprintf(line, sizeof line, "%d\t%.17g\t%.17g\n", rec.epoch, rec.value, rec.gradient_norm);
        out += line;
    }
    return out;
}

} // namespace eyekit
