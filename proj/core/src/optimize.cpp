#include "eyekit/optimize.hpp"

#include <cmath>

#include "eyekit/errors.hpp"

namespace eyekit {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::GoalMet: return "GoalMet";
        case StopReason::GradientVanished: return "GradientVanished";
        case StopReason::MaxEpochs: return "MaxEpochs";
        case StopReason::Stalled: return "Stalled";
    }
    return "?";
}

LineSearch backtracking_armijo(ValueFn value, double initial_step, double c1, int max_halvings) {
    return [value = std::move(value), initial_step, c1, max_halvings](
               const std::vector<double>& x, const std::vector<double>& d,
               double fx, const std::vector<double>& g) -> double {
        const double slope = dot(g, d);
        if (!(slope < 0.0)) return 0.0; // not a descent direction
        double step = initial_step;
        std::vector<double> trial(x.size());
        for (int attempt = 0; attempt <= max_halvings; ++attempt, step *= 0.5) {
            for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + step * d[i];
            const double ft = value(trial);
            if (std::isfinite(ft) && ft <= fx + c1 * step * slope) return step;
        }
        return 0.0;
    };
}

MinimizeResult minimize_fletcher_reeves(const ValueFn& value,
                                        const GradientFn& gradient,
                                        std::vector<double> x,
                                        const FletcherReevesOptions& options,
                                        const LineSearch& line_search) {
    const LineSearch ls = line_search
        ? line_search
        : backtracking_armijo(value, options.initial_step, options.armijo_c1, options.max_halvings);

    auto check_finite = [](double f, const std::vector<double>& g, int epoch) {
        if (!std::isfinite(f) || !all_finite(g))
            throw NumericError("non-finite objective or gradient at epoch " + std::to_string(epoch));
    };

    MinimizeResult result;
    double f = value(x);
    std::vector<double> g = gradient(x);
    check_finite(f, g, 0);
    double gg = dot(g, g);

    std::vector<double> d(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) d[i] = -g[i];
    int steps_since_restart = 0;

    for (int epoch = 0;; ++epoch) {
        const double gnorm = std::sqrt(gg);
        result.trace.push_back({epoch, f, gnorm});

        if (f <= options.value_goal) {
            result.reason = StopReason::GoalMet;
            break;
        }
        if (gnorm <= options.gradient_tol) {
            result.reason = StopReason::GradientVanished;
            break;
        }
        if (epoch >= options.max_epochs) {
            result.reason = StopReason::MaxEpochs;
            break;
        }

        if (dot(d, g) >= 0.0) { // conjugacy lost; fall back to steepest descent
            for (std::size_t i = 0; i < g.size(); ++i) d[i] = -g[i];
            steps_since_restart = 0;
        }

        const double step = ls(x, d, f, g);
        if (step <= 0.0) {
            result.reason = StopReason::Stalled;
            break;
        }
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += step * d[i];

        f = value(x);
        std::vector<double> g_next = gradient(x);
        check_finite(f, g_next, epoch + 1);
        const double gg_next = dot(g_next, g_next);

        ++steps_since_restart;
        if (options.restart_interval > 0 && steps_since_restart >= options.restart_interval) {
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = -g_next[i];
            steps_since_restart = 0;
        } else {
            const double beta = gg_next / gg; // Fletcher-Reeves
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = -g_next[i] + beta * d[i];
        }
        g = std::move(g_next);
        gg = gg_next;
    }

    result.x = std::move(x);
    return result;
}

} // namespace eyekit
