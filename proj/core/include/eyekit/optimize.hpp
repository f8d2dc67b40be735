#ifndef EYEKIT_OPTIMIZE_HPP
#define EYEKIT_OPTIMIZE_HPP

#include <functional>
#include <string>
#include <vector>

namespace eyekit {

enum class StopReason { GoalMet, GradientVanished, MaxEpochs, Stalled };

std::string to_string(StopReason reason);

struct EpochRecord {
    int epoch = 0;
    double value = 0.0;
    double gradient_norm = 0.0;
};

struct FletcherReevesOptions {
    double value_goal = 1e-3;   // stop when the objective reaches this
    double gradient_tol = 1e-6; // stop when ||g|| falls to this
    int max_epochs = 1000;
    double initial_step = 0.5;  // line-search starting step
    double armijo_c1 = 1e-4;
    int max_halvings = 40;
    int restart_interval = 0;   // steepest-descent restart period; 0 = never
};

struct MinimizeResult {
    std::vector<double> x;
    std::vector<EpochRecord> trace; // one record per epoch, from epoch 0
    StopReason reason = StopReason::MaxEpochs;
};

using ValueFn = std::function<double(const std::vector<double>&)>;
using GradientFn = std::function<std::vector<double>(const std::vector<double>&)>;

/// Returns the accepted step length along d from x, or 0 when no step gives
/// sufficient decrease. fx and g are the value and gradient at x.
using LineSearch = std::function<double(const std::vector<double>& x,
                                        const std::vector<double>& d,
                                        double fx,
                                        const std::vector<double>& g)>;

/// Backtracking search: starts at initial_step and halves (at most
/// max_halvings times) until f(x + a*d) <= f(x) + c1 * a * g.d.
LineSearch backtracking_armijo(ValueFn value, double initial_step, double c1, int max_halvings);

/// Nonlinear conjugate gradient with the Fletcher-Reeves update
/// beta = ||g_{k+1}||^2 / ||g_k||^2. The direction restarts to steepest
/// descent every restart_interval steps and whenever d.g >= 0. One epoch is
/// one CG iteration over the full objective; the trace records the state at
/// the start of every epoch, so the last record justifies the stop reason.
/// Throws NumericError (with the epoch index) on non-finite values.
/// When line_search is empty, backtracking_armijo built from the options is
/// used.
MinimizeResult minimize_fletcher_reeves(const ValueFn& value,
                                        const GradientFn& gradient,
                                        std::vector<double> x0,
                                        const FletcherReevesOptions& options,
                                        const LineSearch& line_search = {});

} // namespace eyekit

#endif
