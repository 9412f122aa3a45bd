#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pairsim {

/// Options for the derivative-free simplex minimizer.
struct SimplexOptions {
    double initial_step = 0.25;
    double x_tol = 1e-6;   // simplex diameter
    double f_tol = 1e-9;   // best-worst value spread
    std::size_t max_evals = 40000;
    std::size_t restarts = 2;  // re-seed the simplex around the best point on stagnation
    std::optional<std::pair<double, double>> bounds;  // common box, applied per coordinate
};

struct SimplexResult {
    std::vector<double> x;
    double f = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Bounded Nelder-Mead simplex minimization with restart-on-stagnation.
/// Deterministic for a given starting point.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                          std::span<const double> start, const SimplexOptions& options);

}  // namespace pairsim
