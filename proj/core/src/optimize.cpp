#include "pairsim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pairsim {

namespace {

// standard coefficients: reflection, expansion, contraction, shrink
constexpr double kAlpha = 1.0;
constexpr double kGamma = 2.0;
constexpr double kRho = 0.5;
constexpr double kSigma = 0.5;

void clamp(std::vector<double>& x, const std::optional<std::pair<double, double>>& bounds) {
    if (!bounds) return;
    for (double& v : x) v = std::clamp(v, bounds->first, bounds->second);
}

double simplex_diameter(const std::vector<std::vector<double>>& points) {
    double worst = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        double dist = 0.0;
        for (std::size_t d = 0; d < points[0].size(); ++d) {
            const double diff = points[i][d] - points[0][d];
            dist += diff * diff;
        }
        worst = std::max(worst, std::sqrt(dist));
    }
    return worst;
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                          std::span<const double> start, const SimplexOptions& options) {
    const std::size_t dim = start.size();
    if (dim == 0) throw std::invalid_argument("nelder_mead: empty parameter vector");

    SimplexResult result;
    result.evaluations = 0;

    auto evaluate = [&](const std::vector<double>& x) {
        ++result.evaluations;
        return objective(x);
    };

    std::vector<double> best(start.begin(), start.end());
    clamp(best, options.bounds);
    double best_f = evaluate(best);
    double step = options.initial_step;

    for (std::size_t round = 0; round <= options.restarts; ++round) {
        // simplex seeded at the incumbent best point
        std::vector<std::vector<double>> pts(dim + 1, best);
        std::vector<double> fs(dim + 1);
        fs[0] = best_f;
        for (std::size_t i = 0; i < dim; ++i) {
            pts[i + 1][i] += step;
            clamp(pts[i + 1], options.bounds);
            fs[i + 1] = evaluate(pts[i + 1]);
        }

        while (result.evaluations < options.max_evals) {
            std::vector<std::size_t> order(dim + 1);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
            {
                std::vector<std::vector<double>> p2(dim + 1);
                std::vector<double> f2(dim + 1);
                for (std::size_t i = 0; i <= dim; ++i) {
                    p2[i] = pts[order[i]];
                    f2[i] = fs[order[i]];
                }
                pts.swap(p2);
                fs.swap(f2);
            }

            if (simplex_diameter(pts) < options.x_tol && fs[dim] - fs[0] < options.f_tol) {
                result.converged = true;
                break;
            }

            std::vector<double> centroid(dim, 0.0);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t d = 0; d < dim; ++d) centroid[d] += pts[i][d] / double(dim);

            auto blend = [&](double coeff) {
                std::vector<double> x(dim);
                for (std::size_t d = 0; d < dim; ++d)
                    x[d] = centroid[d] + coeff * (centroid[d] - pts[dim][d]);
                clamp(x, options.bounds);
                return x;
            };

            std::vector<double> reflected = blend(kAlpha);
            const double f_reflected = evaluate(reflected);

            if (f_reflected < fs[0]) {
                std::vector<double> expanded = blend(kGamma);
                const double f_expanded = evaluate(expanded);
                if (f_expanded < f_reflected) {
                    pts[dim] = std::move(expanded);
                    fs[dim] = f_expanded;
                } else {
                    pts[dim] = std::move(reflected);
                    fs[dim] = f_reflected;
                }
            } else if (f_reflected < fs[dim - 1]) {
                pts[dim] = std::move(reflected);
                fs[dim] = f_reflected;
            } else {
                const bool outside = f_reflected < fs[dim];
                std::vector<double> contracted = blend(outside ? kRho : -kRho);
                const double f_contracted = evaluate(contracted);
                if (f_contracted < std::min(f_reflected, fs[dim])) {
                    pts[dim] = std::move(contracted);
                    fs[dim] = f_contracted;
                } else {
                    // shrink towards the best vertex
                    for (std::size_t i = 1; i <= dim; ++i) {
                        for (std::size_t d = 0; d < dim; ++d)
                            pts[i][d] = pts[0][d] + kSigma * (pts[i][d] - pts[0][d]);
                        clamp(pts[i], options.bounds);
                        fs[i] = evaluate(pts[i]);
                    }
                }
            }
        }

        if (fs[0] < best_f) {
            best_f = fs[0];
            best = pts[0];
        }
        if (result.evaluations >= options.max_evals) break;
        step *= 0.1;  // restart tighter around the incumbent
    }

    result.x = std::move(best);
    result.f = best_f;
    return result;
}

}  // namespace pairsim
