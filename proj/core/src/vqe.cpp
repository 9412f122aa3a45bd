#include "pairsim/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "pairsim/ansatz.hpp"
#include "pairsim/errors.hpp"
#include "pairsim/projection.hpp"

namespace pairsim {

namespace {

constexpr double kInfeasiblePenalty = 1e9;

double chain_sum_value(const StateVector& state, const PauliChainSum& chains, std::size_t shots,
                       Rng* rng, std::size_t noise_stream = 0) {
    if (shots == 0 || rng == nullptr) return state.expectation(chains);
    double total = 0.0;
    std::size_t stream = noise_stream * chains.terms.size();
    for (const PauliChainSum::Term& term : chains.terms) {
        if (term.chain.is_identity()) {
            total += term.weight;  // deterministic constant, nothing to sample
            continue;
        }
        Rng local = rng->split(stream++);
        total += term.weight * state.sampled_pauli_expectation(term.chain, shots, local);
    }
    return total;
}

struct CostEvaluator {
    const PairingSpec& spec;
    const PauliChainSum& chains;
    VqeMode mode;
    double lambda;
    std::size_t shots = 0;
    bool qpe_in_loop = false;
    std::size_t qpe_max_attempts = 0;
    std::size_t n_q = 0;
    Rng* rng = nullptr;
    mutable std::size_t eval_count = 0;

    // Infeasible points (empty target sector during qvap exploration) cost a
    // large penalty instead of raising, so the simplex can walk out.
    double operator()(std::span<const double> thetas) const {
        const std::size_t noise_stream = ++eval_count;
        AnsatzParams params;
        params.thetas.assign(thetas.begin(), thetas.end());
        const StateVector trial = prepare_bcs(params);
        if (mode == VqeMode::qvap) {
            try {
                if (qpe_in_loop && rng != nullptr) {
                    Rng attempt_rng = rng->split(noise_stream);
                    const ProjectionOutcome outcome = post_select(
                        trial, n_q, spec.target_pairs, qpe_max_attempts, attempt_rng);
                    return chain_sum_value(outcome.projected, chains, shots, rng, noise_stream);
                }
                const StateVector projected = projector_oracle(trial, spec.target_pairs);
                return chain_sum_value(projected, chains, shots, rng, noise_stream);
            } catch (const EmptySectorError&) {
                return kInfeasiblePenalty;
            }
        }
        const double energy = chain_sum_value(trial, chains, shots, rng, noise_stream);
        double pairs = 0.0;  // classical closed form, not a circuit measurement
        for (double theta : thetas) pairs += std::cos(theta) * std::cos(theta);
        return energy - lambda * (pairs - double(spec.target_pairs));
    }
};

std::vector<double> initial_angles(const PairingSpec& spec, const OptimizationConfig& config) {
    // step profile of the filled configuration, smoothed into the open sector
    std::vector<std::size_t> order(spec.levels);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return spec.epsilons[a] < spec.epsilons[b];
    });
    std::vector<double> thetas(spec.levels, std::numbers::pi / 2.0 - config.init_smoothing);
    for (std::size_t i = 0; i < spec.target_pairs; ++i) thetas[order[i]] = config.init_smoothing;
    if (config.init_perturbation > 0.0) {
        Rng rng(config.seed);
        for (double& theta : thetas)
            theta += config.init_perturbation * (2.0 * rng.uniform() - 1.0);
    }
    return thetas;
}

double default_lambda(const PairingSpec& spec) {
    // mid-gap between the last filled and first open level
    std::vector<double> sorted = spec.epsilons;
    std::sort(sorted.begin(), sorted.end());
    if (spec.target_pairs == 0) return sorted.front() - 0.5;
    if (spec.target_pairs == spec.levels) return sorted.back() + 0.5;
    return 0.5 * (sorted[spec.target_pairs - 1] + sorted[spec.target_pairs]);
}

}  // namespace

std::string to_string(VqeMode mode) {
    switch (mode) {
        case VqeMode::bcs: return "bcs";
        case VqeMode::qpav: return "qpav";
        case VqeMode::qvap: return "qvap";
    }
    return "?";
}

double cost(std::span<const double> thetas, double lambda, const PairingSpec& spec,
            VqeMode mode) {
    spec.validate();
    if (thetas.size() != spec.levels)
        throw std::invalid_argument("cost: angle count != level count");
    const PauliChainSum chains = hamiltonian_chains(spec);
    if (mode == VqeMode::qvap) {
        AnsatzParams params;
        params.thetas.assign(thetas.begin(), thetas.end());
        // raises EmptySectorError when the target sector carries no amplitude
        return projector_oracle(prepare_bcs(params), spec.target_pairs).expectation(chains);
    }
    CostEvaluator evaluator{spec, chains, mode, lambda};
    return evaluator(thetas);
}

OptResult minimize(const PairingSpec& spec, const OptimizationConfig& config) {
    spec.validate();
    const PauliChainSum chains = hamiltonian_chains(spec);
    Rng rng(config.seed);

    double lambda = std::isnan(config.lambda_0) ? default_lambda(spec) : config.lambda_0;
    std::vector<double> thetas = initial_angles(spec, config);

    SimplexOptions simplex = config.simplex;
    if (!simplex.bounds) simplex.bounds = {{-std::numbers::pi, 2.0 * std::numbers::pi}};

    OptResult result;
    result.evaluations = 0;

    const bool projected_mode = config.mode == VqeMode::qvap;
    bool converged = false;

    for (std::size_t outer = 0; outer < config.max_outer; ++outer) {
        CostEvaluator evaluator{spec,
                                chains,
                                config.mode,
                                lambda,
                                config.shots,
                                config.qpe_in_loop && projected_mode,
                                config.qpe_max_attempts,
                                min_ancillas(spec.levels),
                                &rng};
        SimplexResult inner = nelder_mead(
            [&](std::span<const double> x) { return evaluator(x); }, thetas, simplex);
        result.evaluations += inner.evaluations;
        thetas = inner.x;

        AnsatzParams params;
        params.thetas = thetas;
        params.lambda = lambda;

        double pairs;
        double energy;
        if (projected_mode) {
            const StateVector state = projector_oracle(prepare_bcs(params), spec.target_pairs);
            energy = state.expectation(chains);
            pairs = double(spec.target_pairs);  // pinned by the projection
        } else {
            energy = prepare_bcs(params).expectation(chains);
            pairs = expected_pairs(params);
        }
        result.history.push_back({lambda, energy, pairs});

        if (std::abs(pairs - double(spec.target_pairs)) <= config.eps_tol) {
            converged = true;
            result.thetas = thetas;
            result.lambda = lambda;
            result.expected_pairs = pairs;
            result.energy = energy;
            break;
        }
        lambda += config.lambda_step * (double(spec.target_pairs) - pairs);
    }

    if (!converged)
        throw ConvergenceError("minimize: pair-number constraint not met within max_outer");

    if (config.mode == VqeMode::qpav) {
        result.energy = qpav_energy(spec, result);
        result.expected_pairs = double(spec.target_pairs);
    }
    return result;
}

double qpav_energy(const PairingSpec& spec, const OptResult& bcs_result) {
    AnsatzParams params;
    params.thetas = bcs_result.thetas;
    const StateVector projected =
        projector_oracle(prepare_bcs(params), spec.target_pairs);
    return projected.expectation(hamiltonian_chains(spec));
}

}  // namespace pairsim
