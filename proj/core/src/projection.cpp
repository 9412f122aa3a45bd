#include "pairsim/projection.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "pairsim/errors.hpp"

namespace pairsim {

namespace {

constexpr double kSectorFloor = 1e-14;

}  // namespace

std::size_t min_ancillas(std::size_t levels) {
    if (levels < 1) throw std::invalid_argument("min_ancillas: need at least one level");
    std::size_t n_q = 1;
    while ((std::size_t{1} << n_q) <= levels) ++n_q;
    return n_q;
}

ProjectionOutcome number_projection_qpe(const StateVector& system, std::size_t n_q, Rng& rng) {
    const std::size_t n_sys = system.n_qubits();
    if (n_q < min_ancillas(n_sys))
        throw std::invalid_argument(
            "number_projection_qpe: too few ancillas to resolve every pair number");

    StateVector combined = system.with_ancillas(n_q);
    std::vector<std::size_t> ancillas(n_q);
    std::iota(ancillas.begin(), ancillas.end(), n_sys);

    for (std::size_t a : ancillas) combined.apply_hadamard(a);
    // controlled V^{2^j}: V multiplies each occupied level by exp(2 pi i / 2^{n_q})
    for (std::size_t j = 0; j < n_q; ++j) {
        const double angle =
            2.0 * std::numbers::pi * double(std::uint64_t{1} << j) / double(std::uint64_t{1} << n_q);
        for (std::size_t p = 0; p < n_sys; ++p)
            combined.apply_controlled_phase(ancillas[j], p, angle);
    }
    combined.inverse_qft(ancillas);

    const std::vector<double> marginal = combined.register_marginal(ancillas);
    const std::uint64_t outcome = combined.measure_register(ancillas, rng);

    ProjectionOutcome result{
        .measured_pairs = static_cast<std::size_t>(outcome),
        .projected = combined.drop_upper_qubits(n_sys, outcome),
        .attempts = 1,
        .acceptance_probability = marginal[outcome],
    };
    return result;
}

ProjectionOutcome post_select(const StateVector& system, std::size_t n_q,
                              std::size_t target_pairs, std::size_t max_attempts, Rng& rng) {
    if (target_pairs > system.n_qubits())
        throw std::invalid_argument("post_select: target sector beyond level count");
    if (sector_weight(system, target_pairs) < kSectorFloor)
        throw EmptySectorError("post_select: target sector has zero amplitude");
    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
        ProjectionOutcome outcome = number_projection_qpe(system, n_q, rng);
        if (outcome.measured_pairs == target_pairs) {
            outcome.attempts = attempt;
            outcome.acceptance_probability = 1.0 / double(attempt);
            return outcome;
        }
    }
    throw ConvergenceError("post_select: attempt budget exhausted without hitting the target");
}

StateVector projector_oracle(const StateVector& system, std::size_t pairs) {
    if (sector_weight(system, pairs) < kSectorFloor)
        throw EmptySectorError("projector_oracle: target sector has zero amplitude");
    StateVector filtered = system;
    auto amps = filtered.amplitudes_mut();
    for (std::uint64_t k = 0; k < amps.size(); ++k)
        if (std::size_t(std::popcount(k)) != pairs) amps[k] = 0.0;
    filtered.normalize();
    return filtered;
}

double sector_weight(const StateVector& system, std::size_t pairs) {
    double weight = 0.0;
    const auto amps = system.amplitudes();
    for (std::uint64_t k = 0; k < amps.size(); ++k)
        if (std::size_t(std::popcount(k)) == pairs) weight += std::norm(amps[k]);
    return weight;
}

}  // namespace pairsim
