#pragma once

#include <cstddef>

#include "pairsim/rng.hpp"
#include "pairsim/state_vector.hpp"

namespace pairsim {

/// Result of one pair-number projection: the measured sector, the collapsed
/// system register (ancillas dropped, norm 1), the attempt count and the
/// acceptance probability. For a single projection the acceptance
/// probability is the Born probability of the measured outcome; for
/// post-selection it is successes / attempts.
struct ProjectionOutcome {
    std::size_t measured_pairs = 0;
    StateVector projected;
    std::size_t attempts = 0;
    double acceptance_probability = 0.0;
};

/// Smallest ancilla count n_q with 2^{n_q} > N, so every pair number 0..N
/// maps to a distinct exact binary fraction.
std::size_t min_ancillas(std::size_t levels);

/// Phase-estimation projection onto a pair-number sector. Builds an n_q
/// ancilla register in uniform superposition, applies the controlled powers
/// of the diagonal pair-counting phase operator, the inverse Fourier
/// transform, and measures. Because every phase is an exact n_q-bit binary
/// fraction the measured integer equals the pair number exactly and the
/// system collapses to that sector.
ProjectionOutcome number_projection_qpe(const StateVector& system, std::size_t n_q, Rng& rng);

/// Repeat number_projection_qpe on fresh copies of the input until the
/// measured sector equals `target_pairs`. Throws EmptySectorError when the
/// target sector carries no amplitude and ConvergenceError when the attempt
/// budget runs out.
ProjectionOutcome post_select(const StateVector& system, std::size_t n_q,
                              std::size_t target_pairs, std::size_t max_attempts, Rng& rng);

/// Deterministic filter: zero every amplitude whose occupation count differs
/// from `pairs`, then renormalize. Idempotent; equals the accepted QPE
/// projection outcome.
StateVector projector_oracle(const StateVector& system, std::size_t pairs);

/// Sector weight <Psi|P|Psi> of the given pair number.
double sector_weight(const StateVector& system, std::size_t pairs);

}  // namespace pairsim
