#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pairsim/optimize.hpp"
#include "pairsim/pairing_model.hpp"
#include "pairsim/rng.hpp"

namespace pairsim {

/// Three drivers sharing the same iterative machinery:
///  - bcs:  minimize the trial-state energy with the pair-number constraint.
///  - qpav: same minimization, project once after convergence.
///  - qvap: minimize the energy of the projected state directly.
enum class VqeMode { bcs, qpav, qvap };

std::string to_string(VqeMode mode);

struct OptimizationConfig {
    VqeMode mode = VqeMode::bcs;
    double eps_tol = 1e-3;         // |<N_P> - A_P| convergence window
    double lambda_0 = std::numeric_limits<double>::quiet_NaN();  // NaN -> mid-gap default
    double lambda_step = 1.0;      // relaxation coefficient of the Fermi-energy update
    std::size_t max_outer = 50;
    SimplexOptions simplex{};
    std::uint64_t seed = 1;
    std::size_t shots = 0;         // 0 = exact expectation values
    double init_smoothing = 0.3;   // radians pulled off the step profile
    double init_perturbation = 0.0;
    bool qpe_in_loop = false;      // qvap only: run the sampled projection filter per evaluation
    std::size_t qpe_max_attempts = 256;
};

struct OuterIteration {
    double lambda;
    double energy;
    double expected_pairs;
};

struct OptResult {
    std::vector<double> thetas;
    double lambda = 0.0;
    double energy = 0.0;          // mode energy: trial-state (bcs), projected (qpav/qvap)
    double expected_pairs = 0.0;  // <N_P> of the reported state
    std::vector<OuterIteration> history;
    std::size_t evaluations = 0;
};

/// Cost of one parameter point at fixed Fermi energy, exact expectation
/// values: <H - lambda (N_P - A_P)>. In qvap mode the expectation is taken
/// on the number-projected state, which pins <N_P> = A_P and leaves the
/// constraint term inert (kept for interface uniformity). qpav mode costs
/// identically to bcs; the projection happens after convergence.
double cost(std::span<const double> thetas, double lambda, const PairingSpec& spec, VqeMode mode);

/// Full hybrid minimization: inner derivative-free simplex over the angles at
/// fixed lambda, outer Fermi-energy relaxation
/// lambda <- lambda + c (A_P - <N_P>) until |<N_P> - A_P| <= eps_tol.
OptResult minimize(const PairingSpec& spec, const OptimizationConfig& config);

/// Energy of the converged bcs-mode state after pair-number projection.
double qpav_energy(const PairingSpec& spec, const OptResult& bcs_result);

}  // namespace pairsim
