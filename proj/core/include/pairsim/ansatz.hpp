#pragma once

#include <cstddef>
#include <vector>

#include "pairsim/pairing_model.hpp"
#include "pairsim/state_vector.hpp"

namespace pairsim {

/// Variational parameters of the pair-occupation ansatz: one angle per
/// level, the Fermi energy, and an optional set of levels to excite.
struct AnsatzParams {
    std::vector<double> thetas;
    double lambda = 0.0;
    std::vector<std::size_t> excitation_levels;
};

/// Product trial state sin(theta_p)|0_p> + cos(theta_p)|1_p>, prepared by
/// per-qubit R_Y(pi - 2 theta_p) on the vacuum. All amplitudes real.
/// Requires an empty excitation set.
StateVector prepare_bcs(const AnsatzParams& params);

/// Pair-wise excited trial state: levels in the excitation set carry the
/// orthogonal factor -cos(theta_i)|0_i> + sin(theta_i)|1_i>, the rest keep
/// the ground factor. Built from the same rotation circuit with the excited
/// angles shifted by pi/2; the resulting global sign is removed so the
/// printed factor convention holds exactly.
StateVector prepare_qp_excited(const AnsatzParams& params);

/// <N_P> = sum_p cos^2(theta_p), evaluated classically.
double expected_pairs(const AnsatzParams& params);

/// Pairing gap extracted from the angles: Delta = g sum_p sin cos. Used for
/// reporting only, never inside circuits.
double pairing_gap(const PairingSpec& spec, const AnsatzParams& params);

/// Mean-field energy of the excited configuration: the trial-state energy
/// plus 2 sum_i sqrt((eps_i - lambda)^2 + Delta^2) over the excited levels.
double mean_field_excitation_energy(const PairingSpec& spec, const AnsatzParams& params,
                                    const std::vector<std::size_t>& excitation_levels);

}  // namespace pairsim
