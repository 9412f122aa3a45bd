#pragma once

#include <cstdint>
#include <map>

#include "pairsim/pairing_model.hpp"
#include "pairsim/rng.hpp"
#include "pairsim/state_vector.hpp"
#include "pairsim/time_evolution.hpp"

namespace pairsim {

struct SpectrumBin {
    double energy_center = 0.0;
    std::uint64_t count = 0;
    double probability = 0.0;
};

/// Binned phase-measurement outcomes mapped to energies. Every one of the
/// 2^{n_q} outcomes is listed; bin_width = (e_max - e_min) / 2^{n_q}.
/// In exact mode (shots = 0) probabilities are the ancilla marginal and
/// counts stay zero; in sampled mode probability == count / shots.
struct SpectrumHistogram {
    std::size_t n_q = 0;
    double e_min = 0.0;
    double e_max = 0.0;
    double bin_width = 0.0;
    std::size_t shots = 0;
    std::map<std::uint64_t, SpectrumBin> bins;
};

/// Measured phase -> energy for the window convention
/// V = exp(-2 pi i (H - e_min) / (e_max - e_min)):
/// E = e_min + ((1 - phi) mod 1) (e_max - e_min); phi = 0 maps to e_min.
double phase_to_energy(double phi, double e_min, double e_max);
double energy_to_phase(double energy, double e_min, double e_max);

/// Window top from the chain weights: sum_l |beta_l|, which for this model
/// equals sum_p |2 eps_p - g| + |g| N (N-1) / 2.
double default_emax(const PairingSpec& spec);

/// Window top tightened around the known spectrum:
/// E_max = max-eigenvalue * 2^{n_q} / (2^{n_q} - 1), so the top state maps
/// strictly inside the highest bin. Uses the sector spectrum by default,
/// the full space (all sectors) when full_space is set.
double calibrated_emax(const PairingSpec& spec, std::size_t n_q, bool full_space = false);

struct QpeResources {
    double tau_qpe = 0.0;   // 2 pi / (e_max - e_min)
    double delta_e = 0.0;   // pi / (2^{n_q - 1} tau_qpe)
    double tau_total = 0.0; // (2^{n_q} - 1) tau_qpe
};

QpeResources qpe_resources(std::size_t n_q, double e_min, double e_max);

/// Phase estimation of the Hamiltonian spectrum: the controlled powers of
/// V = exp(-2 pi i (H - e_min)/(e_max - e_min)) are realized as controlled
/// time evolution over 2^j tau_qpe (with the e_min shift folded into a
/// controlled phase), followed by the inverse Fourier transform on the
/// ancillas. shots = 0 returns the exact outcome marginal.
SpectrumHistogram qpe_spectrum(const StateVector& initial, const PairingSpec& spec,
                               std::size_t n_q, double e_min, double e_max, std::size_t shots,
                               const TrotterConfig& trotter, Rng& rng);

}  // namespace pairsim
