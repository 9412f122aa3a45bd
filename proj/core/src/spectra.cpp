#include "pairsim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pairsim/errors.hpp"

namespace pairsim {

namespace {

void check_window(double e_min, double e_max) {
    if (!(e_min < e_max)) throw std::invalid_argument("energy window: e_min must be < e_max");
}

}  // namespace

double phase_to_energy(double phi, double e_min, double e_max) {
    check_window(e_min, e_max);
    if (phi < 0.0 || phi >= 1.0) throw std::invalid_argument("phase_to_energy: phi outside [0,1)");
    return e_min + std::fmod(1.0 - phi, 1.0) * (e_max - e_min);
}

double energy_to_phase(double energy, double e_min, double e_max) {
    check_window(e_min, e_max);
    const double fraction = (energy - e_min) / (e_max - e_min);
    double phi = std::fmod(1.0 - fraction, 1.0);
    if (phi < 0.0) phi += 1.0;
    if (phi >= 1.0) phi -= 1.0;
    return phi;
}

double default_emax(const PairingSpec& spec) {
    spec.validate();
    double sum = 0.0;
    for (double eps : spec.epsilons) sum += std::abs(2.0 * eps - spec.g);
    sum += std::abs(spec.g) * double(spec.levels * (spec.levels - 1)) / 2.0;
    return sum;
}

double calibrated_emax(const PairingSpec& spec, std::size_t n_q, bool full_space) {
    spec.validate();
    if (n_q < 1) throw std::invalid_argument("calibrated_emax: need at least one ancilla");
    double top;
    if (full_space) {
        top = -std::numeric_limits<double>::infinity();
        for (std::size_t pairs = 0; pairs <= spec.levels; ++pairs) {
            PairingSpec sector = spec;
            sector.target_pairs = pairs;
            const std::vector<double> values = exact_spectrum(sector);
            if (!values.empty()) top = std::max(top, values.back());
        }
    } else {
        top = exact_spectrum(spec).back();
    }
    const double bins = double(std::uint64_t{1} << n_q);
    return top * bins / (bins - 1.0);
}

QpeResources qpe_resources(std::size_t n_q, double e_min, double e_max) {
    check_window(e_min, e_max);
    if (n_q < 1) throw std::invalid_argument("qpe_resources: need at least one ancilla");
    QpeResources r;
    r.tau_qpe = 2.0 * std::numbers::pi / (e_max - e_min);
    r.delta_e = std::numbers::pi / (double(std::uint64_t{1} << (n_q - 1)) * r.tau_qpe);
    r.tau_total = (double(std::uint64_t{1} << n_q) - 1.0) * r.tau_qpe;
    return r;
}

SpectrumHistogram qpe_spectrum(const StateVector& initial, const PairingSpec& spec,
                               std::size_t n_q, double e_min, double e_max, std::size_t shots,
                               const TrotterConfig& trotter, Rng& rng) {
    spec.validate();
    check_window(e_min, e_max);
    if (n_q < 1) throw std::invalid_argument("qpe_spectrum: need at least one ancilla");
    if (initial.n_qubits() != spec.levels)
        throw std::invalid_argument("qpe_spectrum: initial state size != level count");

    const std::size_t n_sys = spec.levels;
    const double tau_qpe = 2.0 * std::numbers::pi / (e_max - e_min);
    const Evolver evolver(spec, trotter);

    StateVector combined = initial.with_ancillas(n_q);
    std::vector<std::size_t> ancillas(n_q);
    std::iota(ancillas.begin(), ancillas.end(), n_sys);

    for (std::size_t a : ancillas) combined.apply_hadamard(a);
    for (std::size_t j = 0; j < n_q; ++j) {
        const double time = double(std::uint64_t{1} << j) * tau_qpe;
        // V^{2^j} = e^{+i t e_min} U(t); the scalar rides on the control
        if (e_min != 0.0) combined.apply_phase(ancillas[j], time * e_min);
        evolver.controlled_evolve(combined, time, ancillas[j]);
    }
    combined.inverse_qft(ancillas);

    const std::vector<double> marginal = combined.register_marginal(ancillas);
    const std::uint64_t n_bins = std::uint64_t{1} << n_q;

    SpectrumHistogram hist;
    hist.n_q = n_q;
    hist.e_min = e_min;
    hist.e_max = e_max;
    hist.bin_width = (e_max - e_min) / double(n_bins);
    hist.shots = shots;

    std::vector<std::uint64_t> counts(n_bins, 0);
    if (shots > 0) {
        std::vector<double> cumulative(n_bins);
        std::partial_sum(marginal.begin(), marginal.end(), cumulative.begin());
        for (std::size_t s = 0; s < shots; ++s) {
            const double u = rng.uniform() * cumulative.back();
            const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            const std::size_t idx =
                std::min<std::size_t>(std::size_t(it - cumulative.begin()), n_bins - 1);
            counts[idx]++;
        }
    }

    for (std::uint64_t outcome = 0; outcome < n_bins; ++outcome) {
        SpectrumBin bin;
        bin.energy_center = phase_to_energy(double(outcome) / double(n_bins), e_min, e_max);
        bin.count = counts[outcome];
        bin.probability =
            shots > 0 ? double(counts[outcome]) / double(shots) : marginal[outcome];
        hist.bins.emplace(outcome, bin);
    }
    return hist;
}

}  // namespace pairsim
