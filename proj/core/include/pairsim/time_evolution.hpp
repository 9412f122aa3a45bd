#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "pairsim/complex_matrix.hpp"
#include "pairsim/pairing_model.hpp"
#include "pairsim/state_vector.hpp"

namespace pairsim {

enum class EvolutionKind {
    trotter,  // first-order split, one-body phases then pair-exchange blocks
    exact,    // dense propagator from the eigendecomposition (reference path)
};

struct TrotterConfig {
    double dt = 1e-2;
    EvolutionKind kind = EvolutionKind::trotter;
};

/// One first-order Trotter step of size dt: per-qubit phase
/// diag(1, e^{-i (2 eps_p - g) dt}), then the pair-exchange block with
/// cos(g dt) / i sin(g dt) on the {|01>, |10>} subspace for every p > q.
/// The register may be wider than the model; upper qubits are untouched.
void trotter_step(StateVector& state, double dt, const PairingSpec& spec);

/// ceil(tau / dt) Trotter steps, the last one shortened to land exactly on
/// tau. kind == exact applies the dense propagator in one application.
void evolve(StateVector& state, double tau, const TrotterConfig& config,
            const PairingSpec& spec);

/// Propagator engine with cached tables. Exposes plain and singly-controlled
/// evolution so phase-estimation and interference circuits can reuse one
/// instance; the caches make repeated times cheap.
class Evolver {
public:
    Evolver(PairingSpec spec, TrotterConfig config);

    const PairingSpec& spec() const { return spec_; }
    const TrotterConfig& config() const { return config_; }

    void evolve(StateVector& state, double tau) const;
    /// Same evolution applied only where the control qubit is 1. The control
    /// must lie above the model qubits.
    void controlled_evolve(StateVector& state, double tau, std::size_t control) const;

    /// e^{-i tau H} as a dense matrix on the full model space (exact kind
    /// machinery; guarded to 10 levels).
    const ComplexMatrix& propagator(double tau) const;

private:
    void run_trotter(StateVector& state, double tau, std::optional<std::size_t> control) const;
    void run_exact(StateVector& state, double tau, std::optional<std::size_t> control) const;
    void step(StateVector& state, double dt, std::optional<std::size_t> control) const;
    void inverse_step(StateVector& state, double dt, std::optional<std::size_t> control) const;
    const std::vector<Complex>& diagonal_table(double dt) const;
    const EigenResult& dense_eigen() const;

    PairingSpec spec_;
    TrotterConfig config_;

    mutable std::mutex mutex_;
    mutable std::optional<EigenResult> dense_eigen_;
    mutable std::map<double, ComplexMatrix> propagators_;
    mutable std::map<double, std::vector<Complex>> diagonal_tables_;
};

}  // namespace pairsim
