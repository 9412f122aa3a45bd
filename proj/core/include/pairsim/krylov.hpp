#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pairsim/complex_matrix.hpp"
#include "pairsim/pairing_model.hpp"
#include "pairsim/rng.hpp"
#include "pairsim/state_vector.hpp"
#include "pairsim/time_evolution.hpp"

namespace pairsim {

enum class HadamardPart { real, imag };

/// One-ancilla interference estimate of Re or Im of <Psi| A U |Psi> as
/// p_0 - p_1. The ancilla is the qubit above the system register; `prepare`
/// must act on system qubits only, `controlled_evolution` applies the
/// controlled unitary with the given control index. The imaginary part uses
/// the phase-gate variant R(-pi/2) after the first Hadamard. A non-null
/// observable must be a single unit-coefficient Pauli chain (it rides the
/// circuit as a controlled operation and has to stay unitary); weighted sums
/// are handled term by term by the caller. shots = 0 returns the exact
/// ancilla-marginal difference.
double hadamard_test(std::size_t n_system, const std::function<void(StateVector&)>& prepare,
                     const std::function<void(StateVector&, std::size_t)>& controlled_evolution,
                     const PauliChain* observable, HadamardPart part, std::size_t shots,
                     Rng& rng);

struct KrylovConfig {
    std::size_t m_max = 20;
    double d_tau = 0.3;        // basis spacing tau_i = i d_tau
    double threshold = 1e-6;   // overlap-eigenvalue pruning
    std::size_t shots = 0;     // 0 = exact estimators
    // exact evolution is the default reference; switch to trotter to include
    // integrator error in the estimates
    TrotterConfig evolution{1e-2, EvolutionKind::exact};
};

/// Toeplitz generators on the uniform grid: f[k] = <Psi| U(k d_tau) |Psi>,
/// g[k] = <Psi| H U(k d_tau) |Psi>, k = 0 .. m_max-1, each entry estimated
/// by Hadamard tests (per chain for g).
struct GeneratingValues {
    std::vector<Complex> f;
    std::vector<Complex> g;
};

GeneratingValues generating_values(const StateVector& initial, const PairingSpec& spec,
                                   const KrylovConfig& config, Rng& rng);

/// Overlap and Hamiltonian matrices of the leading M x M block:
/// O_ij = f[j-i], H_ij = g[j-i] for j >= i, lower triangle by Hermitian
/// conjugation.
std::pair<ComplexMatrix, ComplexMatrix> assemble(std::span<const Complex> f,
                                                 std::span<const Complex> g, std::size_t m);

/// Dense matrix-element path for an arbitrary (possibly non-uniform) time
/// grid: every O_ij and H_ij estimated by its own interference circuit with
/// the bra and ket evolutions composed on the control.
std::pair<ComplexMatrix, ComplexMatrix> krylov_matrices(const StateVector& initial,
                                                        const PairingSpec& spec,
                                                        std::span<const double> taus,
                                                        const TrotterConfig& evolution,
                                                        std::size_t shots, Rng& rng);

struct KrylovRecord {
    std::size_t m = 0;
    std::size_t retained = 0;               // J after overlap pruning
    std::vector<double> eigenvalues;        // ascending, size J
    double gs_error_pct = 0.0;              // vs the sector oracle ground state
    double first_excited_error_pct = 0.0;   // vs the first sector eigenvalue above the GS
    bool pruned = false;                    // J < m at this subspace size
};

struct KrylovResult {
    std::vector<KrylovRecord> records;      // one per M = 1 .. m_max
    std::vector<Complex> f, g;
    std::vector<std::size_t> excitation;    // tag of the seeded excitation, empty for vacuum
    double oracle_gs = 0.0;
    double oracle_first_excited = 0.0;
    double hf_reference = 0.0;
};

/// Scan the subspace size M = 1 .. m_max: assemble, prune, solve, and record
/// eigenvalues plus error metrics against the sector oracle. The estimated
/// overlap matrix is symmetrized before the solve to absorb estimator noise.
KrylovResult krylov_scan(const StateVector& initial, const PairingSpec& spec,
                         const KrylovConfig& config, Rng& rng);

/// Same scan seeded with the pair-excited trial state at frozen converged
/// angles, projected onto the target sector. An empty excitation set
/// reproduces the projected-vacuum scan.
KrylovResult qp_krylov_scan(const PairingSpec& spec, const std::vector<double>& converged_thetas,
                            const std::vector<std::size_t>& excitation,
                            const KrylovConfig& config, Rng& rng);

}  // namespace pairsim
