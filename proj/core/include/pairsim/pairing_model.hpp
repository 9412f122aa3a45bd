#pragma once

#include <cstdint>
#include <vector>

#include "pairsim/complex_matrix.hpp"
#include "pairsim/pauli.hpp"
#include "pairsim/state_vector.hpp"

namespace pairsim {

/// Pairing model on N doubly degenerate levels: single-particle energies
/// eps_p, constant pair coupling g, and the targeted pair number A_P.
/// One qubit per level (|1> = pair occupied); energies in units of the level
/// spacing.
struct PairingSpec {
    std::size_t levels = 0;
    std::vector<double> epsilons;
    double g = 0.0;
    std::size_t target_pairs = 0;

    /// Equidistant levels eps_p = p for p = 1..N.
    static PairingSpec equidistant(std::size_t levels, double g, std::size_t target_pairs);

    void validate() const;
};

/// Qubit Hamiltonian as a weighted chain sum:
///   sum_p (eps_p - g/2) I  -  sum_p (eps_p - g/2) Z_p
///   - (g/2) sum_{p>q} (X_p X_q + Y_p Y_q).
/// The constant term is carried explicitly so energies are absolute.
PauliChainSum hamiltonian_chains(const PairingSpec& spec);

/// All N-bit occupation masks with popcount A_P, ascending. Defines the
/// basis ordering of the dense sector matrix.
std::vector<std::uint64_t> sector_basis(std::size_t levels, std::size_t pairs);

std::size_t sector_dimension(std::size_t levels, std::size_t pairs);

/// Dense Hamiltonian over the fixed-pair-number sector: diagonal
/// sum_occ (2 eps_p - g), off-diagonal -g between masks one pair hop apart.
ComplexMatrix dense_sector_hamiltonian(const PairingSpec& spec);

/// Eigenvalues of the sector Hamiltonian, ascending. Guarded to sector
/// dimension <= 1000.
std::vector<double> exact_spectrum(const PairingSpec& spec);

/// Reference energy with the A_P lowest levels filled: sum (2 eps_p - g).
double hf_energy(const PairingSpec& spec);

/// Basis state with the A_P lowest levels occupied.
StateVector hf_state(const PairingSpec& spec);

/// Correlation-energy error in percent:
/// |(E_approx - E_exact) / (E_exact - E_HF)| * 100.
/// Throws if the exact correlation energy vanishes.
double correlation_error(double e_approx, double e_exact, double e_hf);

}  // namespace pairsim
