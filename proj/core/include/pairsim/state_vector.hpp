#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pairsim/complex_matrix.hpp"
#include "pairsim/pauli.hpp"
#include "pairsim/rng.hpp"

namespace pairsim {

/// Statevector over n qubits, 2^n complex amplitudes.
///
/// Bit ordering: qubit q is bit q of the basis-state integer, so qubit 0 is
/// the least significant bit. All gates are unitary and preserve the norm;
/// measurement collapses and renormalizes. Registers passed as qubit lists
/// are read the same way: register[i] is bit i of the register integer.
class StateVector {
public:
    static constexpr std::size_t kMaxQubits = 24;  // 16 MiB of amplitudes

    /// |0...0> on n qubits; throws GuardError outside [1, 24].
    explicit StateVector(std::size_t n_qubits);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }
    /// Mutable amplitude access for projector-style filtering; the caller is
    /// responsible for restoring norm 1 (see normalize()).
    std::span<Complex> amplitudes_mut() { return amps_; }
    Complex amplitude(std::uint64_t basis_index) const { return amps_[basis_index]; }

    double norm() const;
    /// Rescale to norm 1; throws EmptySectorError if the norm underflows.
    void normalize();

    // --- single-qubit gates -------------------------------------------------
    /// R_Y(angle) = exp(-i Y angle / 2).
    void apply_ry(std::size_t qubit, double angle);
    void apply_hadamard(std::size_t qubit);
    /// diag(1, e^{i angle}) on one qubit.
    void apply_phase(std::size_t qubit, double angle);
    void apply_controlled_phase(std::size_t control, std::size_t target, double angle);
    /// Arbitrary 2x2 unitary on one qubit.
    void apply_1q(std::size_t qubit, const ComplexMatrix& u);

    // --- multi-qubit operations ---------------------------------------------
    /// U on `targets` (targets[0] = least significant sub-index bit), applied
    /// on the subspace where every control qubit is 1, identity elsewhere.
    /// U must be unitary within 1e-10 and of dimension 2^|targets|.
    void apply_unitary(std::span<const std::size_t> targets, const ComplexMatrix& u,
                       std::span<const std::size_t> controls = {});
    /// exp(i theta (X_a X_b + Y_a Y_b) / 2): mixes |01> and |10> of qubits
    /// (a, b) with cos/ i sin, identity on |00> and |11>.
    void apply_xy_rotation(std::size_t a, std::size_t b, double theta,
                           std::optional<std::size_t> control = std::nullopt);
    /// Multiply amplitudes by table[k & (2^table_qubits - 1)]; table entries
    /// must have unit modulus (diagonal unitary on the low qubits).
    void apply_diagonal(std::span<const Complex> table, std::size_t table_qubits,
                        std::optional<std::size_t> control = std::nullopt);
    void apply_pauli_chain(const PauliChain& chain);
    void apply_controlled_pauli_chain(const PauliChain& chain, std::size_t control);
    void swap_qubits(std::size_t a, std::size_t b);

    /// Exact inverse discrete-Fourier change of basis on the register:
    /// |j> -> 2^{-m/2} sum_k exp(-2 pi i j k / 2^m) |k>.
    void inverse_qft(std::span<const std::size_t> reg);
    /// Forward transform, exp(+2 pi i j k / 2^m) convention.
    void qft(std::span<const std::size_t> reg);

    // --- measurement and expectation -----------------------------------------
    /// Marginal probabilities of the register outcomes (size 2^m).
    std::vector<double> register_marginal(std::span<const std::size_t> reg) const;
    /// Born-rule sample of the register; collapses and renormalizes in place.
    std::uint64_t measure_register(std::span<const std::size_t> reg, Rng& rng);

    /// <state| sum_l beta_l V_l |state>; the imaginary residue (< 1e-10 for
    /// Hermitian observables) is discarded.
    double expectation(const PauliChainSum& obs) const;
    Complex pauli_chain_value(const PauliChain& chain) const;
    /// Shot-sampled estimate of one chain expectation: projective +-1
    /// measurements of the Pauli string, `shots` repetitions.
    double sampled_pauli_expectation(const PauliChain& chain, std::size_t shots, Rng& rng) const;

    /// Append k ancilla qubits in |0> above the current register.
    StateVector with_ancillas(std::size_t k) const;
    /// Keep qubits [0, keep); upper qubits must be in the basis state
    /// `upper_bits` (amplitudes elsewhere below 1e-12).
    StateVector drop_upper_qubits(std::size_t keep, std::uint64_t upper_bits) const;

private:
    void check_qubit(std::size_t q) const;

    std::size_t n_qubits_;
    std::vector<Complex> amps_;
};

/// <a|b>, exact to machine precision. Registers must match.
Complex inner_product(const StateVector& a, const StateVector& b);

}  // namespace pairsim
