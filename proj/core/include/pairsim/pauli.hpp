#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pairsim/complex_matrix.hpp"

namespace pairsim {

enum class PauliOp : std::uint8_t { I, X, Y, Z };

/// Product of single-qubit Pauli letters, one per qubit, times a scalar
/// coefficient. letters[q] acts on qubit q (qubit q is bit q of the basis
/// index).
struct PauliChain {
    std::vector<PauliOp> letters;
    Complex coefficient{1.0, 0.0};

    static PauliChain identity(std::size_t n_qubits);
    static PauliChain single(std::size_t n_qubits, std::size_t qubit, PauliOp op);
    static PauliChain two(std::size_t n_qubits, std::size_t q1, PauliOp op1, std::size_t q2,
                          PauliOp op2);

    std::size_t size() const { return letters.size(); }
    bool is_identity() const;

    std::uint64_t x_mask() const;
    std::uint64_t y_mask() const;
    std::uint64_t z_mask() const;
};

/// Weighted sum of Pauli chains representing a Hermitian observable;
/// weights are real.
struct PauliChainSum {
    struct Term {
        double weight;
        PauliChain chain;
    };
    std::vector<Term> terms;

    std::size_t n_qubits() const { return terms.empty() ? 0 : terms.front().chain.size(); }
    /// Sum of |weight| over all terms (identity included).
    double weight_l1() const;
};

/// Dense matrix of the summed observable on the full 2^n space.
/// Guarded to n <= 12.
ComplexMatrix to_dense(const PauliChainSum& sum, std::size_t n_qubits);

}  // namespace pairsim
