#include "pairsim/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "pairsim/errors.hpp"

namespace pairsim {

PauliChain PauliChain::identity(std::size_t n_qubits) {
    PauliChain chain;
    chain.letters.assign(n_qubits, PauliOp::I);
    return chain;
}

PauliChain PauliChain::single(std::size_t n_qubits, std::size_t qubit, PauliOp op) {
    PauliChain chain = identity(n_qubits);
    if (qubit >= n_qubits) throw std::invalid_argument("PauliChain::single: qubit out of range");
    chain.letters[qubit] = op;
    return chain;
}

PauliChain PauliChain::two(std::size_t n_qubits, std::size_t q1, PauliOp op1, std::size_t q2,
                           PauliOp op2) {
    if (q1 == q2) throw std::invalid_argument("PauliChain::two: duplicated qubit");
    PauliChain chain = single(n_qubits, q1, op1);
    if (q2 >= n_qubits) throw std::invalid_argument("PauliChain::two: qubit out of range");
    chain.letters[q2] = op2;
    return chain;
}

bool PauliChain::is_identity() const {
    for (PauliOp op : letters)
        if (op != PauliOp::I) return false;
    return true;
}

std::uint64_t PauliChain::x_mask() const {
    std::uint64_t mask = 0;
    for (std::size_t q = 0; q < letters.size(); ++q)
        if (letters[q] == PauliOp::X) mask |= std::uint64_t{1} << q;
    return mask;
}

std::uint64_t PauliChain::y_mask() const {
    std::uint64_t mask = 0;
    for (std::size_t q = 0; q < letters.size(); ++q)
        if (letters[q] == PauliOp::Y) mask |= std::uint64_t{1} << q;
    return mask;
}

std::uint64_t PauliChain::z_mask() const {
    std::uint64_t mask = 0;
    for (std::size_t q = 0; q < letters.size(); ++q)
        if (letters[q] == PauliOp::Z) mask |= std::uint64_t{1} << q;
    return mask;
}

double PauliChainSum::weight_l1() const {
    double sum = 0.0;
    for (const Term& term : terms) sum += std::abs(term.weight);
    return sum;
}

ComplexMatrix to_dense(const PauliChainSum& sum, std::size_t n_qubits) {
    if (n_qubits > 12) throw GuardError("to_dense: register larger than 12 qubits");
    const std::size_t dim = std::size_t{1} << n_qubits;
    ComplexMatrix out(dim, dim);
    static constexpr Complex i_powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const PauliChainSum::Term& term : sum.terms) {
        if (term.chain.size() != n_qubits)
            throw std::invalid_argument("to_dense: chain length mismatch");
        const std::uint64_t flip = term.chain.x_mask() | term.chain.y_mask();
        const std::uint64_t yz = term.chain.y_mask() | term.chain.z_mask();
        const Complex front =
            term.weight * term.chain.coefficient *
            i_powers[std::popcount(term.chain.y_mask()) & 3];
        for (std::uint64_t k = 0; k < dim; ++k) {
            const double sign = (std::popcount(k & yz) & 1) ? -1.0 : 1.0;
            out(k ^ flip, k) += front * sign;
        }
    }
    return out;
}

}  // namespace pairsim
