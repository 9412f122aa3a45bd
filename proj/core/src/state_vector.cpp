#include "pairsim/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pairsim/errors.hpp"

namespace pairsim {

namespace {

constexpr double kUnitaryTol = 1e-10;

std::uint64_t bit(std::size_t q) { return std::uint64_t{1} << q; }

std::uint64_t gather_bits(std::uint64_t k, std::span<const std::size_t> positions) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
        out |= ((k >> positions[i]) & 1u) << i;
    return out;
}

void require_distinct(std::span<const std::size_t> qubits, const char* who) {
    for (std::size_t i = 0; i < qubits.size(); ++i)
        for (std::size_t j = i + 1; j < qubits.size(); ++j)
            if (qubits[i] == qubits[j])
                throw std::invalid_argument(std::string(who) + ": duplicate qubit index");
}

// Iterate basis indices with fixed bits: positions must be sorted ascending.
// Expands a compressed index by inserting the fixed bits at their positions.
std::uint64_t expand_index(std::uint64_t compressed, std::span<const std::size_t> sorted_positions,
                           std::uint64_t fixed_bits) {
    std::uint64_t k = compressed;
    for (std::size_t i = 0; i < sorted_positions.size(); ++i) {
        const std::uint64_t low_mask = bit(sorted_positions[i]) - 1;
        k = ((k & ~low_mask) << 1) | (((fixed_bits >> i) & 1u) << sorted_positions[i]) |
            (k & low_mask);
    }
    return k;
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw GuardError("StateVector: register size outside [1, 24]");
    amps_.assign(std::size_t{1} << n_qubits, Complex{});
    amps_[0] = 1.0;
}

void StateVector::check_qubit(std::size_t q) const {
    if (q >= n_qubits_) throw std::invalid_argument("qubit index out of range");
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const Complex& a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
}

void StateVector::normalize() {
    const double n = norm();
    if (n < 1e-12) throw EmptySectorError("normalize: state norm underflow");
    const double inv = 1.0 / n;
    for (Complex& a : amps_) a *= inv;
}

void StateVector::apply_ry(std::size_t qubit, double angle) {
    check_qubit(qubit);
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const std::uint64_t stride = bit(qubit);
    for (std::uint64_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::uint64_t low = 0; low < stride; ++low) {
            const std::uint64_t k0 = base + low;
            const Complex a0 = amps_[k0];
            const Complex a1 = amps_[k0 + stride];
            amps_[k0] = c * a0 - s * a1;
            amps_[k0 + stride] = s * a0 + c * a1;
        }
    }
}

void StateVector::apply_hadamard(std::size_t qubit) {
    check_qubit(qubit);
    constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    const std::uint64_t stride = bit(qubit);
    for (std::uint64_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::uint64_t low = 0; low < stride; ++low) {
            const std::uint64_t k0 = base + low;
            const Complex a0 = amps_[k0];
            const Complex a1 = amps_[k0 + stride];
            amps_[k0] = inv_sqrt2 * (a0 + a1);
            amps_[k0 + stride] = inv_sqrt2 * (a0 - a1);
        }
    }
}

void StateVector::apply_phase(std::size_t qubit, double angle) {
    check_qubit(qubit);
    const Complex phase = std::polar(1.0, angle);
    const std::uint64_t mask = bit(qubit);
    for (std::uint64_t k = 0; k < amps_.size(); ++k)
        if (k & mask) amps_[k] *= phase;
}

void StateVector::apply_controlled_phase(std::size_t control, std::size_t target, double angle) {
    check_qubit(control);
    check_qubit(target);
    if (control == target)
        throw std::invalid_argument("apply_controlled_phase: control equals target");
    const Complex phase = std::polar(1.0, angle);
    const std::uint64_t mask = bit(control) | bit(target);
    for (std::uint64_t k = 0; k < amps_.size(); ++k)
        if ((k & mask) == mask) amps_[k] *= phase;
}

void StateVector::apply_1q(std::size_t qubit, const ComplexMatrix& u) {
    check_qubit(qubit);
    if (u.rows() != 2 || u.cols() != 2)
        throw std::invalid_argument("apply_1q: matrix must be 2x2");
    if (u.unitarity_defect() > kUnitaryTol)
        throw std::invalid_argument("apply_1q: matrix not unitary within 1e-10");
    const std::uint64_t stride = bit(qubit);
    for (std::uint64_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::uint64_t low = 0; low < stride; ++low) {
            const std::uint64_t k0 = base + low;
            const Complex a0 = amps_[k0];
            const Complex a1 = amps_[k0 + stride];
            amps_[k0] = u(0, 0) * a0 + u(0, 1) * a1;
            amps_[k0 + stride] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
}

void StateVector::apply_unitary(std::span<const std::size_t> targets, const ComplexMatrix& u,
                                std::span<const std::size_t> controls) {
    if (targets.empty()) throw std::invalid_argument("apply_unitary: no target qubits");
    for (std::size_t q : targets) check_qubit(q);
    for (std::size_t q : controls) check_qubit(q);
    std::vector<std::size_t> all(targets.begin(), targets.end());
    all.insert(all.end(), controls.begin(), controls.end());
    require_distinct(all, "apply_unitary");

    const std::size_t t = targets.size();
    const std::size_t sub_dim = std::size_t{1} << t;
    if (u.rows() != sub_dim || u.cols() != sub_dim)
        throw std::invalid_argument("apply_unitary: matrix dimension != 2^targets");
    // full Gram check up to 4 targets; beyond that column norms plus sampled
    // orthogonality keep the validation off the critical path
    if (sub_dim <= 16) {
        if (u.unitarity_defect() > kUnitaryTol)
            throw std::invalid_argument("apply_unitary: matrix not unitary within 1e-10");
    } else {
        for (std::size_t i = 0; i < sub_dim; ++i) {
            Complex diag = 0.0;
            for (std::size_t k = 0; k < sub_dim; ++k) diag += std::conj(u(k, i)) * u(k, i);
            if (std::abs(diag - 1.0) > kUnitaryTol)
                throw std::invalid_argument("apply_unitary: matrix not unitary within 1e-10");
        }
        for (std::size_t i = 0; i + 1 < sub_dim && i < 8; ++i) {
            Complex off = 0.0;
            for (std::size_t k = 0; k < sub_dim; ++k) off += std::conj(u(k, i)) * u(k, i + 1);
            if (std::abs(off) > kUnitaryTol)
                throw std::invalid_argument("apply_unitary: matrix not unitary within 1e-10");
        }
    }

    std::uint64_t control_mask = 0;
    for (std::size_t q : controls) control_mask |= bit(q);
    std::uint64_t target_mask = 0;
    for (std::size_t q : targets) target_mask |= bit(q);

    std::vector<std::uint64_t> scatter(sub_dim);
    for (std::uint64_t s = 0; s < sub_dim; ++s) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < t; ++i)
            if ((s >> i) & 1u) m |= bit(targets[i]);
        scatter[s] = m;
    }

    std::vector<Complex> in(sub_dim), out(sub_dim);
    for (std::uint64_t k = 0; k < amps_.size(); ++k) {
        if (k & target_mask) continue;                      // canonical: target bits zero
        if ((k & control_mask) != control_mask) continue;   // all controls set
        for (std::uint64_t s = 0; s < sub_dim; ++s) in[s] = amps_[k | scatter[s]];
        for (std::uint64_t r = 0; r < sub_dim; ++r) {
            Complex acc = 0.0;
            for (std::uint64_t s = 0; s < sub_dim; ++s) acc += u(r, s) * in[s];
            out[r] = acc;
        }
        for (std::uint64_t s = 0; s < sub_dim; ++s) amps_[k | scatter[s]] = out[s];
    }
}

void StateVector::apply_xy_rotation(std::size_t a, std::size_t b, double theta,
                                    std::optional<std::size_t> control) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) throw std::invalid_argument("apply_xy_rotation: identical qubits");
    if (control) {
        check_qubit(*control);
        if (*control == a || *control == b)
            throw std::invalid_argument("apply_xy_rotation: control overlaps targets");
    }
    const double c = std::cos(theta);
    const Complex is{0.0, std::sin(theta)};

    // enumerate indices with bit a = 1, bit b = 0 (and control = 1 if present)
    std::vector<std::size_t> fixed{a, b};
    std::uint64_t values = 0b01;  // bit for 'a' set, bit for 'b' clear
    if (control) {
        fixed.push_back(*control);
        values |= 0b100;
    }
    std::vector<std::size_t> sorted = fixed;
    std::sort(sorted.begin(), sorted.end());
    // remap fixed-bit values to the sorted position order
    std::uint64_t sorted_values = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto original =
            std::find(fixed.begin(), fixed.end(), sorted[i]) - fixed.begin();
        sorted_values |= ((values >> original) & 1u) << i;
    }

    const std::uint64_t swap_mask = bit(a) | bit(b);
    const std::uint64_t count = amps_.size() >> sorted.size();
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t k01 = expand_index(i, sorted, sorted_values);
        const std::uint64_t k10 = k01 ^ swap_mask;
        const Complex a01 = amps_[k01];
        const Complex a10 = amps_[k10];
        amps_[k01] = c * a01 + is * a10;
        amps_[k10] = is * a01 + c * a10;
    }
}

void StateVector::apply_diagonal(std::span<const Complex> table, std::size_t table_qubits,
                                 std::optional<std::size_t> control) {
    if (table.size() != (std::size_t{1} << table_qubits))
        throw std::invalid_argument("apply_diagonal: table size != 2^table_qubits");
    if (table_qubits > n_qubits_)
        throw std::invalid_argument("apply_diagonal: table wider than register");
    const std::uint64_t mask = (std::uint64_t{1} << table_qubits) - 1;
    if (control) {
        check_qubit(*control);
        if (*control < table_qubits)
            throw std::invalid_argument("apply_diagonal: control inside table range");
        const std::uint64_t cbit = bit(*control);
        for (std::uint64_t k = 0; k < amps_.size(); ++k)
            if (k & cbit) amps_[k] *= table[k & mask];
    } else {
        for (std::uint64_t k = 0; k < amps_.size(); ++k) amps_[k] *= table[k & mask];
    }
}

void StateVector::apply_pauli_chain(const PauliChain& chain) {
    if (chain.size() != n_qubits_)
        throw std::invalid_argument("apply_pauli_chain: chain length != register size");
    static constexpr Complex i_powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::uint64_t flip = chain.x_mask() | chain.y_mask();
    const std::uint64_t yz = chain.y_mask() | chain.z_mask();
    const Complex front = chain.coefficient * i_powers[std::popcount(chain.y_mask()) & 3];
    if (flip == 0) {
        for (std::uint64_t k = 0; k < amps_.size(); ++k) {
            const double sign = (std::popcount(k & yz) & 1) ? -1.0 : 1.0;
            amps_[k] *= front * sign;
        }
        return;
    }
    for (std::uint64_t k = 0; k < amps_.size(); ++k) {
        const std::uint64_t partner = k ^ flip;
        if (partner < k) continue;
        const double sign_k = (std::popcount(k & yz) & 1) ? -1.0 : 1.0;
        const double sign_p = (std::popcount(partner & yz) & 1) ? -1.0 : 1.0;
        const Complex ak = amps_[k];
        amps_[k] = front * sign_p * amps_[partner];
        amps_[partner] = front * sign_k * ak;
    }
}

void StateVector::apply_controlled_pauli_chain(const PauliChain& chain, std::size_t control) {
    if (chain.size() > n_qubits_)
        throw std::invalid_argument("apply_controlled_pauli_chain: chain longer than register");
    check_qubit(control);
    if (control < chain.size())
        throw std::invalid_argument("apply_controlled_pauli_chain: control inside chain range");
    static constexpr Complex i_powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::uint64_t flip = chain.x_mask() | chain.y_mask();
    const std::uint64_t yz = chain.y_mask() | chain.z_mask();
    const Complex front = chain.coefficient * i_powers[std::popcount(chain.y_mask()) & 3];
    const std::uint64_t cbit = bit(control);
    for (std::uint64_t k = 0; k < amps_.size(); ++k) {
        if (!(k & cbit)) continue;
        const std::uint64_t partner = k ^ flip;
        if (flip != 0 && partner < k) continue;
        const double sign_k = (std::popcount(k & yz) & 1) ? -1.0 : 1.0;
        if (flip == 0) {
            amps_[k] *= front * sign_k;
            continue;
        }
        const double sign_p = (std::popcount(partner & yz) & 1) ? -1.0 : 1.0;
        const Complex ak = amps_[k];
        amps_[k] = front * sign_p * amps_[partner];
        amps_[partner] = front * sign_k * ak;
    }
}

void StateVector::swap_qubits(std::size_t a, std::size_t b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) return;
    const std::uint64_t ma = bit(a);
    const std::uint64_t mb = bit(b);
    for (std::uint64_t k = 0; k < amps_.size(); ++k) {
        const bool ba = k & ma;
        const bool bb = k & mb;
        if (ba && !bb) std::swap(amps_[k], amps_[(k ^ ma) | mb]);
    }
}

void StateVector::qft(std::span<const std::size_t> reg) {
    require_distinct(reg, "qft");
    for (std::size_t q : reg) check_qubit(q);
    const std::size_t m = reg.size();
    // product form with +2 pi i j k / 2^m convention, bit reversal at the end
    for (std::size_t i = m; i-- > 0;) {
        apply_hadamard(reg[i]);
        for (std::size_t j = i; j-- > 0;)
            apply_controlled_phase(reg[j], reg[i], std::numbers::pi / double(1u << (i - j)));
    }
    for (std::size_t i = 0; i < m / 2; ++i) swap_qubits(reg[i], reg[m - 1 - i]);
}

void StateVector::inverse_qft(std::span<const std::size_t> reg) {
    require_distinct(reg, "inverse_qft");
    for (std::size_t q : reg) check_qubit(q);
    const std::size_t m = reg.size();
    // exact reverse of qft() with conjugated phases
    for (std::size_t i = 0; i < m / 2; ++i) swap_qubits(reg[i], reg[m - 1 - i]);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < i; ++j)
            apply_controlled_phase(reg[j], reg[i], -std::numbers::pi / double(1u << (i - j)));
        apply_hadamard(reg[i]);
    }
}

std::vector<double> StateVector::register_marginal(std::span<const std::size_t> reg) const {
    require_distinct(reg, "register_marginal");
    for (std::size_t q : reg) check_qubit(q);
    if (reg.size() > 20) throw GuardError("register_marginal: register wider than 20 qubits");
    std::vector<double> probs(std::size_t{1} << reg.size(), 0.0);
    for (std::uint64_t k = 0; k < amps_.size(); ++k) {
        const double w = std::norm(amps_[k]);
        if (w > 0.0) probs[gather_bits(k, reg)] += w;
    }
    return probs;
}

std::uint64_t StateVector::measure_register(std::span<const std::size_t> reg, Rng& rng) {
    const std::vector<double> probs = register_marginal(reg);
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::uint64_t outcome = 0;
    bool hit = false;
    for (std::uint64_t o = 0; o < probs.size(); ++o) {
        if (probs[o] <= 0.0) continue;
        outcome = o;  // last nonzero branch backstops rounding drift in the total
        cumulative += probs[o];
        if (u < cumulative) {
            hit = true;
            break;
        }
    }
    (void)hit;
    // collapse
    const double p = probs[outcome];
    const double inv = 1.0 / std::sqrt(p);
    for (std::uint64_t k = 0; k < amps_.size(); ++k) {
        if (gather_bits(k, reg) == outcome)
            amps_[k] *= inv;
        else
            amps_[k] = 0.0;
    }
    return outcome;
}

Complex StateVector::pauli_chain_value(const PauliChain& chain) const {
    if (chain.size() != n_qubits_)
        throw std::invalid_argument("pauli_chain_value: chain length != register size");
    static constexpr Complex i_powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::uint64_t flip = chain.x_mask() | chain.y_mask();
    const std::uint64_t yz = chain.y_mask() | chain.z_mask();
    const Complex front = chain.coefficient * i_powers[std::popcount(chain.y_mask()) & 3];
    Complex acc = 0.0;
    for (std::uint64_t k = 0; k < amps_.size(); ++k) {
        const double sign = (std::popcount(k & yz) & 1) ? -1.0 : 1.0;
        acc += std::conj(amps_[k ^ flip]) * sign * amps_[k];
    }
    return front * acc;
}

double StateVector::expectation(const PauliChainSum& obs) const {
    double total = 0.0;
    for (const PauliChainSum::Term& term : obs.terms)
        total += term.weight * pauli_chain_value(term.chain).real();
    return total;
}

double StateVector::sampled_pauli_expectation(const PauliChain& chain, std::size_t shots,
                                              Rng& rng) const {
    if (shots == 0) return pauli_chain_value(chain).real();
    const double exact = pauli_chain_value(chain).real();
    const double p_plus = std::clamp(0.5 * (1.0 + exact), 0.0, 1.0);
    std::size_t plus = 0;
    for (std::size_t s = 0; s < shots; ++s)
        if (rng.uniform() < p_plus) ++plus;
    return 2.0 * double(plus) / double(shots) - 1.0;
}

StateVector StateVector::with_ancillas(std::size_t k) const {
    StateVector out(n_qubits_ + k);  // guards total size
    std::fill(out.amps_.begin(), out.amps_.end(), Complex{});
    std::copy(amps_.begin(), amps_.end(), out.amps_.begin());
    return out;
}

StateVector StateVector::drop_upper_qubits(std::size_t keep, std::uint64_t upper_bits) const {
    if (keep == 0 || keep > n_qubits_)
        throw std::invalid_argument("drop_upper_qubits: bad keep count");
    StateVector out(keep);
    const std::uint64_t block = std::uint64_t{1} << keep;
    const std::uint64_t offset = upper_bits << keep;
    for (std::uint64_t k = 0; k < block; ++k) out.amps_[k] = amps_[offset + k];
    for (std::uint64_t k = 0; k < amps_.size(); ++k) {
        if ((k >> keep) != upper_bits && std::abs(amps_[k]) > 1e-12)
            throw std::invalid_argument(
                "drop_upper_qubits: upper register not in the requested basis state");
    }
    return out;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("inner_product: register sizes differ");
    Complex acc = 0.0;
    const auto aa = a.amplitudes();
    const auto bb = b.amplitudes();
    for (std::size_t k = 0; k < aa.size(); ++k) acc += std::conj(aa[k]) * bb[k];
    return acc;
}

}  // namespace pairsim
