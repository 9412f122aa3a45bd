#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pairsim/ansatz.hpp"
#include "pairsim/errors.hpp"
#include "pairsim/linalg.hpp"
#include "pairsim/projection.hpp"

namespace pairsim::oracles {

Complex determinant_cofactor(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("determinant: not square");
    if (n == 1) return a(0, 0);
    if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    Complex det = 0.0;
    double sign = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        ComplexMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t mj = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == col) continue;
                minor(i - 1, mj++) = a(i, j);
            }
        }
        det += sign * a(0, col) * determinant_cofactor(minor);
        sign = -sign;
    }
    return det;
}

namespace {

double char_poly(const ComplexMatrix& a, double x) {
    ComplexMatrix shifted = a;
    for (std::size_t i = 0; i < a.rows(); ++i) shifted(i, i) -= x;
    // Hermitian shift keeps the determinant real
    return determinant_cofactor(shifted).real();
}

}  // namespace

std::vector<double> eigenvalues_by_determinant(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    // Gershgorin bounds
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) radius += std::abs(a(i, j));
        lo = std::min(lo, a(i, i).real() - radius);
        hi = std::max(hi, a(i, i).real() + radius);
    }
    lo -= 1e-6;
    hi += 1e-6;

    std::vector<double> roots;
    for (std::size_t grid = 4096; roots.size() < n && grid <= 1u << 20; grid *= 4) {
        roots.clear();
        double prev_x = lo;
        double prev_f = char_poly(a, lo);
        for (std::size_t i = 1; i <= grid; ++i) {
            const double x = lo + (hi - lo) * double(i) / double(grid);
            const double f = char_poly(a, x);
            if (prev_f == 0.0) roots.push_back(prev_x);
            if (prev_f * f < 0.0) {
                double left = prev_x, right = x, fl = prev_f;
                for (int it = 0; it < 200 && right - left > 1e-13 * (1.0 + std::abs(left));
                     ++it) {
                    const double mid = 0.5 * (left + right);
                    const double fm = char_poly(a, mid);
                    if (fl * fm <= 0.0)
                        right = mid;
                    else {
                        left = mid;
                        fl = fm;
                    }
                }
                roots.push_back(0.5 * (left + right));
            }
            prev_x = x;
            prev_f = f;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<Complex> expm_apply(const ComplexMatrix& h, double t, std::span<const Complex> v) {
    const EigenResult eig = hermitian_eigen(h);
    const std::size_t n = h.rows();
    std::vector<Complex> out(n, Complex{});
    for (std::size_t k = 0; k < n; ++k) {
        Complex overlap = 0.0;
        for (std::size_t i = 0; i < n; ++i) overlap += std::conj(eig.eigenvectors(i, k)) * v[i];
        const Complex phase = std::polar(1.0, -eig.eigenvalues[k] * t) * overlap;
        for (std::size_t i = 0; i < n; ++i) out[i] += phase * eig.eigenvectors(i, k);
    }
    return out;
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = 2.0 * rng.uniform() - 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex z{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
            a(i, j) = z;
            a(j, i) = std::conj(z);
        }
    }
    return a;
}

StateVector random_state(std::size_t n_qubits, Rng& rng) {
    StateVector state(n_qubits);
    auto amps = state.amplitudes_mut();
    for (Complex& amp : amps) {
        // Box-Muller pair
        const double u1 = std::max(rng.uniform(), 1e-16);
        const double u2 = rng.uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        amp = {r * std::cos(2.0 * std::numbers::pi * u2),
               r * std::sin(2.0 * std::numbers::pi * u2)};
    }
    state.normalize();
    return state;
}

double sector_weight_closed_form(const std::vector<double>& thetas, std::size_t pairs) {
    // DP over levels: coefficients of prod_p (sin^2 + cos^2 x)
    std::vector<double> coeff(thetas.size() + 1, 0.0);
    coeff[0] = 1.0;
    for (double theta : thetas) {
        const double c2 = std::cos(theta) * std::cos(theta);
        const double s2 = 1.0 - c2;
        for (std::size_t k = coeff.size() - 1; k > 0; --k)
            coeff[k] = coeff[k] * s2 + coeff[k - 1] * c2;
        coeff[0] *= s2;
    }
    return pairs < coeff.size() ? coeff[pairs] : 0.0;
}

std::vector<double> qpe_outcome_distribution(const std::vector<double>& eigenvalues,
                                             const std::vector<double>& weights, std::size_t n_q,
                                             double e_min, double e_max) {
    const std::size_t bins = std::size_t{1} << n_q;
    std::vector<double> probs(bins, 0.0);
    for (std::size_t alpha = 0; alpha < eigenvalues.size(); ++alpha) {
        const double phi = std::fmod(
            1.0 - (eigenvalues[alpha] - e_min) / (e_max - e_min) + 2.0, 1.0);
        for (std::size_t j = 0; j < bins; ++j) {
            const double delta = phi - double(j) / double(bins);
            // |1/M sum_k e^{2 pi i k delta}|^2
            const double angle = std::numbers::pi * delta;
            double kernel;
            const double denom = std::sin(angle);
            if (std::abs(denom) < 1e-14) {
                kernel = 1.0;
            } else {
                const double ratio = std::sin(double(bins) * angle) / (double(bins) * denom);
                kernel = ratio * ratio;
            }
            probs[j] += weights[alpha] * kernel;
        }
    }
    return probs;
}

double classical_vap_minimum(const PairingSpec& spec, std::size_t restarts, Rng& rng) {
    const PauliChainSum chains = hamiltonian_chains(spec);
    const auto projected_energy = [&](const std::vector<double>& thetas) {
        AnsatzParams params;
        params.thetas = thetas;
        try {
            return projector_oracle(prepare_bcs(params), spec.target_pairs).expectation(chains);
        } catch (const EmptySectorError&) {
            return 1e9;
        }
    };

    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double best = 1e300;
    for (std::size_t restart = 0; restart < restarts; ++restart) {
        std::vector<double> thetas(spec.levels);
        for (double& theta : thetas) theta = rng.uniform() * std::numbers::pi;
        double current = projected_energy(thetas);
        // cyclic coordinate descent, golden-section line search per angle
        for (std::size_t sweep = 0; sweep < 200; ++sweep) {
            const double before = current;
            for (std::size_t p = 0; p < spec.levels; ++p) {
                double lo = thetas[p] - std::numbers::pi / 2.0;
                double hi = thetas[p] + std::numbers::pi / 2.0;
                double x1 = hi - golden * (hi - lo);
                double x2 = lo + golden * (hi - lo);
                auto at = [&](double x) {
                    std::vector<double> trial = thetas;
                    trial[p] = x;
                    return projected_energy(trial);
                };
                double f1 = at(x1), f2 = at(x2);
                for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
                    if (f1 < f2) {
                        hi = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = hi - golden * (hi - lo);
                        f1 = at(x1);
                    } else {
                        lo = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = lo + golden * (hi - lo);
                        f2 = at(x2);
                    }
                }
                thetas[p] = 0.5 * (lo + hi);
                current = projected_energy(thetas);
            }
            if (before - current < 1e-13) break;
        }
        best = std::min(best, current);
    }
    return best;
}

std::vector<Complex> apply_chain_sum(const PauliChainSum& sum, const StateVector& psi) {
    std::vector<Complex> out(psi.dim(), Complex{});
    for (const PauliChainSum::Term& term : sum.terms) {
        StateVector scratch = psi;
        scratch.apply_pauli_chain(term.chain);
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] += term.weight * scratch.amplitude(k);
    }
    return out;
}

StateVector embed_sector_vector(std::size_t levels, std::size_t pairs,
                                std::span<const Complex> coefficients) {
    const std::vector<std::uint64_t> basis = sector_basis(levels, pairs);
    if (basis.size() != coefficients.size())
        throw std::invalid_argument("embed_sector_vector: coefficient count != sector dim");
    StateVector state(levels);
    auto amps = state.amplitudes_mut();
    std::fill(amps.begin(), amps.end(), Complex{});
    for (std::size_t i = 0; i < basis.size(); ++i) amps[basis[i]] = coefficients[i];
    state.normalize();
    return state;
}

}  // namespace pairsim::oracles
