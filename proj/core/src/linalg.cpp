#include "pairsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pairsim/errors.hpp"

namespace pairsim {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr std::size_t kMaxSweeps = 80;

// One complex Jacobi rotation annihilating a(p, q). The 2x2 unitary on the
// (p, q) plane is G = [[c, -s f], [s conj(f), c]] with f = a_pq / |a_pq|;
// a <- G† a G, and v accumulates v <- v G.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;

    const Complex f = apq / mag;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (app - aqq) / (2.0 * mag);
    double t;
    if (tau == 0.0) {
        t = 1.0;
    } else {
        t = (tau > 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = a.rows();
    const Complex gpq = -s * f;          // G(p,q)
    const Complex gqp = s * std::conj(f);  // G(q,p)

    // columns: a <- a G
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp + gqp * akq;
        a(k, q) = gpq * akp + c * akq;
    }
    // rows: a <- G† a
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk + std::conj(gqp) * aqk;
        a(q, k) = std::conj(gpq) * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
    // accumulate eigenvectors
    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp + gqp * vkq;
        v(k, q) = gpq * vkp + c * vkq;
    }
}

void require_square_hermitian(const ComplexMatrix& a, const char* who) {
    if (!a.is_square())
        throw std::invalid_argument(std::string(who) + ": matrix not square");
    if (a.hermiticity_defect() > kHermitianTol)
        throw std::invalid_argument(std::string(who) + ": Hermiticity violated beyond 1e-10");
}

}  // namespace

EigenResult hermitian_eigen(const ComplexMatrix& input) {
    require_square_hermitian(input, "hermitian_eigen");
    const std::size_t n = input.rows();

    // work on the exact Hermitian average to remove representational drift
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = a.frobenius_norm();
    if (scale > 0.0) {
        const double target = 1e-12 * scale;
        bool converged = false;
        for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
            if (a.off_diagonal_norm() < target) {
                converged = true;
                break;
            }
            for (std::size_t p = 0; p + 1 < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q)
                    rotate(a, v, p, q);
        }
        if (!converged && a.off_diagonal_norm() >= target)
            throw ConvergenceError("hermitian_eigen: Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenResult result;
    result.eigenvalues.resize(n);
    result.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        result.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, k) = v(i, order[k]);
    }
    result.retained_dim = n;
    return result;
}

EigenResult solve_generalized(const ComplexMatrix& h, const ComplexMatrix& o, double threshold) {
    require_square_hermitian(h, "solve_generalized(H)");
    require_square_hermitian(o, "solve_generalized(O)");
    if (h.rows() != o.rows())
        throw std::invalid_argument("solve_generalized: H and O dimensions differ");
    const std::size_t m = o.rows();

    EigenResult eo = hermitian_eigen(o);
    if (!eo.eigenvalues.empty() && eo.eigenvalues.front() < -1e-10)
        throw std::invalid_argument(
            "solve_generalized: overlap matrix has eigenvalue below -1e-10 "
            "(estimator noise too large)");

    // retain directions above the threshold; negatives in (-1e-10, 0] clamp to 0 and prune
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < m; ++i) {
        const double lambda = std::max(eo.eigenvalues[i], 0.0);
        if (lambda > threshold) kept.push_back(i);
    }
    if (kept.empty())
        throw ConvergenceError("solve_generalized: every overlap eigenvalue pruned by threshold");
    const std::size_t j = kept.size();

    // canonical orthonormalization: columns v_i / sqrt(lambda_i)
    ComplexMatrix basis(m, j);
    for (std::size_t col = 0; col < j; ++col) {
        const double inv_sqrt = 1.0 / std::sqrt(eo.eigenvalues[kept[col]]);
        for (std::size_t row = 0; row < m; ++row)
            basis(row, col) = eo.eigenvectors(row, kept[col]) * inv_sqrt;
    }

    ComplexMatrix projected = basis.adjoint() * h * basis;
    // enforce exact Hermiticity for the inner solve
    for (std::size_t r = 0; r < j; ++r)
        for (std::size_t c = r; c < j; ++c) {
            const Complex avg = 0.5 * (projected(r, c) + std::conj(projected(c, r)));
            projected(r, c) = avg;
            projected(c, r) = std::conj(avg);
        }

    EigenResult inner = hermitian_eigen(projected);

    EigenResult result;
    result.eigenvalues = inner.eigenvalues;
    result.orthonormal_coefficients = inner.eigenvectors;
    result.eigenvectors = basis * inner.eigenvectors;
    result.retained_dim = j;
    return result;
}

}  // namespace pairsim
