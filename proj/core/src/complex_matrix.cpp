#include "pairsim/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pairsim {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    if (!is_square()) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    return is_square() && hermiticity_defect() <= tol;
}

double ComplexMatrix::unitarity_defect() const {
    if (!is_square()) throw std::invalid_argument("unitarity_defect: matrix not square");
    double worst = 0.0;
    for (std::size_t i = 0; i < cols_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            Complex dot = 0.0;
            for (std::size_t k = 0; k < rows_; ++k)
                dot += std::conj((*this)(k, i)) * (*this)(k, j);
            if (i == j) dot -= 1.0;
            worst = std::max(worst, std::abs(dot));
        }
    }
    return worst;
}

double ComplexMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (const Complex& z : entries_) sum += std::norm(z);
    return std::sqrt(sum);
}

double ComplexMatrix::off_diagonal_norm() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j) sum += std::norm((*this)(i, j));
    return std::sqrt(sum);
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
    if (v.size() != cols_) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<Complex> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace pairsim
