#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pairsim {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Small and value-semantic; used for
/// overlap/Hamiltonian matrices, gate blocks and the dense oracle, all of
/// which stay well below ~10^3 rows.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return entries_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<Complex> data() { return entries_; }
    std::span<const Complex> data() const { return entries_; }

    bool is_square() const { return rows_ == cols_; }
    /// Max |A(i,j) - conj(A(j,i))| over all pairs (0 for non-square).
    double hermiticity_defect() const;
    bool is_hermitian(double tol = 1e-12) const;
    /// Max |(U†U - I)(i,j)|; requires square.
    double unitarity_defect() const;

    double frobenius_norm() const;
    double off_diagonal_norm() const;

    ComplexMatrix adjoint() const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    std::vector<Complex> apply(std::span<const Complex> v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// Result of a Hermitian eigendecomposition or of the pruned generalized
/// eigenproblem. Eigenvalues ascend; eigenvector k is column k.
///
/// For the generalized problem the columns of `eigenvectors` are the
/// coefficients expressed in the original (non-orthogonal) basis, while
/// `orthonormal_coefficients` carries the same eigenvectors in the
/// canonically orthonormalized basis; both views are reported since either
/// convention is in common use. For a plain eigendecomposition
/// `orthonormal_coefficients` is empty and retained_dim equals the dimension.
struct EigenResult {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
    ComplexMatrix orthonormal_coefficients;
    std::size_t retained_dim = 0;
};

}  // namespace pairsim
