#pragma once

#include "pairsim/complex_matrix.hpp"

namespace pairsim {

/// Full spectrum of a Hermitian matrix by cyclic Jacobi rotations.
/// Eigenvalues ascend; eigenvector columns are orthonormal and satisfy
/// ||A v - lambda v|| < 1e-9 per column. Input must be square and Hermitian
/// within 1e-10.
EigenResult hermitian_eigen(const ComplexMatrix& a);

/// Generalized eigenproblem H c = E O c over a non-orthogonal basis.
///
/// The overlap matrix O is diagonalized first; eigenpairs with eigenvalue
/// <= threshold are discarded and the rest define a canonically
/// orthonormalized basis (each direction scaled by 1/sqrt(lambda)). H is
/// then diagonalized in that basis. Returns J <= M eigenvalues ascending,
/// coefficients both in the original basis (`eigenvectors`) and in the
/// orthonormalized one (`orthonormal_coefficients`).
///
/// Overlap eigenvalues in (-1e-10, 0] are clamped to zero and pruned; an
/// eigenvalue below -1e-10 is rejected as estimator noise too large for a
/// meaningful Gram matrix.
EigenResult solve_generalized(const ComplexMatrix& h, const ComplexMatrix& o, double threshold);

}  // namespace pairsim
