#pragma once

#include <complex>

#include <Eigen/Dense>

namespace xxcrit::linalg {

using cplx = std::complex<double>;

/// Determinant via partial-pivot LU.
cplx determinant(const Eigen::MatrixXcd& a);

/// Adjugate adj(A) = det(A) A^{-1}, evaluated through the SVD so that it stays
/// well defined (and continuous) when A is singular.
Eigen::MatrixXcd adjugate(const Eigen::MatrixXcd& a);

/// Largest |A - A^dagger| entry.
double hermiticity_defect(const Eigen::MatrixXcd& a);

/// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& a);

}  // namespace xxcrit::linalg
