#include "xxcrit/linalg.hpp"

namespace xxcrit::linalg {

cplx determinant(const Eigen::MatrixXcd& a) {
  if (a.rows() == 0) return 1.0;
  return a.partialPivLu().determinant();
}

Eigen::MatrixXcd adjugate(const Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return Eigen::MatrixXcd(0, 0);
  if (n == 1) return Eigen::MatrixXcd::Ones(1, 1);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  // prod_{j != i} s_j via prefix/suffix products.
  Eigen::VectorXd others(n);
  double prefix = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    others(i) = prefix;
    prefix *= s(i);
  }
  double suffix = 1.0;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    others(i) *= suffix;
    suffix *= s(i);
  }
  const cplx phase = determinant(svd.matrixU()) * std::conj(determinant(svd.matrixV()));
  return phase * (svd.matrixV() * others.asDiagonal() * svd.matrixU().adjoint());
}

double hermiticity_defect(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace xxcrit::linalg
