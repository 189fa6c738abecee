#include "capa/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace capa {

namespace {

// Golub-Welsch: nodes/weights of the n-point rule on [-1, 1] from the
// symmetric tridiagonal Jacobi matrix of the Legendre recurrence.
void legendre_rule(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  if (n == 1) {
    x = Eigen::VectorXd::Zero(1);
    w = Eigen::VectorXd::Constant(1, 2.0);
    return;
  }
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  x = es.eigenvalues();
  w = 2.0 * es.eigenvectors().row(0).array().square();
}

}  // namespace

QuadratureGrid gauss_legendre_grid(double half_len_x, double half_len_y, int order) {
  if (order < 1) {
    throw std::invalid_argument("invalid-order: quadrature order must be >= 1");
  }
  if (half_len_x <= 0.0 || half_len_y <= 0.0) {
    throw std::invalid_argument("invalid-order: aperture half-lengths must be > 0");
  }
  Eigen::VectorXd x1, w1;
  legendre_rule(order, x1, w1);

  QuadratureGrid grid;
  grid.order = order;
  const Eigen::Index n = static_cast<Eigen::Index>(order) * order;
  grid.nodes.resize(n, 2);
  grid.weights.resize(n);
  Eigen::Index idx = 0;
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j, ++idx) {
      grid.nodes(idx, 0) = half_len_x * x1(i);
      grid.nodes(idx, 1) = half_len_y * x1(j);
      grid.weights(idx) = half_len_x * half_len_y * w1(i) * w1(j);
    }
  }
  return grid;
}

HermitianEigen hermitian_eig(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("not-hermitian: matrix must be square");
  }
  const double scale = matrix.norm();
  const double asym = (matrix - matrix.adjoint()).norm();
  if (scale > 0.0 && asym > 1e-10 * scale) {
    throw std::invalid_argument("not-hermitian: asymmetry exceeds tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (matrix + matrix.adjoint()));
  HermitianEigen out;
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  return out;
}

double bisect_decreasing(const std::function<double(double)>& f, double target,
                         double lo, double hi, double rel_tol) {
  const double tol = rel_tol * std::max(std::abs(target), 1e-12);
  double flo = f(lo);
  double fhi = f(hi);
  if (flo < target - tol || fhi > target + tol) {
    throw std::runtime_error("bracket-failure: target outside [f(hi), f(lo)]");
  }
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm - target) <= tol) {
      return mid;
    }
    if (fm > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace capa
