#pragma once

#include <Eigen/Dense>
#include <functional>

namespace capa {

/// Tensor-product Gauss-Legendre rule mapped to a rectangle centered at the
/// origin of the aperture plane. Weights carry the area element (m^2).
struct QuadratureGrid {
  Eigen::Matrix<double, Eigen::Dynamic, 2> nodes;  // one row per node [m]
  Eigen::VectorXd weights;                         // [m^2], strictly positive
  int order = 0;                                   // points per axis

  Eigen::Index size() const { return weights.size(); }
  double area() const { return weights.sum(); }
};

QuadratureGrid gauss_legendre_grid(double half_len_x, double half_len_y, int order);

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending,
/// eigenvectors as unitary columns.
struct HermitianEigen {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

/// Throws std::invalid_argument("not-hermitian") when the input asymmetry
/// exceeds 1e-10 relative Frobenius norm.
HermitianEigen hermitian_eig(const Eigen::MatrixXcd& matrix);

/// Root bracketing for monotonically non-increasing f. Returns x with
/// |f(x) - target| <= rel_tol * max(|target|, 1e-12), or throws
/// std::runtime_error("bracket-failure") when target lies outside
/// [f(hi), f(lo)]. Terminates within 200 iterations.
double bisect_decreasing(const std::function<double(double)>& f, double target,
                         double lo, double hi, double rel_tol);

}  // namespace capa
