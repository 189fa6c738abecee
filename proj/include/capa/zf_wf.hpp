#pragma once

#include <Eigen/Dense>
#include <utility>

#include "capa/metrics.hpp"

namespace capa {

/// Zero-leakage, zero-interference current design from the inverse Gram
/// matrix, with weighted water-filling power allocation.
struct ZfSolution {
  Eigen::MatrixXcd zf_coeffs;   // N x K, column k = k-th column of H^{-1} (raw basis)
  Eigen::VectorXd zf_norms;     // [H^{-1}]_kk = integral of |J_k^ZF|^2
  Eigen::VectorXd allocations;  // P_k >= 0
  double water_level = 0.0;     // mu
};

/// First K columns of gram_raw^{-1}. Throws
/// std::runtime_error("singular-gram") when the condition number exceeds 1e12.
Eigen::MatrixXcd zf_directions(const Eigen::MatrixXcd& gram_raw, int num_luts);

/// Active-set water-filling for max sum alpha_k log2(1 + P_k / n_k) with
/// n_k = noise_k * zf_norm_k under sum P_k <= P. Returns (allocations, mu).
std::pair<Eigen::VectorXd, double> water_fill(const Eigen::VectorXd& zf_norms,
                                              const Eigen::VectorXd& noise_powers,
                                              const Eigen::VectorXd& weights,
                                              double power_budget);

struct ZfResult {
  BeamCoefficients coeffs;  // noise-normalized basis, power-allocated
  MetricsReport metrics;
  ZfSolution solution;
};

ZfResult run_zf(const GramSystem& gram);

}  // namespace capa
