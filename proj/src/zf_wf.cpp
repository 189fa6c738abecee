#include "capa/zf_wf.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "capa/numerics.hpp"

namespace capa {

Eigen::MatrixXcd zf_directions(const Eigen::MatrixXcd& gram_raw, int num_luts) {
  const HermitianEigen eig = hermitian_eig(gram_raw);
  const double ev_min = eig.eigenvalues.minCoeff();
  const double ev_max = eig.eigenvalues.maxCoeff();
  if (ev_min <= 0.0 || ev_max / ev_min > 1e12) {
    throw std::runtime_error("singular-gram: near-collinear channel responses");
  }
  // Linear solve against the identity rather than an explicit inverse.
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram_raw);
  const Eigen::MatrixXcd inverse =
      ldlt.solve(Eigen::MatrixXcd::Identity(gram_raw.rows(), gram_raw.cols()));
  return inverse.leftCols(num_luts);
}

std::pair<Eigen::VectorXd, double> water_fill(const Eigen::VectorXd& zf_norms,
                                              const Eigen::VectorXd& noise_powers,
                                              const Eigen::VectorXd& weights,
                                              double power_budget) {
  const Eigen::Index k_users = zf_norms.size();
  const Eigen::VectorXd floor_cost = noise_powers.cwiseProduct(zf_norms);

  std::vector<bool> active(k_users, true);
  for (Eigen::Index k = 0; k < k_users; ++k) {
    if (weights(k) <= 0.0) active[k] = false;
  }
  double mu = 0.0;
  // Drop-and-recompute loop: remove users whose floor exceeds the water level.
  for (Eigen::Index pass = 0; pass <= k_users; ++pass) {
    double cost_sum = 0.0;
    double weight_sum = 0.0;
    for (Eigen::Index k = 0; k < k_users; ++k) {
      if (!active[k]) continue;
      cost_sum += floor_cost(k);
      weight_sum += weights(k);
    }
    if (weight_sum <= 0.0) break;
    mu = (power_budget + cost_sum) / weight_sum;
    bool dropped = false;
    for (Eigen::Index k = 0; k < k_users; ++k) {
      if (active[k] && mu * weights(k) <= floor_cost(k)) {
        active[k] = false;
        dropped = true;
      }
    }
    if (!dropped) break;
  }
  Eigen::VectorXd allocations = Eigen::VectorXd::Zero(k_users);
  for (Eigen::Index k = 0; k < k_users; ++k) {
    if (active[k]) allocations(k) = mu * weights(k) - floor_cost(k);
  }
  return {allocations, mu};
}

ZfResult run_zf(const GramSystem& gram) {
  const int k_users = gram.num_luts;
  ZfResult result;
  result.solution.zf_coeffs = zf_directions(gram.gram_raw, k_users);
  result.solution.zf_norms.resize(k_users);
  for (int k = 0; k < k_users; ++k) {
    result.solution.zf_norms(k) = result.solution.zf_coeffs(k, k).real();
  }
  std::tie(result.solution.allocations, result.solution.water_level) =
      water_fill(result.solution.zf_norms, gram.noise_powers.head(k_users),
                 gram.weights, gram.power_budget);

  // Raw-basis coefficients sqrt(P_k / norm_k) v_k, converted to the
  // noise-normalized basis by scaling coefficient n with sigma_n.
  const Eigen::VectorXd noise_std = gram.noise_powers.array().sqrt();
  result.coeffs.basis_normalized = true;
  result.coeffs.coeffs =
      Eigen::MatrixXcd::Zero(gram.num_receivers(), k_users);
  for (int k = 0; k < k_users; ++k) {
    const double pk = result.solution.allocations(k);
    if (pk <= 0.0) continue;
    const double amp = std::sqrt(pk / result.solution.zf_norms(k));
    result.coeffs.coeffs.col(k) =
        amp * result.solution.zf_coeffs.col(k).cwiseProduct(noise_std.cast<cplx>());
  }
  result.metrics = evaluate_metrics(gram, result.coeffs);
  return result;
}

}  // namespace capa
