#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include <json.hpp>

#include "capa/metrics.hpp"
#include "capa/numerics.hpp"

namespace capa {

struct FpConfig {
  int max_iters = 100;
  double wssr_tol = 1e-4;         // bits/s/Hz
  double lambda_rel_tol = 1e-10;
  double eta_floor = 1e-15;

  static FpConfig from_json(const nlohmann::json& doc);
};

/// Auxiliary-variable state of the BCD loop. The (eps, beta, eta, lambda,
/// b_at_current) fields hold the values used in the most recent current
/// update, which is what the stationarity residual is defined against; b is
/// refreshed after the current update per the algorithm's step order.
struct FpState {
  Eigen::VectorXd b;             // in {0, alpha_k}
  Eigen::VectorXd eps;           // epsilon_k >= 0
  Eigen::VectorXd beta;          // beta_k in [0, G_Gamma]
  Eigen::VectorXcd eta;          // eta_k
  double lambda = 0.0;           // Lagrange multiplier of the power constraint
  Eigen::VectorXd b_at_current;  // b as frozen during the last current update
  BeamCoefficients coeffs;
  std::vector<double> wssr_trace;
  double g_gamma = 0.0;
};

/// MRT start: c_k = sqrt(P/K) e_k / sqrt([H_norm]_kk), an equal power split.
BeamCoefficients init_mrt(const GramSystem& gram, double power_budget);

Eigen::VectorXd update_b(const MetricsReport& metrics, const Eigen::VectorXd& weights);
Eigen::VectorXd update_epsilon(const Eigen::MatrixXcd& gram_norm,
                               const Eigen::MatrixXcd& coeffs, int num_luts);
Eigen::VectorXd update_beta(const MetricsReport& metrics, double g_gamma);

/// eta_k = S[k,k] / (1 + sum_i |S[k,i]|^2); the denominator sums over all i
/// including i = k.
Eigen::VectorXcd update_eta(const Eigen::MatrixXcd& gram_norm,
                            const Eigen::MatrixXcd& coeffs, int num_luts);

/// Per-user real scale vector: sqrt(b_i (1+eps_i)) |eta_i| on LUT rows,
/// sqrt((1+beta_k)/(1+G_Gamma)) on Eve rows.
Eigen::VectorXd phi_scales(const FpState& state, int num_luts, int k);

/// Phi_k = s_k s_k^T (elementwise) H_norm; Hermitian PSD.
Eigen::MatrixXcd build_phi(const Eigen::MatrixXcd& gram_norm, const FpState& state,
                           int num_luts, int k);

/// Transmit power of user k at multiplier lambda_L, from the eigendecomposition
/// of Phi_k: |a_kk|^2 sum_n |[u_kk]_n|^2 lambda_n / (lambda_L + lambda_n)^2.
double power_of_lambda(const HermitianEigen& phi_eig, int k, double a_mag,
                       double lambda_L);

/// Binary search for the multiplier making the total power equal P; returns
/// the 1e-12 floor when the constraint is slack there. Throws
/// std::runtime_error("all-users-off") when no user is active.
double solve_lambda(const FpState& state, const Eigen::MatrixXcd& gram_norm,
                    int num_luts, double power_budget, const FpConfig& config);

/// Closed-form current update: c_{k,n} = a_kk [(lambda I + Phi_k)^{-1} e_k]_n
/// s_{k,n} with a_kk = sqrt(b_k (1+eps_k)) eta_k/|eta_k|; shut-off users get a
/// zero column.
BeamCoefficients update_currents(const FpState& state,
                                 const Eigen::MatrixXcd& gram_norm, int num_luts,
                                 double lambda_L, const FpConfig& config);

/// The full BCD loop: epsilon -> beta -> eta -> {lambda, currents} -> b, with
/// the WSSR recorded after every sweep; stops when the increment drops below
/// wssr_tol or max_iters is reached.
std::pair<BeamCoefficients, FpState> run_bcd(const GramSystem& gram,
                                             const FpConfig& config = {});

}  // namespace capa
