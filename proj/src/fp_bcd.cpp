#include "capa/fp_bcd.hpp"

#include <cmath>
#include <stdexcept>

namespace capa {

namespace {

bool user_active(const FpState& state, int k, const FpConfig& config) {
  return state.b(k) > 0.0 && std::abs(state.eta(k)) > config.eta_floor;
}

}  // namespace

FpConfig FpConfig::from_json(const nlohmann::json& doc) {
  FpConfig cfg;
  if (doc.contains("max_iters")) cfg.max_iters = doc["max_iters"].get<int>();
  if (doc.contains("wssr_tol")) cfg.wssr_tol = doc["wssr_tol"].get<double>();
  if (doc.contains("lambda_rel_tol")) cfg.lambda_rel_tol = doc["lambda_rel_tol"].get<double>();
  if (doc.contains("eta_floor")) cfg.eta_floor = doc["eta_floor"].get<double>();
  if (cfg.max_iters <= 0 || cfg.wssr_tol <= 0.0 || cfg.lambda_rel_tol <= 0.0 ||
      cfg.eta_floor <= 0.0) {
    throw std::invalid_argument("fp config: all fields must be positive");
  }
  return cfg;
}

BeamCoefficients init_mrt(const GramSystem& gram, double power_budget) {
  const int k_users = gram.num_luts;
  BeamCoefficients coeffs;
  coeffs.basis_normalized = true;
  coeffs.coeffs = Eigen::MatrixXcd::Zero(gram.num_receivers(), k_users);
  const double per_user = power_budget / k_users;
  for (int k = 0; k < k_users; ++k) {
    coeffs.coeffs(k, k) = std::sqrt(per_user / gram.gram_norm(k, k).real());
  }
  return coeffs;
}

Eigen::VectorXd update_b(const MetricsReport& metrics, const Eigen::VectorXd& weights) {
  Eigen::VectorXd b(weights.size());
  for (Eigen::Index k = 0; k < b.size(); ++k) {
    b(k) = metrics.sinr(k) >= metrics.leakage(k) ? weights(k) : 0.0;
  }
  return b;
}

Eigen::VectorXd update_epsilon(const Eigen::MatrixXcd& gram_norm,
                               const Eigen::MatrixXcd& coeffs, int num_luts) {
  const Eigen::MatrixXcd s = signal_matrix(gram_norm, coeffs);
  Eigen::VectorXd eps(num_luts);
  for (int k = 0; k < num_luts; ++k) {
    double interference = 0.0;
    for (int i = 0; i < num_luts; ++i) {
      if (i != k) interference += std::norm(s(k, i));
    }
    eps(k) = std::norm(s(k, k)) / (1.0 + interference);
  }
  return eps;
}

Eigen::VectorXd update_beta(const MetricsReport& metrics, double g_gamma) {
  return (g_gamma - metrics.leakage.array()) / (1.0 + metrics.leakage.array());
}

Eigen::VectorXcd update_eta(const Eigen::MatrixXcd& gram_norm,
                            const Eigen::MatrixXcd& coeffs, int num_luts) {
  const Eigen::MatrixXcd s = signal_matrix(gram_norm, coeffs);
  Eigen::VectorXcd eta(num_luts);
  for (int k = 0; k < num_luts; ++k) {
    double denom = 1.0;
    for (int i = 0; i < num_luts; ++i) denom += std::norm(s(k, i));
    eta(k) = s(k, k) / denom;
  }
  return eta;
}

Eigen::VectorXd phi_scales(const FpState& state, int num_luts, int k) {
  const Eigen::Index total = state.coeffs.coeffs.rows();
  Eigen::VectorXd scales(total);
  for (int i = 0; i < num_luts; ++i) {
    scales(i) = std::sqrt(state.b(i) * (1.0 + state.eps(i))) * std::abs(state.eta(i));
  }
  const double eve_scale = std::sqrt((1.0 + state.beta(k)) / (1.0 + state.g_gamma));
  for (Eigen::Index i = num_luts; i < total; ++i) scales(i) = eve_scale;
  return scales;
}

Eigen::MatrixXcd build_phi(const Eigen::MatrixXcd& gram_norm, const FpState& state,
                           int num_luts, int k) {
  const Eigen::VectorXd scales = phi_scales(state, num_luts, k);
  return scales.asDiagonal() * gram_norm * scales.asDiagonal();
}

double power_of_lambda(const HermitianEigen& phi_eig, int k, double a_mag,
                       double lambda_L) {
  double power = 0.0;
  for (Eigen::Index n = 0; n < phi_eig.eigenvalues.size(); ++n) {
    const double ev = std::max(phi_eig.eigenvalues(n), 0.0);
    // [u_kk]_n = conj(V(k, n)) for Phi = V diag V^H.
    const double weight = std::norm(phi_eig.eigenvectors(k, n));
    const double denom = lambda_L + ev;
    power += weight * ev / (denom * denom);
  }
  return a_mag * a_mag * power;
}

namespace {

struct LambdaSearchWork {
  std::vector<int> active_users;
  std::vector<HermitianEigen> eigs;   // aligned with active_users
  std::vector<double> a_mags;
};

LambdaSearchWork prepare_lambda_work(const FpState& state,
                                     const Eigen::MatrixXcd& gram_norm,
                                     int num_luts, const FpConfig& config) {
  LambdaSearchWork work;
  for (int k = 0; k < num_luts; ++k) {
    if (!user_active(state, k, config)) continue;
    work.active_users.push_back(k);
    work.eigs.push_back(hermitian_eig(build_phi(gram_norm, state, num_luts, k)));
    work.a_mags.push_back(std::sqrt(state.b(k) * (1.0 + state.eps(k))));
  }
  return work;
}

constexpr double kLambdaFloor = 1e-12;

double solve_lambda_impl(const LambdaSearchWork& work, double power_budget,
                         const FpConfig& config) {
  auto total = [&](double lambda) {
    double sum = 0.0;
    for (size_t i = 0; i < work.active_users.size(); ++i) {
      sum += power_of_lambda(work.eigs[i], work.active_users[i], work.a_mags[i], lambda);
    }
    return sum;
  };
  if (total(kLambdaFloor) <= power_budget) {
    return kLambdaFloor;  // power constraint inactive; complementary slackness
  }
  double hi = 1.0;
  int doublings = 0;
  while (total(hi) >= power_budget && doublings < 200) {
    hi *= 2.0;
    ++doublings;
  }
  const double lo = doublings > 0 ? 0.5 * hi : kLambdaFloor;
  return bisect_decreasing(total, power_budget, lo, hi, config.lambda_rel_tol);
}

}  // namespace

double solve_lambda(const FpState& state, const Eigen::MatrixXcd& gram_norm,
                    int num_luts, double power_budget, const FpConfig& config) {
  const LambdaSearchWork work = prepare_lambda_work(state, gram_norm, num_luts, config);
  if (work.active_users.empty()) {
    throw std::runtime_error("all-users-off: every user has b=0 or |eta| below floor");
  }
  return solve_lambda_impl(work, power_budget, config);
}

BeamCoefficients update_currents(const FpState& state,
                                 const Eigen::MatrixXcd& gram_norm, int num_luts,
                                 double lambda_L, const FpConfig& config) {
  if (lambda_L <= 0.0) {
    throw std::invalid_argument("update_currents: lambda must be positive");
  }
  const Eigen::Index n = gram_norm.rows();
  BeamCoefficients coeffs;
  coeffs.basis_normalized = true;
  coeffs.coeffs = Eigen::MatrixXcd::Zero(n, num_luts);
  for (int k = 0; k < num_luts; ++k) {
    if (!user_active(state, k, config)) continue;
    const Eigen::VectorXd scales = phi_scales(state, num_luts, k);
    Eigen::MatrixXcd shifted = build_phi(gram_norm, state, num_luts, k);
    shifted.diagonal().array() += lambda_L;
    Eigen::LLT<Eigen::MatrixXcd> llt(shifted);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("singular-solve: lambda-shifted kernel not positive definite");
    }
    const Eigen::VectorXcd x = llt.solve(Eigen::VectorXcd::Unit(n, k));
    const cplx a_kk = std::sqrt(state.b(k) * (1.0 + state.eps(k))) * state.eta(k) /
                      std::abs(state.eta(k));
    coeffs.coeffs.col(k) = a_kk * x.cwiseProduct(scales.cast<cplx>());
  }
  return coeffs;
}

std::pair<BeamCoefficients, FpState> run_bcd(const GramSystem& gram,
                                             const FpConfig& config) {
  const int k_users = gram.num_luts;
  FpState state;
  state.g_gamma = g_gamma_bound(gram);
  state.coeffs = init_mrt(gram, gram.power_budget);
  MetricsReport metrics = evaluate_metrics(gram, state.coeffs);
  // b stays at alpha_k throughout: it is an indicator that clamps negative
  // per-user rates in the reported objective and does not gate the updates
  // (gating would make b=0 an absorbing state, since a zeroed current forces
  // eta=0 which in turn keeps the current at zero).
  state.b = gram.weights;
  state.b_at_current = state.b;
  state.eps = Eigen::VectorXd::Zero(k_users);
  state.beta = Eigen::VectorXd::Zero(k_users);
  state.eta = Eigen::VectorXcd::Zero(k_users);
  state.wssr_trace.push_back(metrics.wssr);

  for (int iter = 0; iter < config.max_iters; ++iter) {
    state.eps = update_epsilon(gram.gram_norm, state.coeffs.coeffs, k_users);
    state.beta = update_beta(metrics, state.g_gamma);
    state.eta = update_eta(gram.gram_norm, state.coeffs.coeffs, k_users);

    bool any_active = false;
    for (int k = 0; k < k_users; ++k) any_active |= user_active(state, k, config);
    if (!any_active) {
      state.coeffs.coeffs.setZero();
      metrics = evaluate_metrics(gram, state.coeffs);
      state.wssr_trace.push_back(metrics.wssr);
      break;
    }

    state.lambda = solve_lambda(state, gram.gram_norm, k_users, gram.power_budget, config);
    state.b_at_current = state.b;
    state.coeffs = update_currents(state, gram.gram_norm, k_users, state.lambda, config);

    metrics = evaluate_metrics(gram, state.coeffs);
    state.wssr_trace.push_back(metrics.wssr);

    const size_t t = state.wssr_trace.size();
    if (state.wssr_trace[t - 1] - state.wssr_trace[t - 2] < config.wssr_tol) {
      break;
    }
  }
  return {state.coeffs, state};
}

}  // namespace capa
