#include "capa/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace capa {

nlohmann::json MetricsReport::to_json() const {
  auto list = [](const Eigen::VectorXd& v) {
    auto arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
  };
  nlohmann::json doc;
  doc["sinr"] = list(sinr);
  doc["leakage"] = list(leakage);
  doc["secrecy_raw"] = list(secrecy_raw);
  doc["secrecy"] = list(secrecy);
  doc["per_user_power"] = list(per_user_power);
  doc["wssr"] = wssr;
  return doc;
}

Eigen::MatrixXcd signal_matrix(const Eigen::MatrixXcd& gram_norm,
                               const Eigen::MatrixXcd& coeffs) {
  if (gram_norm.cols() != coeffs.rows()) {
    throw std::invalid_argument("dimension-mismatch: gram vs coefficients");
  }
  return gram_norm * coeffs;
}

MetricsReport evaluate_metrics(const GramSystem& gram,
                               const BeamCoefficients& coeffs,
                               const Eigen::VectorXd& weights) {
  if (!coeffs.basis_normalized) {
    throw std::invalid_argument(
        "evaluate_metrics: coefficients must be in the noise-normalized basis");
  }
  const int k_users = gram.num_luts;
  const int q_eves = gram.num_eves;
  if (coeffs.coeffs.cols() != k_users || weights.size() != k_users) {
    throw std::invalid_argument("dimension-mismatch: coefficient columns vs K");
  }
  const Eigen::MatrixXcd s = signal_matrix(gram.gram_norm, coeffs.coeffs);

  MetricsReport report;
  report.sinr.resize(k_users);
  report.leakage.resize(k_users);
  report.secrecy_raw.resize(k_users);
  report.secrecy.resize(k_users);
  report.per_user_power.resize(k_users);
  report.wssr = 0.0;
  for (int k = 0; k < k_users; ++k) {
    double interference = 0.0;
    for (int i = 0; i < k_users; ++i) {
      if (i != k) interference += std::norm(s(k, i));
    }
    report.sinr(k) = std::norm(s(k, k)) / (1.0 + interference);
    double leak = 0.0;
    for (int q = 0; q < q_eves; ++q) leak += std::norm(s(k_users + q, k));
    report.leakage(k) = leak;
    report.secrecy_raw(k) =
        std::log2((1.0 + report.sinr(k)) / (1.0 + report.leakage(k)));
    report.secrecy(k) = std::max(0.0, report.secrecy_raw(k));
    report.per_user_power(k) =
        (coeffs.coeffs.col(k).adjoint() * gram.gram_norm * coeffs.coeffs.col(k))
            .real()(0);
    report.wssr += weights(k) * report.secrecy(k);
  }
  return report;
}

double g_gamma_bound(const GramSystem& gram) {
  double sum = 0.0;
  for (int q = 0; q < gram.num_eves; ++q) {
    sum += gram.gram_norm(gram.num_luts + q, gram.num_luts + q).real();
  }
  return gram.power_budget * sum;
}

double total_power(const Eigen::MatrixXcd& gram, const Eigen::MatrixXcd& coeffs) {
  return (coeffs.adjoint() * gram * coeffs).real().trace();
}

}  // namespace capa
