#pragma once

#include <Eigen/Dense>

#include <json.hpp>

#include "capa/channel.hpp"

namespace capa {

/// Coefficient-space representation of the K current patterns: column k holds
/// c_k with J_k(s) = sum_n c_{k,n} h_n^*(s). The basis channels are either the
/// raw responses or the noise-normalized ones, recorded by the flag.
struct BeamCoefficients {
  Eigen::MatrixXcd coeffs;  // N x K
  bool basis_normalized = true;
};

struct MetricsReport {
  Eigen::VectorXd sinr;           // gamma_k
  Eigen::VectorXd leakage;        // Gamma_k
  Eigen::VectorXd secrecy_raw;    // log2((1+gamma)/(1+Gamma)), unclamped
  Eigen::VectorXd secrecy;        // (.)^+ applied
  Eigen::VectorXd per_user_power;
  double wssr = 0.0;

  nlohmann::json to_json() const;
};

/// S = H_norm * C; entry S[n,k] equals the aperture integral of h_n J_k.
Eigen::MatrixXcd signal_matrix(const Eigen::MatrixXcd& gram_norm,
                               const Eigen::MatrixXcd& coeffs);

/// Evaluates SINR, leakage, per-user power and the WSSR purely from the Gram
/// matrix. Coefficients must be in the noise-normalized basis.
MetricsReport evaluate_metrics(const GramSystem& gram,
                               const BeamCoefficients& coeffs,
                               const Eigen::VectorXd& weights);

inline MetricsReport evaluate_metrics(const GramSystem& gram,
                                      const BeamCoefficients& coeffs) {
  return evaluate_metrics(gram, coeffs, gram.weights);
}

/// Cauchy-Schwarz leakage bound G_Gamma = P * sum_q [H_norm]_{K+q,K+q}.
double g_gamma_bound(const GramSystem& gram);

/// Total transmit power sum_k c_k^H H c_k in the basis matching the flag.
double total_power(const Eigen::MatrixXcd& gram, const Eigen::MatrixXcd& coeffs);

}  // namespace capa
