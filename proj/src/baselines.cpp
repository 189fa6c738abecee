#include "capa/baselines.hpp"

#include <stdexcept>

namespace capa {

const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names = {"capa-fp",  "capa-zf",
                                                 "capa-mrt", "mimo-opt",
                                                 "mimo-zf",  "mimo-mrt"};
  return names;
}

bool is_mimo_scheme(std::string_view name) { return name.substr(0, 4) == "mimo"; }

std::pair<BeamCoefficients, MetricsReport> run_mrt(const GramSystem& gram) {
  BeamCoefficients coeffs = init_mrt(gram, gram.power_budget);
  return {coeffs, evaluate_metrics(gram, coeffs)};
}

GramSystem mimo_gram(const MimoChannelSet& mimo,
                     const Eigen::VectorXd& noise_powers_lut,
                     const Eigen::VectorXd& noise_powers_eve,
                     const Eigen::VectorXd& weights, double power_budget) {
  GramSystem gram;
  gram.num_luts = static_cast<int>(noise_powers_lut.size());
  gram.num_eves = static_cast<int>(noise_powers_eve.size());
  gram.power_budget = power_budget;
  gram.weights = weights;
  gram.noise_powers.resize(gram.num_receivers());
  gram.noise_powers << noise_powers_lut, noise_powers_eve;

  const Eigen::MatrixXcd& m = mimo.channel_matrix;
  gram.gram_raw = m.transpose() * m.conjugate();
  gram.gram_raw = 0.5 * (gram.gram_raw + gram.gram_raw.adjoint()).eval();
  const Eigen::VectorXd inv_std = gram.noise_powers.array().sqrt().inverse();
  gram.gram_norm = inv_std.asDiagonal() * gram.gram_raw * inv_std.asDiagonal();
  gram.gram_norm = 0.5 * (gram.gram_norm + gram.gram_norm.adjoint()).eval();
  return gram;
}

const GramSystem& GramProvider::capa() {
  if (!capa_) capa_ = capa_gram(scenario_);
  return *capa_;
}

const GramSystem& GramProvider::mimo() {
  if (!mimo_) mimo_ = mimo_gram(build_mimo_channels(scenario_), scenario_);
  return *mimo_;
}

SchemeResult run_scheme(std::string_view name, GramProvider& provider,
                        const FpConfig& config) {
  const GramSystem& gram = is_mimo_scheme(name) ? provider.mimo() : provider.capa();
  SchemeResult result;
  if (name == "capa-fp" || name == "mimo-opt") {
    auto [coeffs, state] = run_bcd(gram, config);
    result.coeffs = std::move(coeffs);
    result.metrics = evaluate_metrics(gram, result.coeffs);
    result.wssr_trace = std::move(state.wssr_trace);
  } else if (name == "capa-zf" || name == "mimo-zf") {
    ZfResult zf = run_zf(gram);
    result.coeffs = std::move(zf.coeffs);
    result.metrics = std::move(zf.metrics);
  } else if (name == "capa-mrt" || name == "mimo-mrt") {
    std::tie(result.coeffs, result.metrics) = run_mrt(gram);
  } else {
    throw std::invalid_argument("unknown scheme: " + std::string(name));
  }
  return result;
}

std::map<std::string, MetricsReport> run_mimo_suite(const Scenario& scenario,
                                                    const FpConfig& config) {
  GramProvider provider(scenario);
  std::map<std::string, MetricsReport> out;
  for (const char* name : {"mimo-opt", "mimo-zf", "mimo-mrt"}) {
    out.emplace(name, run_scheme(name, provider, config).metrics);
  }
  return out;
}

}  // namespace capa
