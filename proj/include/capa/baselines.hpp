#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capa/fp_bcd.hpp"
#include "capa/metrics.hpp"
#include "capa/zf_wf.hpp"

namespace capa {

/// Scheme names accepted everywhere (CSV column keys, CLI --schemes).
const std::vector<std::string>& scheme_names();
bool is_mimo_scheme(std::string_view name);

/// Equal-split MRT: c_k = sqrt(P/K) e_k / sqrt([H_norm]_kk).
std::pair<BeamCoefficients, MetricsReport> run_mrt(const GramSystem& gram);

/// Discrete Gram from antenna-element inner products: [H]_{n,k} = h_n^T h_k^*.
GramSystem mimo_gram(const MimoChannelSet& mimo,
                     const Eigen::VectorXd& noise_powers_lut,
                     const Eigen::VectorXd& noise_powers_eve,
                     const Eigen::VectorXd& weights, double power_budget);

inline GramSystem mimo_gram(const MimoChannelSet& mimo, const Scenario& sc) {
  return mimo_gram(mimo, sc.noise_powers_lut, sc.noise_powers_eve, sc.weights,
                   sc.power_budget);
}

/// Lazily builds and caches the continuous-quadrature and discrete Gram
/// systems for one scenario so all schemes share the assembly cost.
class GramProvider {
 public:
  explicit GramProvider(Scenario scenario) : scenario_(std::move(scenario)) {}

  const Scenario& scenario() const { return scenario_; }
  const GramSystem& capa();
  const GramSystem& mimo();

 private:
  Scenario scenario_;
  std::optional<GramSystem> capa_;
  std::optional<GramSystem> mimo_;
};

struct SchemeResult {
  BeamCoefficients coeffs;
  MetricsReport metrics;
  std::vector<double> wssr_trace;  // non-empty for the optimized schemes
};

/// Dispatch by scheme name ("capa-fp", "capa-zf", "capa-mrt", "mimo-opt",
/// "mimo-zf", "mimo-mrt"). Propagates singular-gram from the ZF schemes.
SchemeResult run_scheme(std::string_view name, GramProvider& provider,
                        const FpConfig& config = {});

/// The three discrete baselines on the MIMO Gram of one scenario.
std::map<std::string, MetricsReport> run_mimo_suite(const Scenario& scenario,
                                                    const FpConfig& config = {});

}  // namespace capa
