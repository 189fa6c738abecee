#include <doctest.h>

#include <cmath>

#include "capa/fp_bcd.hpp"
#include "test_support.hpp"

using namespace capa;

TEST_CASE("mrt initialization splits the budget equally") {
  const Scenario sc = capa::testing::random_scenario(21);
  const GramSystem gram = capa_gram(sc);
  const auto coeffs = init_mrt(gram, sc.power_budget);
  REQUIRE(coeffs.coeffs.rows() == 11);
  REQUIRE(coeffs.coeffs.cols() == 8);
  const auto report = evaluate_metrics(gram, coeffs);
  for (int k = 0; k < 8; ++k) {
    CHECK(report.per_user_power(k) ==
          doctest::Approx(sc.power_budget / 8.0).epsilon(1e-10));
  }
  CHECK(total_power(gram.gram_norm, coeffs.coeffs) ==
        doctest::Approx(sc.power_budget).epsilon(1e-10));
}

TEST_CASE("auxiliary updates reproduce their closed forms") {
  const Scenario sc = capa::testing::random_scenario(33);
  const GramSystem gram = capa_gram(sc);
  SplitMix64 rng(5);
  BeamCoefficients coeffs;
  coeffs.coeffs = capa::testing::random_feasible_coeffs(
      rng, gram.gram_norm, gram.num_luts, sc.power_budget);
  const auto report = evaluate_metrics(gram, coeffs);
  const double g_gamma = g_gamma_bound(gram);

  const Eigen::VectorXd b = update_b(report, gram.weights);
  for (int k = 0; k < 8; ++k) {
    const bool on = report.sinr(k) >= report.leakage(k);
    CHECK(b(k) == (on ? gram.weights(k) : 0.0));
  }

  const Eigen::VectorXd eps =
      update_epsilon(gram.gram_norm, coeffs.coeffs, gram.num_luts);
  CHECK((eps - report.sinr).cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::VectorXd beta = update_beta(report, g_gamma);
  for (int k = 0; k < 8; ++k) {
    CHECK(beta(k) == doctest::Approx((g_gamma - report.leakage(k)) /
                                     (1.0 + report.leakage(k))));
    CHECK(beta(k) >= 0.0);
    CHECK(beta(k) <= g_gamma);
  }

  const Eigen::VectorXcd eta =
      update_eta(gram.gram_norm, coeffs.coeffs, gram.num_luts);
  const Eigen::MatrixXcd s = signal_matrix(gram.gram_norm, coeffs.coeffs);
  for (int k = 0; k < 8; ++k) {
    const double denom = 1.0 + s.row(k).head(8).squaredNorm();
    CHECK(std::abs(eta(k) - s(k, k) / denom) < 1e-12);
  }
}

TEST_CASE("phi is hermitian PSD and matches its rank-structure") {
  const Scenario sc = capa::testing::random_scenario(44);
  const GramSystem gram = capa_gram(sc);
  FpState state;
  state.coeffs = init_mrt(gram, sc.power_budget);
  const auto report = evaluate_metrics(gram, state.coeffs);
  state.g_gamma = g_gamma_bound(gram);
  state.b = update_b(report, gram.weights);
  state.eps = update_epsilon(gram.gram_norm, state.coeffs.coeffs, gram.num_luts);
  state.beta = update_beta(report, state.g_gamma);
  state.eta = update_eta(gram.gram_norm, state.coeffs.coeffs, gram.num_luts);

  for (int k : {0, 3, 7}) {
    const Eigen::VectorXd scales = phi_scales(state, gram.num_luts, k);
    REQUIRE(scales.size() == 11);
    const Eigen::MatrixXcd phi = build_phi(gram.gram_norm, state, gram.num_luts, k);
    CHECK((phi - phi.adjoint()).norm() < 1e-10 * phi.norm());
    const auto eig = hermitian_eig(phi);
    CHECK(eig.eigenvalues.minCoeff() > -1e-10 * eig.eigenvalues.maxCoeff());
    // phi = diag(scales) * gram_norm * diag(scales)
    const Eigen::MatrixXcd expected =
        scales.asDiagonal() * gram.gram_norm * scales.asDiagonal();
    CHECK((phi - expected).norm() < 1e-12 * expected.norm());
  }
}

TEST_CASE("per-user power is strictly decreasing in lambda") {
  const Scenario sc = capa::testing::random_scenario(55);
  const GramSystem gram = capa_gram(sc);
  FpState state;
  state.coeffs = init_mrt(gram, sc.power_budget);
  const auto report = evaluate_metrics(gram, state.coeffs);
  state.g_gamma = g_gamma_bound(gram);
  state.b = update_b(report, gram.weights);
  state.eps = update_epsilon(gram.gram_norm, state.coeffs.coeffs, gram.num_luts);
  state.beta = update_beta(report, state.g_gamma);
  state.eta = update_eta(gram.gram_norm, state.coeffs.coeffs, gram.num_luts);

  for (int k = 0; k < gram.num_luts; ++k) {
    if (state.b(k) == 0.0) continue;
    const auto eig = hermitian_eig(build_phi(gram.gram_norm, state, gram.num_luts, k));
    const double a_mag = std::sqrt(state.b(k) * (1.0 + state.eps(k)));
    double prev = std::numeric_limits<double>::infinity();
    for (double lam = 1e-8; lam < 1e6; lam *= 100.0) {
      const double p = power_of_lambda(eig, k, a_mag, lam);
      CHECK(p < prev);
      CHECK(p > 0.0);
      prev = p;
    }
  }
}

TEST_CASE("solve_lambda meets the power budget (or returns the slack floor)") {
  const Scenario sc = capa::testing::random_scenario(66);
  const GramSystem gram = capa_gram(sc);
  FpState state;
  state.coeffs = init_mrt(gram, sc.power_budget);
  const auto report = evaluate_metrics(gram, state.coeffs);
  state.g_gamma = g_gamma_bound(gram);
  state.b = gram.weights;  // keep every user on; b logic is tested elsewhere
  state.eps = update_epsilon(gram.gram_norm, state.coeffs.coeffs, gram.num_luts);
  state.beta = update_beta(report, state.g_gamma);
  state.eta = update_eta(gram.gram_norm, state.coeffs.coeffs, gram.num_luts);

  const FpConfig config;
  const double lambda = solve_lambda(state, gram.gram_norm, gram.num_luts,
                                     sc.power_budget, config);
  CHECK(lambda >= 1e-12);
  const auto coeffs =
      update_currents(state, gram.gram_norm, gram.num_luts, lambda, config);
  const double power = total_power(gram.gram_norm, coeffs.coeffs);
  if (lambda > 2e-12) {
    CHECK(power == doctest::Approx(sc.power_budget).epsilon(1e-6));
  } else {
    CHECK(power <= sc.power_budget * (1.0 + 1e-9));
  }
}

TEST_CASE("solve_lambda rejects a fully shut-off user set") {
  const Scenario sc = capa::testing::random_scenario(66);
  const GramSystem gram = capa_gram(sc);
  FpState state;
  state.coeffs = init_mrt(gram, sc.power_budget);
  state.g_gamma = g_gamma_bound(gram);
  state.b = Eigen::VectorXd::Zero(8);
  state.eps = Eigen::VectorXd::Zero(8);
  state.beta = Eigen::VectorXd::Zero(8);
  state.eta = Eigen::VectorXcd::Ones(8);
  CHECK_THROWS_WITH_AS(
      solve_lambda(state, gram.gram_norm, gram.num_luts, sc.power_budget, {}),
      doctest::Contains("all-users-off"), std::runtime_error);
}

TEST_CASE("bcd trace is monotone and the solution is feasible") {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    const Scenario sc = capa::testing::random_scenario(seed);
    const GramSystem gram = capa_gram(sc);
    const auto [coeffs, state] = run_bcd(gram);

    REQUIRE(!state.wssr_trace.empty());
    CHECK(state.wssr_trace.size() <= 100);
    for (size_t i = 1; i < state.wssr_trace.size(); ++i) {
      CHECK(state.wssr_trace[i] >= state.wssr_trace[i - 1] - 1e-8);
    }

    const auto report = evaluate_metrics(gram, coeffs);
    CHECK(report.wssr == doctest::Approx(state.wssr_trace.back()).epsilon(1e-9));
    CHECK(total_power(gram.gram_norm, coeffs.coeffs) <=
          sc.power_budget * (1.0 + 1e-6));
    for (int k = 0; k < 8; ++k) {
      CHECK((state.b(k) == 0.0 || state.b(k) == gram.weights(k)));
    }

    // The start point is MRT, so BCD can only improve on it.
    const auto mrt = evaluate_metrics(gram, init_mrt(gram, sc.power_budget));
    CHECK(report.wssr >= mrt.wssr - 1e-8);
  }
}

TEST_CASE("single-user bcd reaches the analytic capacity") {
  Scenario sc = capa::testing::random_scenario(9, 1, 0);
  const GramSystem gram = capa_gram(sc);
  const double capacity =
      std::log2(1.0 + sc.power_budget * gram.gram_norm(0, 0).real());
  const auto [coeffs, state] = run_bcd(gram);
  CHECK(state.wssr_trace.back() == doctest::Approx(capacity).epsilon(1e-6));
}

TEST_CASE("fp config parses overrides and keeps defaults") {
  const auto parsed = FpConfig::from_json(nlohmann::json{{"max_iters", 7}});
  CHECK(parsed.max_iters == 7);
  CHECK(parsed.wssr_tol == 1e-4);
  CHECK(parsed.lambda_rel_tol == 1e-10);
  CHECK(parsed.eta_floor == 1e-15);
}
