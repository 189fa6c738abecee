#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include <json.hpp>

namespace capa {

inline constexpr double kSpeedOfLight = 3.0e8;  // m/s, fixed by convention

/// Full physical description of one downlink instance: square-or-rectangular
/// aperture on the z=0 plane, K legitimate users and Q eavesdroppers as
/// uni-polarized point receivers, a single transmit polarization, and the
/// power/noise/weight bookkeeping the solvers consume.
struct Scenario {
  double aperture_side_x = 0.5;  // L_x [m]
  double aperture_side_y = 0.5;  // L_y [m]
  double frequency = 2.4e9;      // [Hz]
  double impedance = 120.0 * M_PI;  // intrinsic impedance [ohm]

  std::vector<Eigen::Vector3d> lut_positions;
  std::vector<Eigen::Vector3d> eve_positions;
  std::vector<Eigen::Vector3d> lut_polarizations;
  std::vector<Eigen::Vector3d> eve_polarizations;
  Eigen::Vector3d tx_polarization{0.0, 1.0, 0.0};

  Eigen::VectorXd noise_powers_lut;  // sigma_k^2 [V^2/m^2]
  Eigen::VectorXd noise_powers_eve;  // sigma-bar_q^2 [V^2/m^2]
  double power_budget = 10.0;        // P [mA^2-scaled units]
  Eigen::VectorXd weights;           // alpha_k >= 0
  int quadrature_order = 10;         // M

  int num_luts() const { return static_cast<int>(lut_positions.size()); }
  int num_eves() const { return static_cast<int>(eve_positions.size()); }
  int num_receivers() const { return num_luts() + num_eves(); }
  double wavelength() const { return kSpeedOfLight / frequency; }
  double aperture_area() const { return aperture_side_x * aperture_side_y; }

  /// Throws std::invalid_argument on any violated invariant (non-unit
  /// polarization, receiver on the aperture plane, size mismatches, ...).
  void validate() const;

  static Scenario from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};

/// The default simulation setup: 0.25 m^2 aperture at 2.4 GHz, K=8 users and
/// Q=3 eavesdroppers (positions are placeholders until randomized), P=10,
/// equal noise 5.6e-3 and unit weights, M=10 quadrature.
Scenario default_scenario(int num_luts = 8, int num_eves = 3);

}  // namespace capa
