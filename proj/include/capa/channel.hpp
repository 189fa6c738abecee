#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "capa/numerics.hpp"
#include "capa/scenario.hpp"

namespace capa {

using cplx = std::complex<double>;

/// Currents are carried in mA (the power budget is in mA^2) while the Green's
/// function maps amperes to field strength, so every channel response picks up
/// this conversion factor.
inline constexpr double kAmpsPerMilliamp = 1e-3;

/// Dyadic Green's function: the 3x3 kernel mapping a current element at s to
/// the radiated field at r. Throws on coincident points (|r - s| < 1e-12 m).
Eigen::Matrix3cd green_dyadic(const Eigen::Vector3d& receiver,
                              const Eigen::Vector3d& source, double wavelength,
                              double impedance);

/// Scalar channel response of receiver `index` (0..K-1 are LUTs, K..K+Q-1 are
/// Eves) at an aperture point: u_r^T G(r, s) u_tx.
cplx scalar_channel(const Scenario& scenario, int receiver_index,
                    const Eigen::Vector3d& node);

/// All N = K + Q channel responses evaluated on the quadrature grid.
/// Row n holds h_n(s) at every node; rows are un-normalized channels.
struct ChannelSamples {
  Eigen::MatrixXcd values;  // N x (M*M)
  QuadratureGrid grid;
};

ChannelSamples sample_channels(const Scenario& scenario);

/// The channel correlation matrix [H]_{n,k} = integral of h_n h_k^* over the
/// aperture, in raw and noise-normalized form, plus the bookkeeping every
/// solver needs. This is the space all algorithms run in.
struct GramSystem {
  Eigen::MatrixXcd gram_raw;   // N x N Hermitian PSD
  Eigen::MatrixXcd gram_norm;  // channels divided by noise std
  Eigen::VectorXd noise_powers;  // receiver order: LUTs then Eves
  Eigen::VectorXd weights;       // alpha_k, size K
  int num_luts = 0;
  int num_eves = 0;
  double power_budget = 0.0;

  int num_receivers() const { return num_luts + num_eves; }
};

GramSystem build_gram(const ChannelSamples& samples,
                      const Eigen::VectorXd& noise_powers_lut,
                      const Eigen::VectorXd& noise_powers_eve,
                      const Eigen::VectorXd& weights, double power_budget);

/// Convenience: sample + assemble for a scenario.
GramSystem capa_gram(const Scenario& scenario);

/// Half-wavelength grid of point antennas covering the aperture; channels are
/// scaled by sqrt(A_d) with A_d = lambda^2 / (4 pi).
struct MimoChannelSet {
  std::vector<Eigen::Vector3d> antenna_positions;
  Eigen::MatrixXcd channel_matrix;  // N_ant x N, column n -> receiver n
  double effective_area = 0.0;      // A_d [m^2]
};

MimoChannelSet build_mimo_channels(const Scenario& scenario);

/// N_F = (2 ceil(L_x/lambda) + 1)(2 ceil(L_y/lambda) + 1), the basis count of
/// the Fourier discretization benchmark.
long fourier_basis_count(double len_x, double len_y, double wavelength);

}  // namespace capa
