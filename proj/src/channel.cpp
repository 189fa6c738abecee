#include "capa/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace capa {

namespace {

// ceil with a relative guard so exact integer ratios computed through an
// inexact wavelength do not round up.
long guarded_ceil(double x) { return static_cast<long>(std::ceil(x - 1e-9)); }

void symmetrize(Eigen::MatrixXcd& m) { m = 0.5 * (m + m.adjoint()).eval(); }

}  // namespace

Eigen::Matrix3cd green_dyadic(const Eigen::Vector3d& receiver,
                              const Eigen::Vector3d& source, double wavelength,
                              double impedance) {
  const Eigen::Vector3d d = receiver - source;
  const double dist = d.norm();
  if (dist < 1e-12) {
    throw std::invalid_argument("coincident-points: receiver too close to source");
  }
  const cplx prefactor = cplx(0.0, 1.0) * impedance *
                         std::exp(cplx(0.0, -2.0 * M_PI * dist / wavelength)) /
                         (2.0 * wavelength * dist);
  const Eigen::Matrix3d projector =
      Eigen::Matrix3d::Identity() - d * d.transpose() / (dist * dist);
  return prefactor * projector;
}

cplx scalar_channel(const Scenario& scenario, int receiver_index,
                    const Eigen::Vector3d& node) {
  const int k = scenario.num_luts();
  const int n = scenario.num_receivers();
  if (receiver_index < 0 || receiver_index >= n) {
    throw std::invalid_argument("scalar_channel: receiver index out of range");
  }
  const bool is_lut = receiver_index < k;
  const Eigen::Vector3d& pos = is_lut ? scenario.lut_positions[receiver_index]
                                      : scenario.eve_positions[receiver_index - k];
  const Eigen::Vector3d& pol = is_lut
                                   ? scenario.lut_polarizations[receiver_index]
                                   : scenario.eve_polarizations[receiver_index - k];
  const Eigen::Matrix3cd g =
      green_dyadic(pos, node, scenario.wavelength(), scenario.impedance);
  return kAmpsPerMilliamp * pol.cast<cplx>().transpose() * g *
         scenario.tx_polarization.cast<cplx>();
}

ChannelSamples sample_channels(const Scenario& scenario) {
  scenario.validate();
  ChannelSamples out;
  out.grid = gauss_legendre_grid(0.5 * scenario.aperture_side_x,
                                 0.5 * scenario.aperture_side_y,
                                 scenario.quadrature_order);
  const int n = scenario.num_receivers();
  out.values.resize(n, out.grid.size());
  for (int r = 0; r < n; ++r) {
    for (Eigen::Index m = 0; m < out.grid.size(); ++m) {
      const Eigen::Vector3d node(out.grid.nodes(m, 0), out.grid.nodes(m, 1), 0.0);
      out.values(r, m) = scalar_channel(scenario, r, node);
    }
  }
  return out;
}

GramSystem build_gram(const ChannelSamples& samples,
                      const Eigen::VectorXd& noise_powers_lut,
                      const Eigen::VectorXd& noise_powers_eve,
                      const Eigen::VectorXd& weights, double power_budget) {
  GramSystem gram;
  gram.num_luts = static_cast<int>(noise_powers_lut.size());
  gram.num_eves = static_cast<int>(noise_powers_eve.size());
  gram.power_budget = power_budget;
  gram.weights = weights;
  const int n = gram.num_receivers();
  if (samples.values.rows() != n) {
    throw std::invalid_argument("build_gram: sample row count does not match noise vectors");
  }
  gram.noise_powers.resize(n);
  gram.noise_powers << noise_powers_lut, noise_powers_eve;

  gram.gram_raw = samples.values * samples.grid.weights.asDiagonal() *
                  samples.values.adjoint();
  symmetrize(gram.gram_raw);

  const Eigen::VectorXd inv_std = gram.noise_powers.array().sqrt().inverse();
  gram.gram_norm = inv_std.asDiagonal() * gram.gram_raw * inv_std.asDiagonal();
  symmetrize(gram.gram_norm);
  return gram;
}

GramSystem capa_gram(const Scenario& scenario) {
  return build_gram(sample_channels(scenario), scenario.noise_powers_lut,
                    scenario.noise_powers_eve, scenario.weights,
                    scenario.power_budget);
}

MimoChannelSet build_mimo_channels(const Scenario& scenario) {
  scenario.validate();
  const double wl = scenario.wavelength();
  const double d = 0.5 * wl;
  const long nx = guarded_ceil(scenario.aperture_side_x / d);
  const long ny = guarded_ceil(scenario.aperture_side_y / d);

  MimoChannelSet out;
  out.effective_area = wl * wl / (4.0 * M_PI);
  out.antenna_positions.reserve(nx * ny);
  for (long ix = 1; ix <= nx; ++ix) {
    for (long iy = 1; iy <= ny; ++iy) {
      out.antenna_positions.emplace_back((ix - 1) * d - 0.5 * scenario.aperture_side_x,
                                         (iy - 1) * d - 0.5 * scenario.aperture_side_y,
                                         0.0);
    }
  }
  const int n = scenario.num_receivers();
  const double amp = std::sqrt(out.effective_area);
  out.channel_matrix.resize(static_cast<Eigen::Index>(out.antenna_positions.size()), n);
  for (size_t a = 0; a < out.antenna_positions.size(); ++a) {
    for (int r = 0; r < n; ++r) {
      out.channel_matrix(static_cast<Eigen::Index>(a), r) =
          amp * scalar_channel(scenario, r, out.antenna_positions[a]);
    }
  }
  return out;
}

long fourier_basis_count(double len_x, double len_y, double wavelength) {
  if (len_x <= 0.0 || len_y <= 0.0 || wavelength <= 0.0) {
    throw std::invalid_argument("fourier_basis_count: lengths must be positive");
  }
  const long mx = guarded_ceil(len_x / wavelength);
  const long my = guarded_ceil(len_y / wavelength);
  return (2 * mx + 1) * (2 * my + 1);
}

}  // namespace capa
