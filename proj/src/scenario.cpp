#include "capa/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace capa {

namespace {

Eigen::Vector3d vec3_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument("scenario: expected an array of 3 numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::vector<Eigen::Vector3d> vec3_list_from_json(const nlohmann::json& j) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(vec3_from_json(item));
  return out;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  Eigen::VectorXd out(j.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = j[i].get<double>();
  return out;
}

nlohmann::json vec3_to_json(const Eigen::Vector3d& v) {
  return nlohmann::json::array({v.x(), v.y(), v.z()});
}

nlohmann::json vec3_list_to_json(const std::vector<Eigen::Vector3d>& vs) {
  auto arr = nlohmann::json::array();
  for (const auto& v : vs) arr.push_back(vec3_to_json(v));
  return arr;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  auto arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

}  // namespace

void Scenario::validate() const {
  if (aperture_side_x <= 0.0 || aperture_side_y <= 0.0) {
    throw std::invalid_argument("scenario: aperture sides must be positive");
  }
  if (frequency <= 0.0 || impedance <= 0.0) {
    throw std::invalid_argument("scenario: frequency and impedance must be positive");
  }
  const int k = num_luts();
  const int q = num_eves();
  if (k < 1) throw std::invalid_argument("scenario: at least one LUT required");
  if (static_cast<int>(lut_polarizations.size()) != k ||
      static_cast<int>(eve_polarizations.size()) != q ||
      noise_powers_lut.size() != k || noise_powers_eve.size() != q ||
      weights.size() != k) {
    throw std::invalid_argument("scenario: per-receiver field size mismatch");
  }
  auto check_unit = [](const Eigen::Vector3d& u) {
    if (std::abs(u.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("scenario: polarization vectors must have unit norm");
    }
  };
  check_unit(tx_polarization);
  for (const auto& u : lut_polarizations) check_unit(u);
  for (const auto& u : eve_polarizations) check_unit(u);
  for (const auto& r : lut_positions) {
    if (r.z() == 0.0) throw std::invalid_argument("scenario: receiver on the aperture plane");
  }
  for (const auto& r : eve_positions) {
    if (r.z() == 0.0) throw std::invalid_argument("scenario: receiver on the aperture plane");
  }
  if (power_budget <= 0.0) throw std::invalid_argument("scenario: power budget must be positive");
  if ((noise_powers_lut.array() <= 0.0).any() ||
      (q > 0 && (noise_powers_eve.array() <= 0.0).any())) {
    throw std::invalid_argument("scenario: noise powers must be positive");
  }
  if ((weights.array() < 0.0).any()) {
    throw std::invalid_argument("scenario: weights must be non-negative");
  }
  if (quadrature_order < 1) {
    throw std::invalid_argument("scenario: quadrature order must be >= 1");
  }
}

Scenario Scenario::from_json(const nlohmann::json& doc) {
  Scenario sc = default_scenario();
  if (doc.contains("aperture_side_x")) sc.aperture_side_x = doc["aperture_side_x"].get<double>();
  if (doc.contains("aperture_side_y")) sc.aperture_side_y = doc["aperture_side_y"].get<double>();
  if (doc.contains("frequency")) sc.frequency = doc["frequency"].get<double>();
  if (doc.contains("impedance")) sc.impedance = doc["impedance"].get<double>();
  if (doc.contains("lut_positions")) sc.lut_positions = vec3_list_from_json(doc["lut_positions"]);
  if (doc.contains("eve_positions")) sc.eve_positions = vec3_list_from_json(doc["eve_positions"]);
  if (doc.contains("lut_polarizations")) {
    sc.lut_polarizations = vec3_list_from_json(doc["lut_polarizations"]);
  } else {
    sc.lut_polarizations.assign(sc.lut_positions.size(), Eigen::Vector3d(0, 1, 0));
  }
  if (doc.contains("eve_polarizations")) {
    sc.eve_polarizations = vec3_list_from_json(doc["eve_polarizations"]);
  } else {
    sc.eve_polarizations.assign(sc.eve_positions.size(), Eigen::Vector3d(0, 1, 0));
  }
  if (doc.contains("tx_polarization")) sc.tx_polarization = vec3_from_json(doc["tx_polarization"]);
  if (doc.contains("noise_powers_lut")) {
    sc.noise_powers_lut = vector_from_json(doc["noise_powers_lut"]);
  } else {
    sc.noise_powers_lut = Eigen::VectorXd::Constant(sc.num_luts(), 5.6e-3);
  }
  if (doc.contains("noise_powers_eve")) {
    sc.noise_powers_eve = vector_from_json(doc["noise_powers_eve"]);
  } else {
    sc.noise_powers_eve = Eigen::VectorXd::Constant(sc.num_eves(), 5.6e-3);
  }
  if (doc.contains("power_budget")) sc.power_budget = doc["power_budget"].get<double>();
  if (doc.contains("weights")) {
    sc.weights = vector_from_json(doc["weights"]);
  } else {
    sc.weights = Eigen::VectorXd::Ones(sc.num_luts());
  }
  if (doc.contains("quadrature_order")) sc.quadrature_order = doc["quadrature_order"].get<int>();
  sc.validate();
  return sc;
}

nlohmann::json Scenario::to_json() const {
  nlohmann::json doc;
  doc["aperture_side_x"] = aperture_side_x;
  doc["aperture_side_y"] = aperture_side_y;
  doc["frequency"] = frequency;
  doc["impedance"] = impedance;
  doc["lut_positions"] = vec3_list_to_json(lut_positions);
  doc["eve_positions"] = vec3_list_to_json(eve_positions);
  doc["lut_polarizations"] = vec3_list_to_json(lut_polarizations);
  doc["eve_polarizations"] = vec3_list_to_json(eve_polarizations);
  doc["tx_polarization"] = vec3_to_json(tx_polarization);
  doc["noise_powers_lut"] = vector_to_json(noise_powers_lut);
  doc["noise_powers_eve"] = vector_to_json(noise_powers_eve);
  doc["power_budget"] = power_budget;
  doc["weights"] = vector_to_json(weights);
  doc["quadrature_order"] = quadrature_order;
  return doc;
}

Scenario default_scenario(int num_luts, int num_eves) {
  Scenario sc;
  sc.lut_positions.assign(num_luts, Eigen::Vector3d(0, 0, 20.0));
  sc.eve_positions.assign(num_eves, Eigen::Vector3d(0, 0, 20.0));
  // Placeholder positions; spread slightly so no two receivers coincide
  // before randomization.
  for (int k = 0; k < num_luts; ++k) sc.lut_positions[k].x() = -4.0 + k;
  for (int q = 0; q < num_eves; ++q) sc.eve_positions[q].y() = -3.0 + 2.0 * q;
  sc.lut_polarizations.assign(num_luts, Eigen::Vector3d(0, 1, 0));
  sc.eve_polarizations.assign(num_eves, Eigen::Vector3d(0, 1, 0));
  sc.noise_powers_lut = Eigen::VectorXd::Constant(num_luts, 5.6e-3);
  sc.noise_powers_eve = Eigen::VectorXd::Constant(num_eves, 5.6e-3);
  sc.weights = Eigen::VectorXd::Ones(num_luts);
  return sc;
}

}  // namespace capa
