#include "capa/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace capa {

namespace {

void resize_receivers(Scenario& sc, int k_users, int q_eves) {
  const double noise_lut = sc.noise_powers_lut(0);
  const double noise_eve = sc.noise_powers_eve.size() > 0 ? sc.noise_powers_eve(0) : noise_lut;
  const double weight = sc.weights(0);
  sc.lut_positions.assign(k_users, Eigen::Vector3d(0, 0, 20.0));
  sc.eve_positions.assign(q_eves, Eigen::Vector3d(0, 0, 20.0));
  for (int k = 0; k < k_users; ++k) sc.lut_positions[k].x() = 0.1 * (k + 1);
  for (int q = 0; q < q_eves; ++q) sc.eve_positions[q].y() = 0.1 * (q + 1);
  sc.lut_polarizations.assign(k_users, sc.tx_polarization);
  sc.eve_polarizations.assign(q_eves, sc.tx_polarization);
  sc.noise_powers_lut = Eigen::VectorXd::Constant(k_users, noise_lut);
  sc.noise_powers_eve = Eigen::VectorXd::Constant(q_eves, noise_eve);
  sc.weights = Eigen::VectorXd::Constant(k_users, weight);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

Scenario sample_scenario(const Scenario& defaults, uint64_t seed) {
  Scenario sc = defaults;
  SplitMix64 rng(seed);
  auto draw = [&rng]() -> Eigen::Vector3d {
    const double x = rng.uniform(-kRegionHalfX, kRegionHalfX);
    const double y = rng.uniform(-kRegionHalfY, kRegionHalfY);
    const double z = rng.uniform(kRegionZMin, kRegionZMax);
    return {x, y, z};
  };
  for (auto& pos : sc.lut_positions) pos = draw();
  for (auto& pos : sc.eve_positions) pos = draw();
  sc.validate();
  return sc;
}

SweepKind sweep_kind_from_string(const std::string& name) {
  if (name == "power") return SweepKind::kPower;
  if (name == "aperture") return SweepKind::kAperture;
  if (name == "num-luts") return SweepKind::kNumLuts;
  if (name == "num-eves") return SweepKind::kNumEves;
  if (name == "convergence") return SweepKind::kConvergence;
  if (name == "single") return SweepKind::kSingle;
  throw std::invalid_argument("unknown sweep kind: " + name);
}

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::kPower: return "power";
    case SweepKind::kAperture: return "aperture";
    case SweepKind::kNumLuts: return "num-luts";
    case SweepKind::kNumEves: return "num-eves";
    case SweepKind::kConvergence: return "convergence";
    case SweepKind::kSingle: return "single";
  }
  return "unknown";
}

Scenario apply_sweep_value(const Scenario& defaults, SweepKind kind, double value) {
  Scenario sc = defaults;
  switch (kind) {
    case SweepKind::kPower:
      sc.power_budget = value;
      break;
    case SweepKind::kAperture:
      // Square aperture: L = sqrt(A_T).
      sc.aperture_side_x = sc.aperture_side_y = std::sqrt(value);
      break;
    case SweepKind::kNumLuts:
      resize_receivers(sc, static_cast<int>(std::lround(value)), sc.num_eves());
      break;
    case SweepKind::kNumEves:
      resize_receivers(sc, sc.num_luts(), static_cast<int>(std::lround(value)));
      break;
    case SweepKind::kConvergence:
    case SweepKind::kSingle:
      break;
  }
  return sc;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
  if (spec.values.empty()) throw std::invalid_argument("run_sweep: values must be non-empty");
  for (const auto& scheme : spec.schemes) {
    if (std::find(scheme_names().begin(), scheme_names().end(), scheme) ==
        scheme_names().end()) {
      throw std::invalid_argument("run_sweep: unknown scheme " + scheme);
    }
  }

  std::vector<SweepRecord> records;
  for (double value : spec.values) {
    const Scenario base = apply_sweep_value(spec.defaults, spec.kind, value);
    for (int trial = 0; trial < spec.trials; ++trial) {
      const uint64_t seed = spec.base_seed + static_cast<uint64_t>(trial);
      GramProvider provider(sample_scenario(base, seed));
      for (const auto& scheme : spec.schemes) {
        if (spec.kind == SweepKind::kConvergence &&
            scheme != "capa-fp" && scheme != "mimo-opt") {
          continue;  // only the optimized schemes have iteration traces
        }
        SweepRecord record;
        record.scheme = scheme;
        record.sweep_value = value;
        record.trial_index = trial;
        record.seed = seed;
        const auto start = std::chrono::steady_clock::now();
        try {
          SchemeResult result = run_scheme(scheme, provider, spec.fp);
          record.wall_time_ms =
              std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
          record.iterations = static_cast<int>(result.wssr_trace.size());
          if (spec.kind == SweepKind::kConvergence) {
            for (size_t i = 0; i < result.wssr_trace.size(); ++i) {
              SweepRecord row = record;
              row.sweep_value = static_cast<double>(i);
              row.wssr = result.wssr_trace[i];
              row.iterations = static_cast<int>(i);
              records.push_back(std::move(row));
            }
            continue;
          }
          record.wssr = result.metrics.wssr;
          record.per_user_secrecy = result.metrics.secrecy;
        } catch (const std::runtime_error& err) {
          record.wall_time_ms =
              std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
          record.error = err.what();
        }
        records.push_back(std::move(record));
      }
    }
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const SweepRecord& a, const SweepRecord& b) {
                     if (a.scheme != b.scheme) return a.scheme < b.scheme;
                     if (a.sweep_value != b.sweep_value) return a.sweep_value < b.sweep_value;
                     return a.trial_index < b.trial_index;
                   });
  return records;
}

void export_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
  if (records.empty()) throw std::invalid_argument("export_csv: no records");
  out << "scheme,sweep_value,trial_index,seed,wssr,per_user_secrecy,iterations,"
         "wall_time_ms,error\n";
  for (const auto& r : records) {
    out << r.scheme << ',' << format_double(r.sweep_value) << ',' << r.trial_index
        << ',' << r.seed << ',';
    if (r.error.empty()) {
      out << format_double(r.wssr);
      out << ',';
      out << '"';
      for (Eigen::Index i = 0; i < r.per_user_secrecy.size(); ++i) {
        if (i > 0) out << ';';
        out << format_double(r.per_user_secrecy(i));
      }
      out << '"';
    } else {
      out << ",";  // wssr and per-user columns stay empty on error
    }
    out << ',' << r.iterations << ',' << format_double(r.wall_time_ms) << ','
        << r.error << '\n';
  }
}

void export_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("io-error: cannot open " + path);
  export_csv(records, file);
  if (!file.good()) throw std::runtime_error("io-error: write failed for " + path);
}

}  // namespace capa
