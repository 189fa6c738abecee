#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "capa/baselines.hpp"
#include "capa/scenario.hpp"

namespace capa {

/// Portable counter-free 64-bit generator (SplitMix64); identical streams on
/// every platform for a given seed.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// Receiver randomization cuboid: |x|,|y| <= 5 m, z in [15, 30] m.
inline constexpr double kRegionHalfX = 5.0;
inline constexpr double kRegionHalfY = 5.0;
inline constexpr double kRegionZMin = 15.0;
inline constexpr double kRegionZMax = 30.0;

/// Deterministically redraws all receiver positions uniformly over the cuboid;
/// every other field is copied from the defaults.
Scenario sample_scenario(const Scenario& defaults, uint64_t seed);

enum class SweepKind { kPower, kAperture, kNumLuts, kNumEves, kConvergence, kSingle };

SweepKind sweep_kind_from_string(const std::string& name);
std::string to_string(SweepKind kind);

struct SweepSpec {
  SweepKind kind = SweepKind::kSingle;
  std::vector<double> values;
  int trials = 200;
  uint64_t base_seed = 1;
  std::vector<std::string> schemes = {"capa-fp", "capa-zf"};
  Scenario defaults = default_scenario();
  FpConfig fp;
};

struct SweepRecord {
  std::string scheme;
  double sweep_value = 0.0;
  int trial_index = 0;
  uint64_t seed = 0;
  double wssr = 0.0;
  Eigen::VectorXd per_user_secrecy;
  int iterations = 0;        // FP schemes only
  double wall_time_ms = 0.0;
  std::string error;         // non-empty when the trial failed (e.g. singular-gram)
};

/// Applies a sweep value to the defaults (power, aperture, K, or Q).
Scenario apply_sweep_value(const Scenario& defaults, SweepKind kind, double value);

std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

void export_csv(const std::vector<SweepRecord>& records, std::ostream& out);
void export_csv(const std::vector<SweepRecord>& records, const std::string& path);

}  // namespace capa
