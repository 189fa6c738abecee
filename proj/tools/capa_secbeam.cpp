// Command-line Monte-Carlo harness for the CAPA secure-beamforming library.
//
// Usage:
//   capa-secbeam <sweep-kind> [--config cfg.json] [--out sweep.csv]
//                [--trials N] [--seed S] [--schemes a,b,c]
//                [--values v1,v2,... | start:stop:count]
//
// sweep-kind is one of power | aperture | num-luts | num-eves | convergence |
// single. The start:stop:count form expands to a geometric range (intended
// for power sweeps). Results are written as CSV to --out, or stdout when no
// output path is given.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "capa/sweep.hpp"

namespace {

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  if (text.find(':') != std::string::npos) {
    double start = 0.0, stop = 0.0;
    int count = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3 ||
        count < 1 || start <= 0.0 || stop <= 0.0) {
      throw std::invalid_argument("--values: bad geometric range " + text);
    }
    if (count == 1) return {start};
    const double ratio = std::pow(stop / start, 1.0 / (count - 1));
    for (int i = 0; i < count; ++i) values.push_back(start * std::pow(ratio, i));
    return values;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  return values;
}

std::vector<std::string> parse_schemes(const std::string& text) {
  std::vector<std::string> schemes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) schemes.push_back(item);
  }
  return schemes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CAPA secure beamforming benchmark harness"};

  std::string kind_name;
  std::string config_path;
  std::string out_path;
  std::string schemes_text = "capa-fp,capa-zf";
  std::string values_text;
  int trials = 200;
  uint64_t seed = 1;

  app.add_option("sweep-kind", kind_name,
                 "power | aperture | num-luts | num-eves | convergence | single")
      ->required();
  app.add_option("--config", config_path, "scenario/fp JSON config file");
  app.add_option("--out", out_path, "output CSV path (stdout when omitted)");
  app.add_option("--trials", trials, "Monte-Carlo trials per sweep point");
  app.add_option("--seed", seed, "base seed; trial i uses seed + i");
  app.add_option("--schemes", schemes_text, "comma list of scheme names");
  app.add_option("--values", values_text,
                 "comma list, or start:stop:count geometric range");

  CLI11_PARSE(app, argc, argv);

  try {
    capa::SweepSpec spec;
    spec.kind = capa::sweep_kind_from_string(kind_name);
    spec.trials = trials;
    spec.base_seed = seed;
    spec.schemes = parse_schemes(schemes_text);

    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw std::runtime_error("cannot open config: " + config_path);
      nlohmann::json doc = nlohmann::json::parse(file);
      spec.defaults = capa::Scenario::from_json(doc);
      if (doc.contains("fp")) spec.fp = capa::FpConfig::from_json(doc["fp"]);
    }

    if (!values_text.empty()) {
      spec.values = parse_values(values_text);
    } else {
      switch (spec.kind) {
        case capa::SweepKind::kPower:
          spec.values = {1, 10, 100, 1000, 10000, 100000};
          break;
        case capa::SweepKind::kAperture:
          spec.values = {0.0625, 0.125, 0.25, 0.375, 0.5};
          break;
        case capa::SweepKind::kNumLuts:
          spec.values = {2, 4, 6, 8, 10};
          break;
        case capa::SweepKind::kNumEves:
          spec.values = {1, 2, 3, 4, 5};
          break;
        default:
          spec.values = {spec.defaults.power_budget};
          break;
      }
    }

    const auto records = capa::run_sweep(spec);
    if (out_path.empty()) {
      capa::export_csv(records, std::cout);
    } else {
      capa::export_csv(records, out_path);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
