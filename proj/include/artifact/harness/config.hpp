#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "artifact/sensing.hpp"
#include "artifact/throughput.hpp"
#include "artifact/wpt.hpp"

namespace artifact::harness {

inline constexpr const char* kVersion = "1.0.0";

// All values are stored in the units the config file uses (dBm, MHz, ...);
// conversion to SI happens once, when the module parameter structs are built.
struct Config {
  // [run]
  std::string scenario = "fig2";
  std::uint64_t trials = 100000;
  std::uint64_t detection_trials = 10000;
  std::uint64_t recovery_trials = 400;
  std::uint64_t base_seed = 12345;
  int threads = 0;  // 0 = hardware concurrency
  std::string out = "";

  // [wpt]
  double lambda_p_per_m2 = 1e-3;
  int M = 32;
  double Pp_dbm = 43.0;
  double eta = 0.8;
  double carrier_mhz = 900.0;
  double xi = 2.0;
  double d0_m = 1.0;

  // [power]
  double Ps_dbm = 0.0;
  double Pt_min_dbm = 0.0;
  double Pt_max_dbm = 20.0;
  double N0_dbm = -90.0;

  // [sensing]
  double e_s_joule = 2.5e-7;
  double pd_target = 0.9;
  double snr_db = -10.0;
  int I = 32;
  int K = 4;
  int n_window = 1024;  // Nyquist samples per detection window (multiple of 2I)
  double C_cs = 2.0;

  // [frame]
  double alpha1 = 0.25;
  double beta = 0.25;
  double alpha2 = 0.2;
  double kappa = 1.0;
  double T_s = 1.0;

  // [problem]
  double alpha2_min = 0.05;
  int J = 50;
  int J1 = 30;
  std::string mc_mode = "practical";
  double mc_ratio = 0.3;
  double C_mc = 2.0;
  int n_nom = 1000;
  double grid_dalpha = 0.02;
  double grid_dpt_db = 1.0;
  std::uint64_t random_Z = 10000;
  int local_starts = 20;
  int local_budget = 400;

  // derived module parameter blocks
  wpt::WptParams wpt_params() const;
  wpt::PowerThresholds thresholds() const;
  wpt::FrameSplit frame() const;
  sensing::SensingParams sensing_params() const;
  throughput::ProblemSpec problem_spec(throughput::Variant v) const;

  double snr() const;
};

// Parse the sectioned key-value config file; unknown keys and malformed
// numerics are reported with their section-qualified key path.
Config load_config(const std::string& path);

// Canonical serialization (stable order, shortest round-trip numerals).
std::string emit_config(const Config& cfg);

// In-memory parse of emit_config output (round-trip check, tests).
Config parse_config_text(const std::string& text, const std::string& origin = "<memory>");

std::uint64_t config_hash(const Config& cfg);

std::string format_double(double v);  // shortest round-trip decimal

double dbm_to_watt(double dbm);
double watt_to_dbm(double w);

}  // namespace artifact::harness
