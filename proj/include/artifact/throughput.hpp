#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "artifact/completion.hpp"
#include "artifact/mathkit.hpp"
#include "artifact/sensing.hpp"
#include "artifact/wpt.hpp"

namespace artifact::throughput {

enum class Variant { P0, P1 };

struct DesignTuple {
  double alpha1 = 0.25;
  double beta = 0.25;
  double alpha2 = 0.2;
  double Pt = 1e-3;  // W
};

struct ProblemSpec {
  Variant variant = Variant::P0;
  wpt::WptParams wpt_params;
  wpt::PowerThresholds thr;
  sensing::SensingParams sense;
  double snr = 0.1;
  int I = 32;
  int K = 4;
  int n_nom = 1000;  // nominal Nyquist sample count for the C2/C6 bounds
  double kappa = 1.0;
  double T = 1.0;
  double alpha2_min = 0.05;
  int J = 50;
  int J1 = 30;
  completion::McBoundMode mc_mode = completion::McBoundMode::practical;
  double mc_ratio = 0.3;
  double C_mc = 2.0;

  // C2 (P0) / C6 (P1) lower bound on beta.
  double beta_lower() const;
};

struct Feasibility {
  bool ok = false;
  std::vector<std::string> violated;
};

struct GridSteps {
  double d_alpha1 = 0.02;
  double d_beta = 0.02;
  double d_alpha2 = 0.02;
  double d_pt_db = 1.0;
};

struct OptResult {
  DesignTuple best;
  double value = 0.0;
  std::uint64_t evaluations = 0;
  std::string method;
  bool feasible = false;
};

double tau_transmission(double Pt, double N0);

// Single-SU throughput with CS (time-weighted, bits/s/Hz).
double tau_cs(const DesignTuple& d, const ProblemSpec& spec);

// Cooperative-network throughput (sum over J SUs); per-SU value is value / J.
double tau_mc(const DesignTuple& d, const ProblemSpec& spec);

// Dispatches on spec.variant; throws on infeasible input.
double objective(const DesignTuple& d, const ProblemSpec& spec);

Feasibility feasible(const DesignTuple& d, const ProblemSpec& spec);

OptResult grid_search(const ProblemSpec& spec, const GridSteps& steps = {});

OptResult random_sampling(const ProblemSpec& spec, std::uint64_t Z,
                          mathkit::Rng& rng);

OptResult local_search(const ProblemSpec& spec,
                       const std::vector<DesignTuple>& starts, int budget = 400);

std::vector<DesignTuple> random_starts(const ProblemSpec& spec, int count,
                                       mathkit::Rng& rng);

}  // namespace artifact::throughput
