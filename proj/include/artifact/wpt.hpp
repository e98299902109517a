#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "artifact/mathkit.hpp"

namespace artifact::wpt {

struct WptParams {
  double lambda_p = 1e-3;  // PB density per m^2
  int M = 32;              // antennas per PB
  double Pp = 19.952623149688797;  // PB transmit power, W (43 dBm)
  double eta = 0.8;        // conversion efficiency
  double A = 7.0362087988540396e-4;  // path-loss constant at 900 MHz
  double xi = 2.0;         // path-loss exponent
  double d0 = 1.0;         // protection-zone radius, m

  double delta() const { return 2.0 / xi; }
  void validate() const;
};

struct FrameSplit {
  double alpha1 = 0.25;
  double beta = 0.25;
  double alpha2 = 0.2;
  double kappa = 1.0;  // compression ratio
  double T = 1.0;      // frame length, s

  // transmission fraction 1 - alpha1 - kappa*beta - alpha2
  double transmit_fraction() const { return 1.0 - alpha1 - kappa * beta - alpha2; }
  void validate() const;
};

struct PowerThresholds {
  double Ps = 1e-3;      // sensing power, W (0 dBm)
  double Pt = 1e-2;      // transmit power, W
  double Pt_min = 1e-3;  // 0 dBm
  double Pt_max = 1e-1;  // 20 dBm
  double N0 = 1e-12;     // transmission-channel noise, W (-90 dBm)
};

// One PB: (distance >= d0, channel gain ||h_p||^2)
struct PbDraw {
  std::vector<std::pair<double, double>> pbs;
};

struct SlotPowers {
  double P_H1;  // max sensing power, slot 1 harvest
  double P_T2;  // transmit power budget for an active SU (floored at 0)
  double P_H3;  // transmit power budget for an inactive SU (harvests 3 slots)
};

enum class MuKind { s, t, a, i };

struct McEstimate {
  double estimate;
  double stderr_;
};

PbDraw sample_pb_field(const WptParams& params, double r_max, mathkit::Rng& rng);

double best_effective_gain(const PbDraw& draw, const WptParams& params);

SlotPowers slot_powers(double G, const WptParams& params, const FrameSplit& frame,
                       const PowerThresholds& thr);

double mu_coefficient(MuKind kind, const WptParams& params, const FrameSplit& frame,
                      const PowerThresholds& thr);

double outage_closed_form(double mu, const WptParams& params);

// r_max giving closed-form tail truncation < 1e-4: 10*(M/mu)^{1/xi}, capped.
double default_r_max(double mu, const WptParams& params);

McEstimate outage_monte_carlo(MuKind kind, const WptParams& params,
                              const FrameSplit& frame, const PowerThresholds& thr,
                              std::uint64_t trials, double r_max,
                              std::uint64_t base_seed,
                              std::uint64_t stream_base = 0, int threads = 0);

// Same oracle keyed directly on the threshold coefficient mu.
McEstimate outage_monte_carlo_mu(double mu, const WptParams& params,
                                 std::uint64_t trials, double r_max,
                                 std::uint64_t base_seed,
                                 std::uint64_t stream_base = 0, int threads = 0);

double system_outage(double p_s_out, double p_t_out);

struct CssOutageProfile {
  double p_active;
  double p_inactive;
  double p_average;
};

CssOutageProfile css_outage_profile(const WptParams& params, const FrameSplit& frame,
                                    const PowerThresholds& thr, int J, int J1);

}  // namespace artifact::wpt
