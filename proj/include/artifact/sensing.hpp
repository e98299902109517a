#pragma once

#include <cstdint>
#include <vector>

#include "artifact/mathkit.hpp"

namespace artifact::sensing {

using mathkit::CMat;
using mathkit::CVec;
using mathkit::Mat;

// Wideband occupancy ground truth. n counts real Nyquist samples per sensing
// window; the spectrum is represented as n/2 complex baseband bins, so each of
// the I channels spans n/(2I) bins and a per-channel energy statistic has
// n/I real degrees of freedom.
struct SpectrumScene {
  int I = 32;
  int K = 4;
  std::vector<int> occupied;  // channel indices, |occupied| == K
  int n = 1024;               // real Nyquist samples per window
  double sigma_s2 = 0.1;      // aggregate PU signal power
  double sigma2 = 1.0;        // noise power

  double snr() const { return sigma_s2 / sigma2; }
  int nbins() const { return n / 2; }
  int bins_per_channel() const { return n / (2 * I); }
  void validate() const;
};

struct SensingParams {
  double e_s = 2.5e-7;     // energy per Nyquist sample, J
  double Pd_target = 0.9;  // target detection probability
  double C_cs = 2.0;       // constant in the CS sample bound
  void validate() const;
};

struct MeasurementOp {
  int Lambda = 0;  // measurement count, round(kappa * nbins)
  Mat Phi;         // Lambda x nbins, i.i.d. N(0, 1/Lambda)
  CMat Theta;      // Phi * F^{-1}
};

// Unitary DFT matrix of size m.
CMat dft_matrix(int m);

MeasurementOp make_measurement_op(double kappa, int nbins, mathkit::Rng& rng);

struct SynthesisResult {
  CVec r_time;  // received samples (signal + noise), time domain
  CVec s_freq;  // ground-truth signal spectrum (no noise)
  CVec r_freq;  // received spectrum (signal + noise)
};

SynthesisResult synthesize_received(const SpectrumScene& scene, mathkit::Rng& rng);

CVec compress(const CVec& r_time, const MeasurementOp& op);

struct RecoverResult {
  CVec estimate;
  double residual_norm = 0.0;
  bool converged = false;
};

// Greedy sparse pursuit (CoSaMP-style support identification + least squares).
// block > 1 groups support selection into channels of `block` adjacent bins;
// sparsity_budget always counts bins.
RecoverResult cs_recover(const CVec& x, const MeasurementOp& op, int sparsity_budget,
                         double eps, int block = 1, int max_iter = 100);

double detection_threshold(double Pd_target, double n_eff, double sigma_s2,
                           double sigma2);

// Per-channel occupancy decisions: average recovered power over each channel's
// bins compared against lambda.
std::vector<std::uint8_t> energy_detect(const CVec& estimate, int I, double lambda);

std::uint64_t sample_count(double beta, double T, double Ps, double e_s);

double pf_analytic(double Pd_target, double snr, double n);
double qf_analytic(double Pd_target, double snr, double n, int J);

// One full sensing trial: synthesize -> compress -> recover -> impute noise
// floor off-support -> per-channel detection at n_eff = n/I. kappa == 1 skips
// recovery (the spectrum itself is the estimate). The off-support bins of a
// sparse estimate are exactly zero, which the calibrated detector would read
// as "no noise floor"; they are re-filled with pseudo-noise CN(0, sigma2)
// from the trial's stream so idle channels see the calibrated statistic.
std::vector<std::uint8_t> detect_trial(const SpectrumScene& scene, double kappa,
                                       double Pd_target, mathkit::Rng& rng);

// Full-band empirical false-alarm rate at kappa = 1: one energy statistic over
// the whole n-sample window under H0, threshold at n_eff = n.
double empirical_fullband_pf(double Pd_target, double snr, int n,
                             std::uint64_t trials, std::uint64_t base_seed,
                             std::uint64_t stream_base = 0, int threads = 0);

}  // namespace artifact::sensing
