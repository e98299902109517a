#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace artifact::mathkit {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

// Counter-derived random stream: identical (base_seed, stream_id) pairs yield
// identical sequences, distinct stream ids are statistically independent, so
// Monte Carlo trials can be farmed out in any order.
class Rng {
 public:
  Rng(std::uint64_t base_seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double uniform();               // [0, 1)
  double normal();                // standard normal
  double exponential();           // unit mean
  double gamma(double alpha);     // shape alpha, unit scale

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

std::uint64_t sample_poisson(double mean, Rng& rng);

// ||h_p||^2 under MRT over M antennas: Erlang(M, 1).
double sample_channel_gain(int M, Rng& rng);

// Erlang(M,1) CDF: 1 - e^{-x} sum_{m<M} x^m/m!  (used as a sampling oracle).
double erlang_cdf(int M, double x);

double q_function(double x);
double q_inverse(double p);

// Gamma(a, z) = int_z^inf t^{a-1} e^{-t} dt (non-regularized).
double upper_incomplete_gamma(double a, double z);

// sum_{m=0}^{M-1} Gamma(m + delta, z) / m!, evaluated with the recurrence
// Gamma(a+1,z) = a*Gamma(a,z) + z^a e^{-z} (one incomplete-gamma call total).
double upper_gamma_sum(int M, double delta, double z);

struct SvdResult {
  CMat U;
  Vec s;   // descending
  CMat V;  // A = U * diag(s) * V^H
};

SvdResult svd(const CMat& A);
SvdResult svd(const Mat& A);

}  // namespace artifact::mathkit
