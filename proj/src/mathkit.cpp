#include "artifact/mathkit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace artifact::mathkit {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t base_seed, std::uint64_t stream_id) {
  std::uint64_t st = base_seed;
  std::uint64_t a = splitmix64(st);
  st ^= stream_id * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
  for (int i = 0; i < 4; ++i) s_[i] = splitmix64(st);
  s_[0] ^= a;
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[3] = 1;
}

std::uint64_t Rng::next_u64() {
  // xoshiro256**
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // Marsaglia polar method
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  cached_normal_ = v * f;
  has_cached_normal_ = true;
  return u * f;
}

double Rng::exponential() {
  return -std::log1p(-uniform());
}

double Rng::gamma(double alpha) {
  if (alpha < 1.0) {
    // Boost to shape >= 1 (Marsaglia-Tsang augmentation)
    const double u = uniform();
    return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::uint64_t sample_poisson(double mean, Rng& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::domain_error("sample_poisson: mean must be finite and >= 0");
  // Poisson(a+b) = Poisson(a) + Poisson(b): draw in chunks small enough for
  // Knuth's product method to stay in double range.
  constexpr double kChunk = 16.0;
  std::uint64_t total = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    const double m = remaining > kChunk ? kChunk : remaining;
    remaining -= m;
    const double limit = std::exp(-m);
    double p = 1.0;
    std::uint64_t k = 0;
    do {
      ++k;
      p *= rng.uniform();
    } while (p > limit);
    total += k - 1;
  }
  return total;
}

double sample_channel_gain(int M, Rng& rng) {
  if (M < 1) throw std::domain_error("sample_channel_gain: M must be >= 1");
  return rng.gamma(static_cast<double>(M));
}

double erlang_cdf(int M, double x) {
  if (x <= 0.0) return 0.0;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < M; ++m) {
    term *= x / m;
    sum += term;
  }
  return 1.0 - std::exp(-x) * sum;
}

double q_function(double x) {
  if (!std::isfinite(x)) throw std::domain_error("q_function: non-finite input");
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("q_inverse: p must be in (0, 1)");
  // Acklam's rational approximation for the normal quantile, then one
  // Halley polish against q_function.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double pl = 1.0 - p;  // Phi(x) = 1 - Q(x) = pl
  double x;
  const double plow = 0.02425, phigh = 1.0 - plow;
  if (pl < plow) {
    const double q = std::sqrt(-2.0 * std::log(pl));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (pl <= phigh) {
    const double q = pl - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - pl));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley step on Q(x) - p = 0
  const double e = q_function(x) - p;
  const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  const double u = e / phi;  // Q' = -phi
  x = x + u / (1.0 - 0.5 * x * u);
  return x;
}

namespace {

// Regularized lower incomplete gamma by series, valid for z < a + 1.
double gamma_p_series(double a, double z) {
  double sum = 1.0 / a, term = sum;
  for (int k = 1; k < 500; ++k) {
    term *= z / (a + k);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-z + a * std::log(z) - std::lgamma(a));
}

// Gamma(a, z) / (z^a e^{-z}) by Lentz continued fraction, valid for z >= a + 1.
double gamma_q_cf(double a, double z) {
  const double tiny = 1e-300;
  double b = z + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h;
}

}  // namespace

double upper_incomplete_gamma(double a, double z) {
  if (a <= 0.0) throw std::domain_error("upper_incomplete_gamma: a must be > 0");
  if (z < 0.0) throw std::domain_error("upper_incomplete_gamma: z must be >= 0");
  if (z == 0.0) return std::tgamma(a);
  if (z < a + 1.0) {
    return std::tgamma(a) * (1.0 - gamma_p_series(a, z));
  }
  return std::exp(a * std::log(z) - z) * gamma_q_cf(a, z);
}

double upper_gamma_sum(int M, double delta, double z) {
  // G_m = Gamma(m + delta, z) / m!; recurrence
  // G_{m+1} = G_m (m + delta)/(m + 1) + P_m/(m + 1), P_m = z^{m+delta} e^{-z}/m!
  double g = upper_incomplete_gamma(delta, z);
  double p = (z > 0.0) ? std::exp(delta * std::log(z) - z) : 0.0;
  double sum = g;
  for (int m = 0; m + 1 < M; ++m) {
    g = (g * (m + delta) + p) / (m + 1);
    p *= z / (m + 1);
    sum += g;
  }
  return sum;
}

SvdResult svd(const CMat& A) {
  Eigen::BDCSVD<CMat> solver(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

SvdResult svd(const Mat& A) {
  return svd(CMat(A.cast<std::complex<double>>()));
}

}  // namespace artifact::mathkit
