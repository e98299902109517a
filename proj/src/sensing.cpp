#include "artifact/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace artifact::sensing {

using mathkit::Rng;
using std::complex;

void SpectrumScene::validate() const {
  if (I < 1) throw std::domain_error("SpectrumScene: I < 1");
  if (K < 0 || K > I) throw std::domain_error("SpectrumScene: need 0 <= K <= I");
  if (n < 2 || n % (2 * I) != 0)
    throw std::domain_error("SpectrumScene: n must be a positive multiple of 2I");
  if (static_cast<int>(occupied.size()) != K)
    throw std::domain_error("SpectrumScene: |occupied| != K");
  std::set<int> uniq(occupied.begin(), occupied.end());
  if (static_cast<int>(uniq.size()) != K)
    throw std::domain_error("SpectrumScene: duplicate occupied channel");
  for (int c : occupied)
    if (c < 0 || c >= I) throw std::domain_error("SpectrumScene: channel index out of range");
  if (sigma_s2 < 0.0 || sigma2 <= 0.0)
    throw std::domain_error("SpectrumScene: bad powers");
}

void SensingParams::validate() const {
  if (e_s <= 0.0) throw std::domain_error("SensingParams: e_s <= 0");
  if (!(Pd_target > 0.5 && Pd_target < 1.0))
    throw std::domain_error("SensingParams: Pd_target out of (0.5, 1)");
  if (C_cs <= 0.0) throw std::domain_error("SensingParams: C_cs <= 0");
}

CMat dft_matrix(int m) {
  CMat F(m, m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      F(r, c) = std::polar(scale, -2.0 * M_PI * r * c / m);
  return F;
}

namespace {

// The inverse DFT is applied once per Monte Carlo trial; cache it per size.
const CMat& idft_cached(int m) {
  static std::mutex mu;
  static std::map<int, CMat> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, dft_matrix(m).adjoint()).first;
  return it->second;
}

}  // namespace

MeasurementOp make_measurement_op(double kappa, int nbins, Rng& rng) {
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw std::domain_error("make_measurement_op: kappa out of (0,1]");
  MeasurementOp op;
  op.Lambda = static_cast<int>(std::lround(kappa * nbins));
  op.Phi.resize(op.Lambda, nbins);
  const double scale = 1.0 / std::sqrt(static_cast<double>(op.Lambda));
  for (int r = 0; r < op.Lambda; ++r)
    for (int c = 0; c < nbins; ++c) op.Phi(r, c) = rng.normal() * scale;
  const CMat& Finv = idft_cached(nbins);
  op.Theta.resize(op.Lambda, nbins);
  op.Theta.real() = op.Phi * Finv.real();
  op.Theta.imag() = op.Phi * Finv.imag();
  return op;
}

SynthesisResult synthesize_received(const SpectrumScene& scene, Rng& rng) {
  scene.validate();
  const int nb = scene.nbins();
  const int b = scene.bins_per_channel();
  SynthesisResult out;
  out.s_freq = CVec::Zero(nb);
  const double per_bin =
      scene.K > 0 ? scene.sigma_s2 * scene.I / scene.K : 0.0;
  const double amp_s = std::sqrt(per_bin / 2.0);
  for (int c : scene.occupied)
    for (int k = 0; k < b; ++k)
      out.s_freq[c * b + k] = complex<double>(rng.normal(), rng.normal()) * amp_s;
  out.r_freq = out.s_freq;
  const double amp_n = std::sqrt(scene.sigma2 / 2.0);
  for (int k = 0; k < nb; ++k)
    out.r_freq[k] += complex<double>(rng.normal(), rng.normal()) * amp_n;
  out.r_time = idft_cached(nb) * out.r_freq;
  return out;
}

CVec compress(const CVec& r_time, const MeasurementOp& op) {
  if (r_time.size() != op.Phi.cols())
    throw std::invalid_argument("compress: dimension mismatch");
  return op.Phi * r_time;
}

namespace {

// Least-squares fit of x on the given bin columns of Theta (normal equations).
CVec ls_on_support(const CMat& Theta, const CVec& x, const std::vector<int>& cols) {
  CMat A(Theta.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) A.col(j) = Theta.col(cols[j]);
  CMat G = A.adjoint() * A;
  CVec rhs = A.adjoint() * x;
  CVec sol = G.ldlt().solve(rhs);
  CVec est = CVec::Zero(Theta.cols());
  for (std::size_t j = 0; j < cols.size(); ++j) est[cols[j]] = sol[j];
  return est;
}

std::vector<int> block_cols(const std::vector<int>& blocks, int block) {
  std::vector<int> cols;
  cols.reserve(blocks.size() * block);
  for (int blk : blocks)
    for (int k = 0; k < block; ++k) cols.push_back(blk * block + k);
  return cols;
}

std::vector<int> top_blocks(const Eigen::VectorXd& block_energy, int count) {
  std::vector<int> idx(block_energy.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::partial_sort(idx.begin(), idx.begin() + std::min<std::size_t>(count, idx.size()),
                    idx.end(), [&](int a, int bb) {
                      if (block_energy[a] != block_energy[bb])
                        return block_energy[a] > block_energy[bb];
                      return a < bb;
                    });
  idx.resize(std::min<std::size_t>(count, idx.size()));
  return idx;
}

Eigen::VectorXd per_block_energy(const CVec& v, int block) {
  const int nblk = static_cast<int>(v.size()) / block;
  Eigen::VectorXd e(nblk);
  for (int i = 0; i < nblk; ++i)
    e[i] = v.segment(i * block, block).squaredNorm();
  return e;
}

}  // namespace

RecoverResult cs_recover(const CVec& x, const MeasurementOp& op, int sparsity_budget,
                         double eps, int block, int max_iter) {
  if (sparsity_budget < 1)
    throw std::domain_error("cs_recover: sparsity_budget < 1");
  const int nb = static_cast<int>(op.Theta.cols());
  if (x.size() != op.Lambda) throw std::invalid_argument("cs_recover: dimension mismatch");
  if (x.isZero(0.0)) return {CVec::Zero(nb), 0.0, true};
  RecoverResult out;
  if (op.Lambda >= nb) {
    // Square (or overdetermined) system: direct solve, no pursuit needed.
    out.estimate = op.Theta.colPivHouseholderQr().solve(x);
    out.residual_norm = (op.Theta * out.estimate - x).norm();
    out.converged = true;
    return out;
  }
  if (block < 1 || nb % block != 0)
    throw std::domain_error("cs_recover: block must divide the bin count");
  const int keep_blocks = std::max(1, sparsity_budget / block);
  // bin-level pursuit admits 2*budget candidates per round; block-level
  // selection admits keep_blocks fresh candidate blocks (union with support)
  const int cand_blocks = (block == 1) ? 2 * keep_blocks : keep_blocks;

  CVec best_est = CVec::Zero(nb);
  double best_res = x.norm();
  std::vector<int> support;
  CVec res = x;
  for (int it = 0; it < max_iter; ++it) {
    CVec proxy = op.Theta.adjoint() * res;
    auto cand = top_blocks(per_block_energy(proxy, block), cand_blocks);
    std::set<int> merged(support.begin(), support.end());
    merged.insert(cand.begin(), cand.end());
    std::vector<int> trial_blocks(merged.begin(), merged.end());
    CVec est = ls_on_support(op.Theta, x, block_cols(trial_blocks, block));
    support = top_blocks(per_block_energy(est, block), keep_blocks);
    std::sort(support.begin(), support.end());
    est = ls_on_support(op.Theta, x, block_cols(support, block));
    res = x - op.Theta * est;
    const double rn = res.norm();
    if (rn < best_res) {
      best_res = rn;
      best_est = est;
    }
    if (rn <= eps) {
      return {std::move(est), rn, true};
    }
  }
  out.estimate = std::move(best_est);
  out.residual_norm = best_res;
  out.converged = best_res <= eps;
  return out;
}

double detection_threshold(double Pd_target, double n_eff, double sigma_s2,
                           double sigma2) {
  if (n_eff < 2.0) throw std::domain_error("detection_threshold: n_eff < 2");
  if (!(Pd_target > 0.5 && Pd_target < 1.0))
    throw std::domain_error("detection_threshold: Pd_target out of (0.5, 1)");
  return (sigma_s2 + sigma2) *
         (1.0 + mathkit::q_inverse(Pd_target) / std::sqrt(n_eff / 2.0));
}

std::vector<std::uint8_t> energy_detect(const CVec& estimate, int I, double lambda) {
  const int nb = static_cast<int>(estimate.size());
  if (I < 1 || nb % I != 0)
    throw std::invalid_argument("energy_detect: bins must partition evenly");
  const int b = nb / I;
  std::vector<std::uint8_t> dec(I);
  for (int c = 0; c < I; ++c) {
    const double stat = estimate.segment(c * b, b).squaredNorm() / b;
    dec[c] = stat > lambda ? 1 : 0;
  }
  return dec;
}

std::uint64_t sample_count(double beta, double T, double Ps, double e_s) {
  if (beta <= 0.0 || T <= 0.0 || Ps <= 0.0 || e_s <= 0.0)
    throw std::domain_error("sample_count: all arguments must be positive");
  const double n = std::floor(beta * T * Ps / e_s);
  if (n < 1.0) throw std::domain_error("sample_count: fewer than one sample affordable");
  return static_cast<std::uint64_t>(n);
}

double pf_analytic(double Pd_target, double snr, double n) {
  if (snr < 0.0 || n < 2.0) throw std::domain_error("pf_analytic: bad arguments");
  return mathkit::q_function(mathkit::q_inverse(Pd_target) * std::sqrt(1.0 + snr) +
                             std::sqrt(n / 2.0) * snr);
}

double qf_analytic(double Pd_target, double snr, double n, int J) {
  if (J < 1) throw std::domain_error("qf_analytic: J < 1");
  return mathkit::q_function(mathkit::q_inverse(Pd_target) * std::sqrt(1.0 + snr) +
                             std::sqrt(n * J / 2.0) * snr);
}

std::vector<std::uint8_t> detect_trial(const SpectrumScene& scene, double kappa,
                                       double Pd_target, Rng& rng) {
  const int nb = scene.nbins();
  const int b = scene.bins_per_channel();
  auto syn = synthesize_received(scene, rng);
  CVec estimate;
  if (kappa >= 1.0) {
    estimate = syn.r_freq;
  } else {
    MeasurementOp op = make_measurement_op(kappa, nb, rng);
    CVec x = compress(syn.r_time, op);
    auto rec = cs_recover(x, op, scene.K * b, 0.0, b, 6);
    estimate = rec.estimate;
    const double amp = std::sqrt(scene.sigma2 / 2.0);
    for (int k = 0; k < nb; ++k)
      if (estimate[k] == complex<double>(0.0, 0.0))
        estimate[k] = complex<double>(rng.normal(), rng.normal()) * amp;
  }
  const double lambda = detection_threshold(
      Pd_target, static_cast<double>(scene.n) / scene.I, scene.sigma_s2, scene.sigma2);
  return energy_detect(estimate, scene.I, lambda);
}

double empirical_fullband_pf(double Pd_target, double snr, int n,
                             std::uint64_t trials, std::uint64_t base_seed,
                             std::uint64_t stream_base, int threads) {
  const double lambda = detection_threshold(Pd_target, n, snr, 1.0);
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  auto run_block = [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
    std::uint64_t hits = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
      Rng rng(base_seed, stream_base + t);
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        const double w = rng.normal();
        acc += w * w;
      }
      if (acc / n > lambda) ++hits;
    }
    return hits;
  };
  std::uint64_t hits = 0;
  if (threads == 1 || trials < 512) {
    hits = run_block(0, trials);
  } else {
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const std::uint64_t lo = w * chunk;
      const std::uint64_t hi = std::min<std::uint64_t>(trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, w, lo, hi] { partial[w] = run_block(lo, hi); });
    }
    for (auto& th : pool) th.join();
    for (auto h : partial) hits += h;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace artifact::sensing
