#include "artifact/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace artifact::completion {

void FcMatrix::validate() const {
  if (J < 1) throw std::domain_error("FcMatrix: J < 1");
  if (static_cast<int>(observed.size()) != X.cols())
    throw std::domain_error("FcMatrix: observed/X column mismatch");
  if (observed.empty()) throw std::domain_error("FcMatrix: no observed columns");
  if (static_cast<int>(observed.size()) > J)
    throw std::domain_error("FcMatrix: more observed columns than J");
  std::set<int> uniq(observed.begin(), observed.end());
  if (uniq.size() != observed.size())
    throw std::domain_error("FcMatrix: duplicate SU index");
  for (int j : observed)
    if (j < 0 || j >= J) throw std::domain_error("FcMatrix: SU index out of range");
}

FcMatrix assemble_fc_matrix(const std::vector<std::pair<int, CVec>>& views, int J) {
  if (views.empty()) throw std::domain_error("assemble_fc_matrix: no views");
  FcMatrix fc;
  fc.J = J;
  const auto len = views.front().second.size();
  fc.X.resize(len, views.size());
  for (std::size_t k = 0; k < views.size(); ++k) {
    if (views[k].second.size() != len)
      throw std::invalid_argument("assemble_fc_matrix: column length mismatch");
    fc.observed.push_back(views[k].first);
    fc.X.col(k) = views[k].second;
  }
  fc.validate();
  return fc;
}

namespace {

// Forward operator on the observed columns: (A S)_j = Theta_j S_j.
CMat apply_A(const CMat& S, const std::vector<sensing::MeasurementOp>& ops) {
  CMat out(ops.front().Theta.rows(), S.cols());
  for (int j = 0; j < S.cols(); ++j) out.col(j) = ops[j].Theta * S.col(j);
  return out;
}

CMat apply_At(const CMat& R, const std::vector<sensing::MeasurementOp>& ops) {
  CMat out(ops.front().Theta.cols(), R.cols());
  for (int j = 0; j < R.cols(); ++j) out.col(j) = ops[j].Theta.adjoint() * R.col(j);
  return out;
}

double operator_norm_sq(const std::vector<sensing::MeasurementOp>& ops, int n,
                        int J1) {
  mathkit::Rng rng(0x5eed, 0);
  CMat v(n, J1);
  for (int j = 0; j < J1; ++j)
    for (int i = 0; i < n; ++i)
      v(i, j) = std::complex<double>(rng.normal(), rng.normal());
  double norm = 1.0;
  for (int it = 0; it < 30; ++it) {
    v = apply_At(apply_A(v, ops), ops);
    norm = v.norm();
    if (norm == 0.0) return 1.0;
    v /= norm;
  }
  return norm;
}

// ALS refinement of a rank-r factorization S = U * V against the per-column
// measurement constraints (exact for noiseless consistent instances).
void als_polish(CMat& Sobs, const CMat& X,
                const std::vector<sensing::MeasurementOp>& ops, int rank,
                int iters) {
  const int n = static_cast<int>(Sobs.rows());
  const int J1 = static_cast<int>(Sobs.cols());
  auto svd = mathkit::svd(Sobs);
  const int r = std::min<int>(rank, static_cast<int>(svd.s.size()));
  CMat U = svd.U.leftCols(r);
  for (int i = 0; i < r; ++i) U.col(i) *= svd.s[i];
  CMat V = svd.V.leftCols(r).adjoint();  // r x J1
  const int Lam = static_cast<int>(X.rows());
  for (int it = 0; it < iters; ++it) {
    // V given U: independent per-column least squares
    for (int j = 0; j < J1; ++j) {
      CMat M = ops[j].Theta * U;
      V.col(j) = (M.adjoint() * M).ldlt().solve(M.adjoint() * X.col(j));
    }
    // U given V: stacked system in vec(U), column-major
    CMat A(J1 * Lam, n * r);
    CVec rhs(J1 * Lam);
    for (int j = 0; j < J1; ++j) {
      for (int k = 0; k < r; ++k)
        A.block(j * Lam, k * n, Lam, n) = V(k, j) * ops[j].Theta;
      rhs.segment(j * Lam, Lam) = X.col(j);
    }
    CVec u = (A.adjoint() * A).ldlt().solve(A.adjoint() * rhs);
    U = Eigen::Map<CMat>(u.data(), n, r);
    Sobs = U * V;
    if ((apply_A(Sobs, ops) - X).norm() <= 1e-12 * X.norm()) break;
  }
}

}  // namespace

CompletionResult complete_matrix(const FcMatrix& fc,
                                 const std::vector<sensing::MeasurementOp>& ops,
                                 const CompletionConfig& cfg) {
  fc.validate();
  const int J1 = static_cast<int>(fc.observed.size());
  if (static_cast<int>(ops.size()) != J1)
    throw std::invalid_argument("complete_matrix: one MeasurementOp per observed column");
  const int n = static_cast<int>(ops.front().Theta.cols());

  CompletionResult out;
  out.S = CMat::Zero(n, fc.J);
  if (fc.X.isZero(0.0)) {
    out.converged = true;
    out.residuals.assign(J1, 0.0);
    return out;
  }

  // Fully determined columns (kappa = 1) need no completion: invert directly.
  bool all_square = true;
  for (const auto& op : ops)
    if (op.Theta.rows() < op.Theta.cols()) all_square = false;
  if (all_square) {
    out.residuals.resize(J1);
    for (int j = 0; j < J1; ++j) {
      CVec col = ops[j].Theta.colPivHouseholderQr().solve(fc.X.col(j));
      out.residuals[j] = (ops[j].Theta * col - fc.X.col(j)).norm();
      out.S.col(fc.observed[j]) = col;
    }
    out.converged = true;
    out.rank = std::min<int>(n, J1);
    return out;
  }

  const double L = operator_norm_sq(ops, n, J1);
  const double step = cfg.step / L;
  double tau = cfg.threshold_tau > 0.0 ? cfg.threshold_tau : fc.X.norm();
  const int levels = std::max(1, cfg.continuation_levels);
  // Each continuation level must reach its own prox fixed point before tau
  // shrinks, otherwise the late small-tau levels descend from an unconverged
  // iterate onto an arbitrary measurement-consistent matrix.
  const int iters_per_level = std::max(1, cfg.max_iter);

  CMat S = CMat::Zero(n, J1);
  double prev_res = std::numeric_limits<double>::infinity();
  int growth_streak = 0;
  int total_iters = 0;
  for (int lev = 0; lev < levels; ++lev) {
    for (int it = 0; it < iters_per_level; ++it) {
      ++total_iters;
      CMat R = apply_A(S, ops) - fc.X;
      CMat G = S - step * apply_At(R, ops);
      auto svd = mathkit::svd(G);
      Eigen::VectorXd sv = svd.s;
      for (int i = 0; i < sv.size(); ++i) sv[i] = std::max(0.0, sv[i] - tau * step);
      CMat Snew = svd.U * sv.asDiagonal() * svd.V.adjoint();
      const double change = (Snew - S).norm();
      const double scale = std::max(1.0, S.norm());
      const double res = R.norm();
      if (res > prev_res * (1.0 + 1e-12)) {
        if (++growth_streak >= 10) {
          out.diverged = true;
          out.S.setZero();
          out.iterations = total_iters;
          out.residuals.assign(J1, res);
          return out;
        }
      } else {
        growth_streak = 0;
      }
      prev_res = res;
      S = std::move(Snew);
      if (change <= cfg.tol * scale) break;
    }
    if (prev_res <= 1e-10 * fc.X.norm()) break;
    tau *= 0.2;
  }

  auto svd = mathkit::svd(S);
  const double smax = svd.s.size() ? svd.s[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.s.size(); ++i)
    if (svd.s[i] > 1e-3 * smax) ++rank;
  out.rank = std::max(1, rank);

  // ALS polish is worthwhile (and cheap) only at genuinely low rank.
  if (cfg.polish && out.rank * n <= 2048) als_polish(S, fc.X, ops, out.rank, 50);

  out.iterations = total_iters;
  out.residuals.resize(J1);
  bool all_ok = true;
  for (int j = 0; j < J1; ++j) {
    out.residuals[j] = (ops[j].Theta * S.col(j) - fc.X.col(j)).norm();
    const double eps_j =
        j < static_cast<int>(cfg.eps_vec.size()) ? cfg.eps_vec[j] : 1e-6 * fc.X.norm();
    if (out.residuals[j] > eps_j) all_ok = false;
  }
  out.converged = all_ok;
  for (int j = 0; j < J1; ++j) out.S.col(fc.observed[j]) = S.col(j);
  return out;
}

std::uint64_t cs_sample_bound(double n, double K_eff, double C_cs) {
  if (!(n > K_eff && K_eff >= 1.0))
    throw std::domain_error("cs_sample_bound: need n > K_eff >= 1");
  return static_cast<std::uint64_t>(std::ceil(C_cs * K_eff * std::log(n / K_eff)));
}

McBound mc_sample_bound(double n, double J, double K, double C_mc, McBoundMode mode,
                        double ratio) {
  if (n < 1.0 || J < 1.0) throw std::domain_error("mc_sample_bound: n, J >= 1");
  if (mode == McBoundMode::practical) {
    return {std::ceil(ratio * n * J), true};
  }
  const double nu = std::max(n, J);
  const double mu2 = std::log(nu);
  const double bound = C_mc * mu2 * nu * K * std::pow(std::log(nu), 6.0);
  return {bound, bound <= n * J};
}

}  // namespace artifact::completion
