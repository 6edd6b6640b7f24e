// gm.hpp
// Geometric measure of entanglement: Lambda^2(rho) = max <phi|rho|phi> over
// fully product pure states, G = -log2 Lambda^2, computed by multi-start
// alternating rank-one optimization.
//
// Engine notes:
//  * Holding all parties but j fixed, the optimal local vector is the top
//    eigenvector of the conditioned matrix M_j = (x_{l!=j} <a_l|) H
//    (x_{l!=j} |a_l>), so every slot update is monotone in the objective.
//  * Rank-one inputs |psi><psi| never materialize H: the conditioned matrix
//    is u u^dag with u the contraction of psi against the other parties, and
//    the slot optimum is u/|u|.
//  * The reported lambda_sq is always re-evaluated from the returned witness,
//    so a GmResult is a sound lower bound on Lambda^2 even when the global
//    search failed.
//  * Convergence is declared on objective stall, not iterate stall; closest
//    product manifolds can be flat.

#pragma once

#include "entmeas/rng.hpp"
#include "entmeas/tensor_ops.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace entmeas {

enum class GmAnsatz { General, SymmetricReplica, AntisymFrame, NonNegative };

inline std::string ansatz_name(GmAnsatz a) {
  switch (a) {
    case GmAnsatz::General: return "general";
    case GmAnsatz::SymmetricReplica: return "symmetric_replica";
    case GmAnsatz::AntisymFrame: return "antisym_frame";
    case GmAnsatz::NonNegative: return "non_negative";
  }
  return "?";
}

struct GmOptions {
  int restarts = 32;            // base count; doubled per party beyond 4
  bool scale_restarts = true;
  int max_restarts = 1024;
  int max_iters = 2000;
  double tol = 1e-11;           // objective-stall threshold
  uint64_t seed = 0x243f6a8885a308d3ULL;
  int cross_check_restarts = 4; // general-ansatz guard on specialized runs

  int effective_restarts(int parties) const {
    long r = restarts;
    if (scale_restarts)
      for (int j = 4; j < parties; ++j) r *= 2;
    return static_cast<int>(std::min<long>(r, max_restarts));
  }
};

struct ProductAnsatz {
  std::vector<Vec> locals;

  Vec assemble() const {
    Vec out = Vec::Ones(1);
    for (const auto& a : locals) {
      Vec next(out.size() * a.size());
      for (long i = 0; i < out.size(); ++i)
        for (long k = 0; k < a.size(); ++k) next(i * a.size() + k) = out(i) * a(k);
      out = std::move(next);
    }
    return out;
  }
};

struct GmResult {
  double lambda_sq = 0.0;
  double gm_bits = 0.0;
  GmAnsatz ansatz_used = GmAnsatz::General;
  ProductAnsatz witness;
  bool converged = false;
  bool heuristic = false;       // set when a specialization ran outside its guarantee
  int restarts_agreeing = 0;
  uint64_t seed = 0;
};

namespace gmdetail {

// Objective oracle over product states for dense Hermitian H or pure psi.
class OverlapObjective {
 public:
  OverlapObjective(const Mat* h, const Vec* psi, std::vector<int> dims)
      : h_(h), psi_(psi), dims_(std::move(dims)) {
    dt_ = total_dim(dims_);
    const int n = static_cast<int>(dims_.size());
    digits_.resize(static_cast<size_t>(dt_) * n);
    std::vector<int> dig;
    for (long g = 0; g < dt_; ++g) {
      decompose_index(g, dims_, dig);
      for (int j = 0; j < n; ++j) digits_[static_cast<size_t>(g) * n + j] = dig[static_cast<size_t>(j)];
    }
  }

  bool pure() const { return psi_ != nullptr; }
  int parties() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  long dim() const { return dt_; }

  // product of local amplitudes at index g, skipping slot `skip`
  cxd partial_amp(const std::vector<Vec>& a, long g, int skip) const {
    const int n = parties();
    cxd p(1.0, 0.0);
    for (int l = 0; l < n; ++l)
      if (l != skip) p *= a[static_cast<size_t>(l)](digits_[static_cast<size_t>(g) * n + l]);
    return p;
  }

  // contraction vector for pure states: u[r] = <prod with e_r at j | psi>
  Vec contraction(const std::vector<Vec>& a, int j) const {
    const int n = parties();
    Vec u = Vec::Zero(dims_[static_cast<size_t>(j)]);
    for (long g = 0; g < dt_; ++g) {
      cxd p = std::conj(partial_amp(a, g, j));
      u(digits_[static_cast<size_t>(g) * n + j]) += p * (*psi_)(g);
    }
    return u;
  }

  Mat conditioned(const std::vector<Vec>& a, int j) const {
    const int n = parties();
    const int dj = dims_[static_cast<size_t>(j)];
    if (pure()) {
      Vec u = contraction(a, j);
      return u * u.adjoint();
    }
    Mat aj = Mat::Zero(dt_, dj);
    for (long g = 0; g < dt_; ++g)
      aj(g, digits_[static_cast<size_t>(g) * n + j]) = partial_amp(a, g, j);
    Mat m = aj.adjoint() * ((*h_) * aj);
    return hermitian_part(m);
  }

  double value(const std::vector<Vec>& a) const {
    if (pure()) {
      cxd ov(0, 0);
      const int n = parties();
      for (long g = 0; g < dt_; ++g) {
        cxd p = std::conj(partial_amp(a, g, -1));
        ov += p * (*psi_)(g);
      }
      return std::norm(ov);
    }
    ProductAnsatz pa{a};
    Vec phi = pa.assemble();
    return std::real(phi.dot((*h_) * phi));
  }

  // party marginal of an arbitrary full vector (seeding helper)
  Mat marginal(const Vec& v, int j) const {
    const int n = parties();
    const int dj = dims_[static_cast<size_t>(j)];
    // group indices by the digit at slot j
    Mat rows = Mat::Zero(dj, dt_ / dj);
    std::vector<long> fill(static_cast<size_t>(dj), 0);
    for (long g = 0; g < dt_; ++g) {
      int r = digits_[static_cast<size_t>(g) * n + j];
      rows(r, fill[static_cast<size_t>(r)]++) = v(g);
    }
    return rows * rows.adjoint();
  }

 private:
  const Mat* h_;
  const Vec* psi_;
  std::vector<int> dims_;
  long dt_ = 0;
  std::vector<int> digits_;
};

inline Vec top_eigenvector(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  return es.eigenvectors().col(m.rows() - 1);
}

inline void phase_fix(Vec& v) {
  for (long i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      cxd ph = v(i) / std::abs(v(i));
      v *= std::conj(ph);
      return;
    }
  }
}

// lexicographic comparison of witnesses for deterministic tie-breaking
inline bool witness_less(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  for (size_t j = 0; j < a.size(); ++j)
    for (long i = 0; i < a[j].size(); ++i) {
      if (a[j](i).real() != b[j](i).real()) return a[j](i).real() < b[j](i).real();
      if (a[j](i).imag() != b[j](i).imag()) return a[j](i).imag() < b[j](i).imag();
    }
  return false;
}

struct RestartOutcome {
  double value = -1.0;
  std::vector<Vec> locals;
  bool stalled = false;
};

inline RestartOutcome run_alternating(const OverlapObjective& obj,
                                      std::vector<Vec> a, const GmOptions& opts,
                                      bool non_negative_mode) {
  const int n = obj.parties();
  RestartOutcome out;
  double prev = -1.0;
  int stall_count = 0;
  for (int it = 0; it < opts.max_iters; ++it) {
    double val = prev;
    for (int j = 0; j < n; ++j) {
      Vec next;
      if (obj.pure()) {
        Vec u = obj.contraction(a, j);
        double nu = u.norm();
        if (nu < 1e-300) continue;  // degenerate slot; keep current vector
        next = u / nu;
        val = nu * nu;
      } else {
        Mat m = obj.conditioned(a, j);
        Eigen::SelfAdjointEigenSolver<Mat> es(m);
        next = es.eigenvectors().col(m.rows() - 1);
        val = es.eigenvalues()(m.rows() - 1);
      }
      if (non_negative_mode) {
        // Perron direction of an entrywise non-negative conditioned matrix;
        // rotate the global phase toward the non-negative orthant.
        cxd s(0, 0);
        for (long i = 0; i < next.size(); ++i) s += next(i);
        if (std::abs(s) > 1e-12) next *= std::conj(s / std::abs(s));
      }
      a[static_cast<size_t>(j)] = std::move(next);
    }
    if (prev >= 0 && std::abs(val - prev) <= opts.tol * std::max(1.0, std::abs(val))) {
      if (++stall_count >= 2) {
        out.stalled = true;
        prev = val;
        break;
      }
    } else {
      stall_count = 0;
    }
    prev = val;
  }
  out.value = obj.value(a);
  out.locals = std::move(a);
  return out;
}

inline std::vector<std::vector<Vec>> build_seeds(const OverlapObjective& obj,
                                                 const GmOptions& opts,
                                                 int count, bool non_negative_mode,
                                                 const RVec& diagonal, const Vec* top_hint,
                                                 const std::vector<std::vector<Vec>>& extra) {
  const int n = obj.parties();
  const auto& dims = obj.dims();
  std::vector<std::vector<Vec>> seeds;
  seeds.reserve(static_cast<size_t>(count) + extra.size());
  for (const auto& e : extra) seeds.push_back(e);

  auto basis_seed = [&](long g) {
    std::vector<Vec> s;
    std::vector<int> dig;
    decompose_index(g, dims, dig);
    for (int j = 0; j < n; ++j) {
      Vec e = Vec::Zero(dims[static_cast<size_t>(j)]);
      e(dig[static_cast<size_t>(j)]) = 1.0;
      s.push_back(std::move(e));
    }
    return s;
  };

  // basis-product seeds at the largest diagonal entries of H: basis states
  // are exactly optimal for several families
  std::vector<std::pair<double, long>> top_diag;
  for (long g = 0; g < obj.dim(); ++g) top_diag.emplace_back(diagonal(g), g);
  std::partial_sort(top_diag.begin(), top_diag.begin() + std::min<long>(3, obj.dim()),
                    top_diag.end(), std::greater<>());
  for (long i = 0; i < std::min<long>(3, obj.dim()); ++i)
    seeds.push_back(basis_seed(top_diag[static_cast<size_t>(i)].second));

  // marginal seed from the hint vector
  if (top_hint) {
    std::vector<Vec> s;
    for (int j = 0; j < n; ++j) {
      Vec m = top_eigenvector(obj.marginal(*top_hint, j));
      if (non_negative_mode)
        for (long i = 0; i < m.size(); ++i) m(i) = std::abs(m(i));
      double nm = m.norm();
      if (nm > 1e-12) m /= nm;
      s.push_back(std::move(m));
    }
    seeds.push_back(std::move(s));
  }

  // Haar-random fill (entrywise |.| in non-negative mode)
  size_t idx = 0;
  while (seeds.size() < static_cast<size_t>(count)) {
    Rng rng(derive_seed(opts.seed, 1000 + idx++));
    std::vector<Vec> s;
    for (int j = 0; j < n; ++j) {
      Vec v = rng.haar_vector(dims[static_cast<size_t>(j)]);
      if (non_negative_mode) {
        for (long i = 0; i < v.size(); ++i) v(i) = std::abs(v(i));
        v.normalize();
      }
      s.push_back(std::move(v));
    }
    seeds.push_back(std::move(s));
  }
  return seeds;
}

inline GmResult reduce_outcomes(const OverlapObjective& obj,
                                std::vector<RestartOutcome>& outs,
                                GmAnsatz ansatz, uint64_t seed) {
  GmResult r;
  r.ansatz_used = ansatz;
  r.seed = seed;
  int best = -1;
  for (int i = 0; i < static_cast<int>(outs.size()); ++i) {
    auto& o = outs[static_cast<size_t>(i)];
    if (o.value < 0) continue;
    for (auto& v : o.locals) phase_fix(v);
    if (best < 0 || o.value > outs[static_cast<size_t>(best)].value + 1e-12 ||
        (std::abs(o.value - outs[static_cast<size_t>(best)].value) <= 1e-12 &&
         witness_less(o.locals, outs[static_cast<size_t>(best)].locals))) {
      best = i;
    }
  }
  if (best < 0) throw std::runtime_error("gm: no restart produced a value");
  const auto& bo = outs[static_cast<size_t>(best)];
  r.witness.locals = bo.locals;
  r.lambda_sq = obj.value(bo.locals);  // certificate-grade value
  r.gm_bits = -std::log2(std::max(r.lambda_sq, 1e-300));
  r.converged = bo.stalled;
  for (auto& o : outs)
    if (o.value >= 0 && std::abs(o.value - bo.value) <= 1e-8) ++r.restarts_agreeing;
  return r;
}

inline GmResult solve_general(const OverlapObjective& obj, const GmOptions& opts,
                              GmAnsatz label, bool non_negative_mode,
                              const RVec& diagonal, const Vec* top_hint,
                              int restart_count,
                              const std::vector<std::vector<Vec>>& extra_seeds) {
  auto seeds = build_seeds(obj, opts, restart_count, non_negative_mode, diagonal,
                           top_hint, extra_seeds);
  std::vector<RestartOutcome> outs(seeds.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long i = 0; i < static_cast<long>(seeds.size()); ++i)
    outs[static_cast<size_t>(i)] = run_alternating(obj, seeds[static_cast<size_t>(i)], opts, non_negative_mode);
  return reduce_outcomes(obj, outs, label, opts.seed);
}

}  // namespace gmdetail

// Local maximum of <phi|H|phi> over fully product |phi>, best over restarts.
// H must be Hermitian (symmetrized when the asymmetry is below 1e-10).
inline GmResult best_product_overlap(const Mat& h, const PartyLayout& layout,
                                     const GmOptions& opts = {},
                                     const std::vector<std::vector<Vec>>& extra_seeds = {}) {
  if (h.rows() != layout.total_dim() || h.cols() != h.rows())
    throw std::invalid_argument("best_product_overlap: dimension mismatch");
  double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10)
    throw std::invalid_argument("best_product_overlap: input is not Hermitian");
  Mat hs = hermitian_part(h);

  gmdetail::OverlapObjective obj(&hs, nullptr, layout.dims());
  // power iteration toward the top eigenvector as a seeding hint
  RVec diag = hs.diagonal().real();
  Vec v = diag.cwiseAbs().cast<cxd>();
  for (long i = 0; i < v.size(); ++i) v(i) += 1.0;
  v.normalize();
  for (int it = 0; it < 30; ++it) {
    v = hs * v;
    double nv = v.norm();
    if (nv < 1e-300) break;
    v /= nv;
  }
  int restarts = opts.effective_restarts(layout.num_parties());
  return gmdetail::solve_general(obj, opts, GmAnsatz::General, false, diag, &v,
                                 restarts, extra_seeds);
}

namespace gmdetail {

inline GmResult solve_state_general(const QuantumState& s, const GmOptions& opts,
                                    bool non_negative_mode, int restart_count,
                                    const std::vector<std::vector<Vec>>& extra_seeds = {}) {
  if (s.is_pure()) {
    OverlapObjective obj(nullptr, &s.vector(), s.layout().dims());
    const Vec& hint = s.vector();
    RVec diag = s.vector().cwiseAbs2();
    return solve_general(obj, opts,
                         non_negative_mode ? GmAnsatz::NonNegative : GmAnsatz::General,
                         non_negative_mode, diag, &hint, restart_count, extra_seeds);
  }
  const Mat& rho = s.matrix();
  OverlapObjective obj(&rho, nullptr, s.layout().dims());
  RVec diag = rho.diagonal().real();
  Vec v = diag.cast<cxd>();
  v.normalize();
  for (int it = 0; it < 30; ++it) {
    v = rho * v;
    double nv = v.norm();
    if (nv < 1e-300) break;
    v /= nv;
  }
  return solve_general(obj, opts,
                       non_negative_mode ? GmAnsatz::NonNegative : GmAnsatz::General,
                       non_negative_mode, diag, &v, restart_count, extra_seeds);
}

}  // namespace gmdetail

// Symmetric-replica ansatz |a>^{xN}: valid closest-product form for symmetric
// states with N >= 3 (and for non-negative symmetric states generally); runs
// as a flagged heuristic otherwise.
inline GmResult gm_symmetric_replica(const QuantumState& s, const GmOptions& opts = {}) {
  if (!s.tags().symmetric)
    throw std::invalid_argument("gm_symmetric_replica: state not tagged symmetric");
  const int n = s.layout().num_parties();
  if (!s.layout().all_dims_equal())
    throw std::invalid_argument("gm_symmetric_replica: equal local dims required");
  const int d = s.layout().dim(0);

  gmdetail::OverlapObjective obj(s.is_pure() ? nullptr : &s.matrix(),
                                 s.is_pure() ? &s.vector() : nullptr,
                                 s.layout().dims());

  auto replicate = [&](const Vec& a) {
    return std::vector<Vec>(static_cast<size_t>(n), a);
  };
  auto value_of = [&](const Vec& a) { return obj.value(replicate(a)); };

  const int restarts = std::max(4, opts.effective_restarts(2));
  double best_val = -1.0;
  Vec best_a;
  int agreeing = 0;
  bool best_stalled = false;
  std::vector<std::pair<double, Vec>> finals;

  for (int r = 0; r < restarts; ++r) {
    Vec a(d);
    if (r == 0) {
      // diagonal-weighted deterministic seed
      a = Vec::Ones(d);
      if (s.is_pure()) {
        gmdetail::OverlapObjective tmp(nullptr, &s.vector(), s.layout().dims());
        a = gmdetail::top_eigenvector(tmp.marginal(s.vector(), 0));
      }
    } else if (r <= d) {
      a = Vec::Zero(d);
      a((r - 1) % d) = 1.0;
    } else {
      Rng rng(derive_seed(opts.seed, 7000 + static_cast<uint64_t>(r)));
      a = rng.haar_vector(d);
      if (s.tags().non_negative) {
        for (long i = 0; i < a.size(); ++i) a(i) = std::abs(a(i));
        a.normalize();
      }
    }
    a.normalize();

    double prev = value_of(a);
    bool stalled = false;
    int stall_count = 0;
    for (int it = 0; it < opts.max_iters; ++it) {
      Vec cand;
      auto locals = replicate(a);
      if (s.is_pure()) {
        Vec u = obj.contraction(locals, n - 1);
        double nu = u.norm();
        if (nu < 1e-300) break;
        cand = u / nu;
      } else {
        cand = gmdetail::top_eigenvector(obj.conditioned(locals, n - 1));
      }
      cxd ov = a.dot(cand);
      if (std::abs(ov) > 1e-14) cand *= std::conj(ov / std::abs(ov));
      double cand_val = value_of(cand);
      // The plain replica update is not monotone (it can oscillate around a
      // flat optimum); whenever it fails to make clear progress, line-search
      // the damped path between the current point and the proposal.
      if (cand_val < prev + opts.tol) {
        double lo = 0.0, hi = 1.0;
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        auto damp = [&](double g) {
          Vec m = (1.0 - g) * a + g * cand;
          double nm = m.norm();
          if (nm < 1e-300) return a;
          return Vec(m / nm);
        };
        double ga = hi - phi * (hi - lo), gb = lo + phi * (hi - lo);
        double fa = value_of(damp(ga)), fb = value_of(damp(gb));
        for (int gi = 0; gi < 60; ++gi) {
          if (fa > fb) { hi = gb; gb = ga; fb = fa; ga = hi - phi * (hi - lo); fa = value_of(damp(ga)); }
          else { lo = ga; ga = gb; fa = fb; gb = lo + phi * (hi - lo); fb = value_of(damp(gb)); }
        }
        Vec damped = damp(0.5 * (lo + hi));
        double damped_val = value_of(damped);
        if (damped_val > cand_val) {
          cand = std::move(damped);
          cand_val = damped_val;
        }
        if (cand_val < prev) { stalled = true; break; }
      }
      a = cand;
      if (std::abs(cand_val - prev) <= opts.tol * std::max(1.0, cand_val)) {
        if (++stall_count >= 2) {
          stalled = true;
          prev = cand_val;
          break;
        }
      } else {
        stall_count = 0;
      }
      prev = cand_val;
    }
    finals.emplace_back(prev, a);
    if (prev > best_val) {
      best_val = prev;
      best_a = a;
      best_stalled = stalled;
    }
  }
  for (auto& [v, a] : finals)
    if (std::abs(v - best_val) <= 1e-8) ++agreeing;

  GmResult r;
  gmdetail::phase_fix(best_a);
  r.witness.locals = replicate(best_a);
  r.lambda_sq = obj.value(r.witness.locals);
  r.gm_bits = -std::log2(std::max(r.lambda_sq, 1e-300));
  r.ansatz_used = GmAnsatz::SymmetricReplica;
  r.converged = best_stalled;
  r.heuristic = (n == 2) && !s.tags().non_negative;
  r.restarts_agreeing = agreeing;
  r.seed = opts.seed;
  return r;
}

// Orthonormal-frame ansatz for antisymmetric states: the one-particle
// reduced states of a closest product state are mutually orthogonal, so the
// search runs over orthonormal N-frames in C^d, each slot update constrained
// to the orthogonal complement of the other frame vectors.
inline GmResult gm_antisym_frame(const QuantumState& s, const GmOptions& opts = {}) {
  if (!s.tags().antisymmetric)
    throw std::invalid_argument("gm_antisym_frame: state not tagged antisymmetric");
  const int n = s.layout().num_parties();
  const int d = s.layout().dim(0);
  if (!s.layout().all_dims_equal() || n > d)
    throw std::invalid_argument("gm_antisym_frame: need equal dims and N <= d");

  gmdetail::OverlapObjective obj(s.is_pure() ? nullptr : &s.matrix(),
                                 s.is_pure() ? &s.vector() : nullptr,
                                 s.layout().dims());

  const int restarts = std::max(4, opts.effective_restarts(n));
  std::vector<gmdetail::RestartOutcome> outs;
  for (int r = 0; r < restarts; ++r) {
    std::vector<Vec> a(static_cast<size_t>(n));
    if (r == 0) {
      for (int j = 0; j < n; ++j) {
        a[static_cast<size_t>(j)] = Vec::Zero(d);
        a[static_cast<size_t>(j)](j) = 1.0;
      }
    } else {
      Rng rng(derive_seed(opts.seed, 9000 + static_cast<uint64_t>(r)));
      Mat q = rng.haar_unitary(d);
      for (int j = 0; j < n; ++j) a[static_cast<size_t>(j)] = q.col(j);
    }

    double prev = -1.0;
    bool stalled = false;
    for (int it = 0; it < opts.max_iters; ++it) {
      double val = prev;
      for (int j = 0; j < n; ++j) {
        Mat m = obj.conditioned(a, j);
        Mat q = Mat::Identity(d, d);
        for (int l = 0; l < n; ++l)
          if (l != j) q -= a[static_cast<size_t>(l)] * a[static_cast<size_t>(l)].adjoint();
        Mat constrained = hermitian_part(q * m * q);
        Eigen::SelfAdjointEigenSolver<Mat> es(constrained);
        double lam = es.eigenvalues()(d - 1);
        if (lam <= 1e-300) continue;
        Vec cand = es.eigenvectors().col(d - 1);
        // strip any null-space leakage, then renormalize
        cand = q * cand;
        double nc = cand.norm();
        if (nc < 1e-12) continue;
        a[static_cast<size_t>(j)] = cand / nc;
        val = lam;
      }
      // modified Gram-Schmidt hygiene pass
      for (int j = 0; j < n; ++j) {
        for (int l = 0; l < j; ++l)
          a[static_cast<size_t>(j)] -= a[static_cast<size_t>(l)] * a[static_cast<size_t>(l)].dot(a[static_cast<size_t>(j)]);
        a[static_cast<size_t>(j)].normalize();
      }
      if (prev >= 0 && std::abs(val - prev) <= opts.tol * std::max(1.0, std::abs(val))) {
        stalled = true;
        prev = val;
        break;
      }
      prev = val;
    }
    gmdetail::RestartOutcome o;
    o.value = obj.value(a);
    o.locals = std::move(a);
    o.stalled = stalled;
    outs.push_back(std::move(o));
  }
  GmResult r = gmdetail::reduce_outcomes(obj, outs, GmAnsatz::AntisymFrame, opts.seed);
  return r;
}

// GM with tag-driven ansatz dispatch. The specialized result is never trusted
// alone: a general-ansatz cross-check runs alongside and the max wins.
inline GmResult gm(const QuantumState& s, const GmOptions& opts = {},
                   const std::vector<std::vector<Vec>>& extra_seeds = {}) {
  const int n = s.layout().num_parties();
  std::vector<GmResult> candidates;

  if (s.tags().antisymmetric) {
    candidates.push_back(gm_antisym_frame(s, opts));
  } else if (s.tags().symmetric && (n >= 3 || s.tags().non_negative)) {
    candidates.push_back(gm_symmetric_replica(s, opts));
  } else if (s.tags().non_negative) {
    candidates.push_back(gmdetail::solve_state_general(
        s, opts, true, opts.effective_restarts(n), extra_seeds));
  }

  int general_restarts = candidates.empty()
                             ? opts.effective_restarts(n)
                             : std::max(4, opts.cross_check_restarts);
  candidates.push_back(
      gmdetail::solve_state_general(s, opts, false, general_restarts, extra_seeds));

  GmResult best = candidates.front();
  for (const auto& c : candidates)
    if (c.lambda_sq > best.lambda_sq + 1e-14) best = c;

  if (best.lambda_sq > 1.0 + 1e-9)
    throw std::runtime_error("gm: overlap above 1 on a normalized state");
  best.lambda_sq = std::min(best.lambda_sq, 1.0);
  best.gm_bits = -std::log2(std::max(best.lambda_sq, 1e-300));
  return best;
}

// Theorem: ALGR >= AREE >= G - S for non-negative states; for bipartite
// non-negative states the same quantity lower-bounds entanglement of
// formation and entanglement cost. Returned for any state; the guarantee
// applies under those hypotheses.
inline double lower_bound_g_minus_s(const QuantumState& s, const GmOptions& opts = {}) {
  return gm(s, opts).gm_bits - entropy(s);
}

}  // namespace entmeas
