// antisym.hpp
// Antisymmetric-subspace machinery: wedge products, the antisymmetric
// projector, and the Slater-determinant criterion (one-particle rank test).

#pragma once

#include "entmeas/tensor_ops.hpp"

#include <numeric>

namespace entmeas {

namespace detail {

// Runs f(perm, sign) over all permutations of 0..n-1.
template <typename F>
void for_each_permutation(int n, F&& f) {
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  // Restart from identity; std::next_permutation enumerates in lexicographic
  // order, so track parity by counting inversions incrementally is overkill —
  // recompute the sign per permutation (n is small throughout).
  do {
    int inv = 0;
    for (size_t i = 0; i < perm.size(); ++i)
      for (size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inv;
    f(perm, (inv % 2 == 0) ? 1.0 : -1.0);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

struct WedgeResult {
  Vec vector;    // normalized when norm > 0
  double norm;   // norm of (1/sqrt(N!)) sum_sigma sgn(sigma) |a_sigma(1)...>
};

// Antisymmetrization of N single-particle states in C^d. The reported norm
// is 1 iff the inputs are orthonormal and 0 iff they are linearly dependent
// (it equals sqrt(det Gram)).
inline WedgeResult wedge(const std::vector<Vec>& vectors) {
  const int n = static_cast<int>(vectors.size());
  if (n == 0) throw std::invalid_argument("wedge: no vectors");
  const long d = vectors[0].size();
  if (n > d) throw std::invalid_argument("wedge: more vectors than dimensions");
  for (const auto& v : vectors)
    if (v.size() != d) throw std::invalid_argument("wedge: mixed dimensions");

  std::vector<int> dims(static_cast<size_t>(n), static_cast<int>(d));
  const long dt = total_dim(dims);
  const auto strides = index_strides(dims);
  Vec out = Vec::Zero(dt);
  const double pref = 1.0 / std::sqrt(factorial(n));

  std::vector<int> dig(static_cast<size_t>(n));
  detail::for_each_permutation(n, [&](const std::vector<int>& perm, double sign) {
    // add sign * |a_perm(1)> x ... x |a_perm(n)>
    for (long idx = 0; idx < dt; ++idx) {
      decompose_index(idx, dims, dig);
      cxd amp(pref * sign, 0.0);
      for (int slot = 0; slot < n; ++slot)
        amp *= vectors[static_cast<size_t>(perm[static_cast<size_t>(slot)])](dig[static_cast<size_t>(slot)]);
      out(idx) += amp;
    }
  });

  WedgeResult r;
  r.norm = out.norm();
  if (r.norm > tol::unit_norm)
    r.vector = out / r.norm;
  else
    r.vector = out;  // numerically zero
  return r;
}

inline QuantumState wedge_state(const std::vector<Vec>& vectors) {
  WedgeResult w = wedge(vectors);
  if (w.norm <= tol::unit_norm)
    throw std::invalid_argument("wedge_state: linearly dependent inputs");
  const int n = static_cast<int>(vectors.size());
  const int d = static_cast<int>(vectors[0].size());
  StateTags t;
  t.antisymmetric = true;
  return QuantumState::pure(w.vector, PartyLayout::qudits(n, d), t, false);
}

struct AntisymProjector {
  int d = 0;
  int N = 0;
  Mat matrix;  // d^N x d^N projector, trace = binomial(d, N)
};

// Projector onto span{ |j_1> ^ ... ^ |j_N| : j_1 < ... < j_N }.
inline AntisymProjector antisym_projector(int d, int N) {
  if (N < 2 || N > d) throw std::invalid_argument("antisym_projector: need 2 <= N <= d");
  std::vector<int> dims(static_cast<size_t>(N), d);
  const long dt = total_dim(dims);
  Mat p = Mat::Zero(dt, dt);

  // wedge of basis vectors has N! entries of magnitude 1/sqrt(N!)
  std::vector<int> subset(static_cast<size_t>(N));
  std::iota(subset.begin(), subset.end(), 0);
  const auto strides = index_strides(dims);
  const double pref = 1.0 / std::sqrt(factorial(N));
  std::vector<std::pair<long, double>> entries;
  while (true) {
    entries.clear();
    detail::for_each_permutation(N, [&](const std::vector<int>& perm, double sign) {
      std::vector<int> dig(static_cast<size_t>(N));
      for (int slot = 0; slot < N; ++slot) dig[static_cast<size_t>(slot)] = subset[static_cast<size_t>(perm[static_cast<size_t>(slot)])];
      entries.emplace_back(compose_index(dig, strides), sign * pref);
    });
    for (auto [i, a] : entries)
      for (auto [j, b] : entries) p(i, j) += a * b;
    // advance subset to next increasing N-combination of 0..d-1
    int k = N - 1;
    while (k >= 0 && subset[static_cast<size_t>(k)] == d - N + k) --k;
    if (k < 0) break;
    ++subset[static_cast<size_t>(k)];
    for (int l = k + 1; l < N; ++l) subset[static_cast<size_t>(l)] = subset[static_cast<size_t>(l - 1)] + 1;
  }

  AntisymProjector out;
  out.d = d;
  out.N = N;
  out.matrix = std::move(p);
  return out;
}

// True iff P rho P = rho within tolerance (state supported in the
// antisymmetric subspace). Requires all local dimensions equal.
inline bool is_antisymmetric_state(const QuantumState& s, double tolerance = 1e-10) {
  const auto& l = s.layout();
  if (!l.all_dims_equal() || l.num_parties() > l.dim(0)) return false;
  if (l.num_parties() < 2) return false;
  AntisymProjector p = antisym_projector(l.dim(0), l.num_parties());
  if (s.is_pure()) {
    Vec proj = p.matrix * s.vector();
    return (proj - s.vector()).norm() <= tolerance;
  }
  Mat m = p.matrix * s.matrix() * p.matrix;
  return (m - s.matrix()).cwiseAbs().maxCoeff() <= tolerance;
}

// Slater-determinant test: an antisymmetric pure state is a Slater
// determinant iff its one-particle reduced state has rank N.
inline bool slater_rank_check(const QuantumState& psi) {
  if (!psi.tags().antisymmetric)
    throw std::invalid_argument("slater_rank_check: state not tagged antisymmetric");
  if (!psi.is_pure())
    throw std::invalid_argument("slater_rank_check: pure states only");
  QuantumState one = partial_trace_indices(psi, {0});
  int rank = 0;
  for (double lam : eigenvalues_of(one))
    if (lam > tol::rank_eig) ++rank;
  return rank == psi.layout().num_parties();
}

}  // namespace entmeas
