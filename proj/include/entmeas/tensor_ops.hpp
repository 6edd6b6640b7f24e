// tensor_ops.hpp
// Party-aware tensor algebra: tensor products with party merging, partial
// trace, party permutation, von Neumann entropy.

#pragma once

#include "entmeas/state.hpp"

#include <set>

namespace entmeas {

// Merged tags of a party-paired tensor product. Two antisymmetric factors
// give a state supported in the symmetric subspace of the merged parties
// (the sign factors cancel under simultaneous permutation); one symmetric
// and one antisymmetric factor give an antisymmetric product.
inline StateTags merge_tags(const StateTags& a, const StateTags& b) {
  StateTags t;
  t.non_negative = a.non_negative && b.non_negative;
  t.real = a.real && b.real;
  bool a_perm = a.symmetric || a.antisymmetric;
  bool b_perm = b.symmetric || b.antisymmetric;
  if (a_perm && b_perm) {
    bool sign = a.antisymmetric ^ b.antisymmetric;
    t.symmetric = !sign;
    t.antisymmetric = sign;
  }
  return t;
}

// Tensor product with the party-pairing convention: party j of `a` and party
// j of `b` sit in the same lab and count as one party of dimension
// d_j(a)*d_j(b). Within merged party j the basis index is i_a*d_j(b) + i_b.
inline QuantumState tensor_merge(const QuantumState& a, const QuantumState& b,
                                 long dim_cap = kDefaultDimCap) {
  const auto& la = a.layout();
  const auto& lb = b.layout();
  if (la.num_parties() != lb.num_parties())
    throw std::invalid_argument("tensor_merge: party-count mismatch");
  if (la.labels() != lb.labels())
    throw std::invalid_argument("tensor_merge: party labels mismatch");

  const int n = la.num_parties();
  std::vector<int> dims(static_cast<size_t>(n));
  long dt = 1;
  for (int j = 0; j < n; ++j) {
    dims[static_cast<size_t>(j)] = la.dim(j) * lb.dim(j);
    dt *= dims[static_cast<size_t>(j)];
    if (dt > dim_cap)
      throw DimensionError("tensor_merge: merged dimension exceeds cap");
  }
  PartyLayout merged(dims, la.labels());

  // index maps: global merged index as a function of (index_a, index_b)
  const auto sa = la.strides();
  const auto sb = lb.strides();
  const auto sm = merged.strides();
  const long da = la.total_dim(), db = lb.total_dim();
  std::vector<long> off_a(static_cast<size_t>(da)), off_b(static_cast<size_t>(db));
  std::vector<int> dig;
  for (long i = 0; i < da; ++i) {
    decompose_index(i, la.dims(), dig);
    long g = 0;
    for (int j = 0; j < n; ++j)
      g += static_cast<long>(dig[static_cast<size_t>(j)]) * lb.dim(j) * sm[static_cast<size_t>(j)];
    off_a[static_cast<size_t>(i)] = g;
  }
  for (long i = 0; i < db; ++i) {
    decompose_index(i, lb.dims(), dig);
    off_b[static_cast<size_t>(i)] = compose_index(dig, sm);
  }

  StateTags tags = merge_tags(a.tags(), b.tags());
  if (a.is_pure() && b.is_pure()) {
    Vec out = Vec::Zero(dt);
    const Vec& va = a.vector();
    const Vec& vb = b.vector();
    for (long i = 0; i < da; ++i)
      for (long k = 0; k < db; ++k) out(off_a[static_cast<size_t>(i)] + off_b[static_cast<size_t>(k)]) = va(i) * vb(k);
    return QuantumState::pure(std::move(out), merged, tags, false);
  }
  Mat out = Mat::Zero(dt, dt);
  const Mat& ma = a.matrix();
  const Mat& mb = b.matrix();
  for (long i = 0; i < da; ++i)
    for (long ip = 0; ip < da; ++ip) {
      const cxd aij = ma(i, ip);
      if (aij == cxd(0, 0)) continue;
      for (long k = 0; k < db; ++k)
        for (long kp = 0; kp < db; ++kp)
          out(off_a[static_cast<size_t>(i)] + off_b[static_cast<size_t>(k)],
              off_a[static_cast<size_t>(ip)] + off_b[static_cast<size_t>(kp)]) += aij * mb(k, kp);
    }
  return QuantumState::mixed(std::move(out), merged, tags, false);
}

// Reduced state on `keep` (party indices, in their original order).
inline QuantumState partial_trace_indices(const QuantumState& s,
                                          std::vector<int> keep) {
  const auto& l = s.layout();
  const int n = l.num_parties();
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::sort(keep.begin(), keep.end());
  for (int k : keep)
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: bad party index");
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw std::invalid_argument("partial_trace: duplicate party");

  std::vector<int> rest;
  for (int j = 0; j < n; ++j)
    if (!std::binary_search(keep.begin(), keep.end(), j)) rest.push_back(j);

  std::vector<int> kd, rd;
  std::vector<std::string> klab;
  for (int j : keep) { kd.push_back(l.dim(j)); klab.push_back(l.labels()[static_cast<size_t>(j)]); }
  for (int j : rest) rd.push_back(l.dim(j));
  const long dk = total_dim(kd), dr = total_dim(rd);
  const auto strides = l.strides();

  std::vector<long> off_k(static_cast<size_t>(dk)), off_r(static_cast<size_t>(dr));
  std::vector<int> dig;
  for (long i = 0; i < dk; ++i) {
    decompose_index(i, kd, dig);
    long g = 0;
    for (size_t j = 0; j < keep.size(); ++j) g += dig[j] * strides[static_cast<size_t>(keep[j])];
    off_k[static_cast<size_t>(i)] = g;
  }
  for (long i = 0; i < dr; ++i) {
    decompose_index(i, rd, dig);
    long g = 0;
    for (size_t j = 0; j < rest.size(); ++j) g += dig[j] * strides[static_cast<size_t>(rest[j])];
    off_r[static_cast<size_t>(i)] = g;
  }

  PartyLayout lr(kd, klab);
  if (rest.empty()) {
    return s;  // nothing traced out
  }
  if (s.is_pure()) {
    // psi reshaped to (keep x rest); rho = M M^dagger
    Mat m(dk, dr);
    const Vec& psi = s.vector();
    for (long i = 0; i < dk; ++i)
      for (long r = 0; r < dr; ++r) m(i, r) = psi(off_k[static_cast<size_t>(i)] + off_r[static_cast<size_t>(r)]);
    Mat rho = m * m.adjoint();
    return QuantumState::mixed(std::move(rho), lr, {}, false);
  }
  Mat rho = Mat::Zero(dk, dk);
  const Mat& full = s.matrix();
  for (long i = 0; i < dk; ++i)
    for (long ip = 0; ip < dk; ++ip) {
      cxd acc(0, 0);
      for (long r = 0; r < dr; ++r)
        acc += full(off_k[static_cast<size_t>(i)] + off_r[static_cast<size_t>(r)],
                    off_k[static_cast<size_t>(ip)] + off_r[static_cast<size_t>(r)]);
      rho(i, ip) = acc;
    }
  return QuantumState::mixed(std::move(rho), lr, {}, false);
}

inline QuantumState partial_trace(const QuantumState& s,
                                  const std::vector<std::string>& keep_labels) {
  std::vector<int> keep;
  keep.reserve(keep_labels.size());
  for (const auto& lab : keep_labels) keep.push_back(s.layout().party_index(lab));
  return partial_trace_indices(s, std::move(keep));
}

// perm[j] = position of input party j in the output state.
inline QuantumState permute_parties(const QuantumState& s,
                                    const std::vector<int>& perm) {
  const auto& l = s.layout();
  const int n = l.num_parties();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permute_parties: wrong permutation length");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[static_cast<size_t>(p)])
      throw std::invalid_argument("permute_parties: not a permutation");
    seen[static_cast<size_t>(p)] = true;
  }

  std::vector<int> nd(static_cast<size_t>(n));
  std::vector<std::string> nl(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    nd[static_cast<size_t>(perm[static_cast<size_t>(j)])] = l.dim(j);
    nl[static_cast<size_t>(perm[static_cast<size_t>(j)])] = l.labels()[static_cast<size_t>(j)];
  }
  PartyLayout nlayout(nd, nl);
  const long dt = l.total_dim();
  const auto ns = nlayout.strides();

  std::vector<long> map(static_cast<size_t>(dt));
  std::vector<int> dig;
  for (long i = 0; i < dt; ++i) {
    decompose_index(i, l.dims(), dig);
    long g = 0;
    for (int j = 0; j < n; ++j) g += static_cast<long>(dig[static_cast<size_t>(j)]) * ns[static_cast<size_t>(perm[static_cast<size_t>(j)])];
    map[static_cast<size_t>(i)] = g;
  }

  if (s.is_pure()) {
    Vec out(dt);
    const Vec& psi = s.vector();
    for (long i = 0; i < dt; ++i) out(map[static_cast<size_t>(i)]) = psi(i);
    return QuantumState::pure(std::move(out), nlayout, s.tags(), false);
  }
  Mat out(dt, dt);
  const Mat& rho = s.matrix();
  for (long i = 0; i < dt; ++i)
    for (long j = 0; j < dt; ++j) out(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]) = rho(i, j);
  return QuantumState::mixed(std::move(out), nlayout, s.tags(), false);
}

inline std::vector<double> eigenvalues_of(const QuantumState& s) {
  if (s.is_pure()) {
    std::vector<double> ev(static_cast<size_t>(s.dim()), 0.0);
    ev[0] = 1.0;
    return ev;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(s.matrix(), Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  return ev;
}

// Von Neumann entropy in bits.
inline double entropy(const QuantumState& s) {
  if (s.is_pure()) return 0.0;
  double h = 0.0;
  for (double lam : eigenvalues_of(s))
    if (lam > tol::entropy_floor) h -= lam * std::log2(lam);
  return h;
}

}  // namespace entmeas
