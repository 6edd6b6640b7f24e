// families.hpp
// Constructors for the named state families and the FamilySpec handle the
// closed-form dispatcher and CLI consume.

#pragma once

#include "entmeas/antisym.hpp"

#include <array>
#include <optional>

namespace entmeas {

enum class Family {
  BellDiagonal,
  MCB,
  Isotropic,
  Dicke,
  DickeMixture,
  Smolin,
  Dur,
  AntisymProjectorState,
  AntisymBasis,
  GeneralizedAntisym,
  GHZ,
  ProductBasis,
};

struct FamilySpec {
  Family family = Family::Smolin;
  int d = 0;                                    // local dimension
  int N = 0;                                    // party count
  int p = 0;                                    // gas block size
  int k = 0;                                    // gas slot count
  double x = 0.0;                               // dur mixing weight
  double lambda = 0.0;                          // isotropic weight
  std::vector<double> probs;                    // bell / mcb weights
  std::vector<int> kvec;                        // dicke occupation
  std::vector<std::pair<int, double>> mixture;  // dicke mixture (k, weight)
  std::vector<int> dims;                        // product basis dims
  long index = 0;                               // product basis index

  void validate() const;
};

namespace detail {

inline void check_probability_vector(const std::vector<double>& p) {
  double sum = 0.0;
  for (double w : p) {
    if (w < 0.0) throw std::invalid_argument("negative probability weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("probability weights must sum to 1");
}

inline Vec bell_vector(int j) {
  Vec v = Vec::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  switch (j) {
    case 0: v(0) = r; v(3) = r; break;
    case 1: v(0) = r; v(3) = -r; break;
    case 2: v(1) = r; v(2) = r; break;
    case 3: v(1) = r; v(2) = -r; break;
    default: throw std::invalid_argument("bell index");
  }
  return v;
}

}  // namespace detail

inline void FamilySpec::validate() const {
  switch (family) {
    case Family::BellDiagonal:
      if (probs.size() != 4) throw std::invalid_argument("bell: need 4 weights");
      detail::check_probability_vector(probs);
      break;
    case Family::MCB:
      if (d < 2) throw std::invalid_argument("mcb: d >= 2");
      if (static_cast<int>(probs.size()) != d)
        throw std::invalid_argument("mcb: weight vector length must equal d");
      detail::check_probability_vector(probs);
      break;
    case Family::Isotropic:
      if (d < 2) throw std::invalid_argument("iso: d >= 2");
      if (lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("iso: lambda in [0,1]");
      break;
    case Family::Dicke: {
      if (kvec.empty()) throw std::invalid_argument("dicke: empty occupation");
      int sum = 0;
      for (int kj : kvec) {
        if (kj < 0) throw std::invalid_argument("dicke: negative occupation");
        sum += kj;
      }
      if (sum != N) throw std::invalid_argument("dicke: occupations must sum to N");
      break;
    }
    case Family::DickeMixture: {
      if (mixture.empty()) throw std::invalid_argument("dmix: empty mixture");
      std::vector<double> w;
      for (auto& [kk, ww] : mixture) {
        if (kk < 0 || kk > N) throw std::invalid_argument("dmix: k out of range");
        w.push_back(ww);
      }
      detail::check_probability_vector(w);
      break;
    }
    case Family::Smolin:
      break;
    case Family::Dur:
      if (N < 2) throw std::invalid_argument("dur: N >= 2");
      if (x < 0.0 || x > 1.0) throw std::invalid_argument("dur: x in [0,1]");
      break;
    case Family::AntisymProjectorState:
      if (N < 2 || N > d) throw std::invalid_argument("asp: need 2 <= N <= d");
      break;
    case Family::AntisymBasis:
      if (N < 2) throw std::invalid_argument("abasis: N >= 2");
      break;
    case Family::GeneralizedAntisym: {
      if (d < 2 || p < 1 || k < 1) throw std::invalid_argument("gas: bad parameters");
      double cap = std::pow(static_cast<double>(d), p);
      if (static_cast<double>(k) > cap) throw std::invalid_argument("gas: k <= d^p required");
      break;
    }
    case Family::GHZ:
      if (N < 2 || d < 2) throw std::invalid_argument("ghz: N >= 2, d >= 2");
      break;
    case Family::ProductBasis: {
      if (dims.empty()) throw std::invalid_argument("pbasis: empty dims");
      long dt = total_dim(dims);
      if (index < 0 || index >= dt) throw std::invalid_argument("pbasis: index out of range");
      break;
    }
  }
}

// Descending canonicalization of Bell-diagonal weights; all 24 permutations
// of the Bell basis are local-unitary reachable, so this is lossless. The
// permutation maps canonical slot -> user slot.
inline std::array<int, 4> bell_sort_permutation(const std::vector<double>& probs) {
  std::array<int, 4> perm = {0, 1, 2, 3};
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return probs[static_cast<size_t>(a)] > probs[static_cast<size_t>(b)]; });
  return perm;
}

inline QuantumState bell_diagonal(double p0, double p1, double p2, double p3) {
  std::vector<double> probs = {p0, p1, p2, p3};
  detail::check_probability_vector(probs);
  auto perm = bell_sort_permutation(probs);
  Mat rho = Mat::Zero(4, 4);
  for (int slot = 0; slot < 4; ++slot) {
    Vec b = detail::bell_vector(slot);
    rho += probs[static_cast<size_t>(perm[static_cast<size_t>(slot)])] * b * b.adjoint();
  }
  StateTags t;
  t.non_negative = true;
  t.real = true;
  return QuantumState::mixed(std::move(rho), PartyLayout::qubits(2), t);
}

// Maximally correlated generalized Bell diagonal state, returned in the
// non-negative basis reached by the simultaneous local Fourier transform:
// (F x F)|Psi_k> = (1/sqrt d) sum_m |m, (-k-m) mod d>.
inline QuantumState mcb(int d, const std::vector<double>& probs) {
  if (d < 2 || static_cast<int>(probs.size()) != d)
    throw std::invalid_argument("mcb: weight vector length must equal d");
  detail::check_probability_vector(probs);
  Mat rho = Mat::Zero(static_cast<long>(d) * d, static_cast<long>(d) * d);
  for (int k = 0; k < d; ++k) {
    Vec phi = Vec::Zero(static_cast<long>(d) * d);
    for (int m = 0; m < d; ++m) {
      int n = ((-k - m) % d + d) % d;
      phi(static_cast<long>(m) * d + n) = 1.0 / std::sqrt(static_cast<double>(d));
    }
    rho += probs[static_cast<size_t>(k)] * phi * phi.adjoint();
  }
  StateTags t;
  t.non_negative = true;
  t.real = true;
  return QuantumState::mixed(std::move(rho), PartyLayout::qudits(2, d), t);
}

inline QuantumState isotropic(int d, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("iso: lambda in [0,1]");
  const long dt = static_cast<long>(d) * d;
  Vec psi0 = Vec::Zero(dt);
  for (int j = 0; j < d; ++j) psi0(static_cast<long>(j) * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  Mat proj = psi0 * psi0.adjoint();
  Mat rho = lambda * proj +
            (1.0 - lambda) / (static_cast<double>(dt) - 1.0) * (Mat::Identity(dt, dt) - proj);
  StateTags t;
  t.real = true;
  t.non_negative = lambda * d * d >= 1.0 - 1e-15;  // entries (mm),(nn) nonneg iff lambda >= 1/d^2
  return QuantumState::mixed(std::move(rho), PartyLayout::qudits(2, d), t);
}

// Generalized Dicke state |N, kvec> on N qudits with d = kvec.size().
inline QuantumState dicke(int N, const std::vector<int>& kvec) {
  int sum = 0;
  for (int kj : kvec) sum += kj;
  if (sum != N || kvec.empty())
    throw std::invalid_argument("dicke: occupations must sum to N");
  const int d = static_cast<int>(kvec.size());
  std::vector<int> word;
  for (int level = 0; level < d; ++level)
    word.insert(word.end(), static_cast<size_t>(kvec[static_cast<size_t>(level)]), level);

  std::vector<int> dims(static_cast<size_t>(N), d);
  const auto strides = index_strides(dims);
  Vec v = Vec::Zero(total_dim(dims));
  long count = 0;
  std::sort(word.begin(), word.end());
  do {
    v(compose_index(word, strides)) = 1.0;
    ++count;
  } while (std::next_permutation(word.begin(), word.end()));
  v /= std::sqrt(static_cast<double>(count));

  StateTags t;
  t.non_negative = t.symmetric = t.real = true;
  return QuantumState::pure(std::move(v), PartyLayout::qudits(N, d), t);
}

// Two-level Dicke mixture; k counts |0> occupations, matching |N,k0>.
inline QuantumState dicke_mixture(int N, const std::vector<std::pair<int, double>>& terms) {
  std::vector<double> w;
  for (auto& [k, ww] : terms) {
    if (k < 0 || k > N) throw std::invalid_argument("dmix: k out of range");
    w.push_back(ww);
  }
  detail::check_probability_vector(w);
  Mat rho = Mat::Zero(1L << N, 1L << N);
  for (auto& [k, ww] : terms) {
    auto dk = dicke(N, {k, N - k});
    rho += ww * dk.matrix();
  }
  StateTags t;
  t.non_negative = t.symmetric = t.real = true;
  return QuantumState::mixed(std::move(rho), PartyLayout::qubits(N), t);
}

// Four-qubit Smolin state, built from the |X_j> mixture.
inline QuantumState smolin() {
  auto pair_state = [](long a, long b) {
    Vec v = Vec::Zero(16);
    v(a) = v(b) = 1.0 / std::sqrt(2.0);
    return v;
  };
  std::array<Vec, 4> xs = {
      pair_state(0b0000, 0b1111), pair_state(0b0011, 0b1100),
      pair_state(0b0101, 0b1010), pair_state(0b0110, 0b1001)};
  Mat rho = Mat::Zero(16, 16);
  for (const auto& v : xs) rho += 0.25 * v * v.adjoint();
  StateTags t;
  t.non_negative = t.real = true;
  return QuantumState::mixed(std::move(rho), PartyLayout::qubits(4), t);
}

// Pauli-correlation form (1/16)(I + sum_j sigma_j^{x4}); kept as a
// cross-check oracle for smolin().
inline Mat smolin_pauli_form() {
  Mat sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cxd(0, -1), cxd(0, 1), 0;
  sz << 1, 0, 0, -1;
  auto kron4 = [](const Mat& m) {
    Mat out = m;
    for (int i = 0; i < 3; ++i) {
      Mat next(out.rows() * 2, out.cols() * 2);
      for (long r = 0; r < out.rows(); ++r)
        for (long c = 0; c < out.cols(); ++c)
          next.block(r * 2, c * 2, 2, 2) = out(r, c) * m;
      out = next;
    }
    return out;
  };
  return (Mat::Identity(16, 16) + kron4(sx) + kron4(sy) + kron4(sz)) / 16.0;
}

// Dur-family state rho_N(x); the GHZ phase alpha_N is fixed to 0.
inline QuantumState dur(int N, double x) {
  if (N < 2) throw std::invalid_argument("dur: N >= 2");
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("dur: x in [0,1]");
  const long dt = 1L << N;
  Vec ghz = Vec::Zero(dt);
  ghz(0) = ghz(dt - 1) = 1.0 / std::sqrt(2.0);
  Mat rho = x * ghz * ghz.adjoint();
  const double w = (1.0 - x) / (2.0 * N);
  for (int k = 0; k < N; ++k) {
    long u = 1L << (N - 1 - k);       // |0..1_k..0>
    long v = (dt - 1) ^ u;            // |1..0_k..1>
    rho(u, u) += w;
    rho(v, v) += w;
  }
  StateTags t;
  t.non_negative = t.real = true;
  return QuantumState::mixed(std::move(rho), PartyLayout::qubits(N), t);
}

inline QuantumState antisym_projector_state(int d, int N) {
  auto p = antisym_projector(d, N);
  double tr = p.matrix.trace().real();
  StateTags t;
  t.antisymmetric = t.real = true;
  return QuantumState::mixed(p.matrix / tr, PartyLayout::qudits(N, d), t);
}

inline QuantumState antisym_basis(int N) {
  std::vector<Vec> basis;
  for (int j = 0; j < N; ++j) {
    Vec e = Vec::Zero(N);
    e(j) = 1.0;
    basis.push_back(std::move(e));
  }
  return wedge_state(basis);
}

// Generalized antisymmetric state |psi_{d,p,k}>: a k-party antisymmetric
// basis state over blocks of dimension d^p, reinterpreted as k*p parties of
// dimension d (block index = base-d digits, consistent with the global
// party-major ordering).
inline QuantumState generalized_antisym(int d, int p, int k) {
  double cap = std::pow(static_cast<double>(d), p);
  if (static_cast<double>(k) > cap) throw std::invalid_argument("gas: k <= d^p required");
  const long block = static_cast<long>(std::llround(cap));
  std::vector<Vec> basis;
  for (int j = 0; j < k; ++j) {
    Vec e = Vec::Zero(block);
    e(j) = 1.0;
    basis.push_back(std::move(e));
  }
  WedgeResult w = wedge(basis);
  StateTags t;
  t.real = true;
  t.antisymmetric = (p == 1);  // at qudit granularity only when blocks are single parties
  return QuantumState::pure(w.vector, PartyLayout::qudits(k * p, d), t, false);
}

inline QuantumState ghz(int N, int d = 2) {
  std::vector<int> dims(static_cast<size_t>(N), d);
  Vec v = Vec::Zero(total_dim(dims));
  const auto strides = index_strides(dims);
  std::vector<int> dig(static_cast<size_t>(N));
  for (int j = 0; j < d; ++j) {
    std::fill(dig.begin(), dig.end(), j);
    v(compose_index(dig, strides)) = 1.0 / std::sqrt(static_cast<double>(d));
  }
  StateTags t;
  t.non_negative = t.symmetric = t.real = true;
  return QuantumState::pure(std::move(v), PartyLayout::qudits(N, d), t);
}

inline QuantumState product_basis(const std::vector<int>& dims, long index) {
  return QuantumState::basis_state(PartyLayout(dims), index);
}

inline QuantumState build_state(const FamilySpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::BellDiagonal:
      return bell_diagonal(spec.probs[0], spec.probs[1], spec.probs[2], spec.probs[3]);
    case Family::MCB:
      return mcb(spec.d, spec.probs);
    case Family::Isotropic:
      return isotropic(spec.d, spec.lambda);
    case Family::Dicke:
      return dicke(spec.N, spec.kvec);
    case Family::DickeMixture:
      return dicke_mixture(spec.N, spec.mixture);
    case Family::Smolin:
      return smolin();
    case Family::Dur:
      return dur(spec.N, spec.x);
    case Family::AntisymProjectorState:
      return antisym_projector_state(spec.d, spec.N);
    case Family::AntisymBasis:
      return antisym_basis(spec.N);
    case Family::GeneralizedAntisym:
      return generalized_antisym(spec.d, spec.p, spec.k);
    case Family::GHZ:
      return ghz(spec.N, spec.d);
    case Family::ProductBasis:
      return product_basis(spec.dims, spec.index);
  }
  throw std::logic_error("unreachable");
}

}  // namespace entmeas
