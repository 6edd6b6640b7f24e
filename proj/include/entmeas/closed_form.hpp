// closed_form.hpp
// Analytic single- and two-copy values of GM / REE / LGR for the named
// families, where such values exist. Returns nullopt where no analytic value
// is available ("--" table entries); that is a result, not an error.

#pragma once

#include "entmeas/families.hpp"

namespace entmeas {

enum class Measure { GM, REE, LGR };

inline std::string measure_name(Measure m) {
  switch (m) {
    case Measure::GM: return "GM";
    case Measure::REE: return "REE";
    case Measure::LGR: return "LGR";
  }
  return "?";
}

namespace closed {

inline double bell_gm(std::vector<double> p) {
  std::sort(p.begin(), p.end(), std::greater<double>());
  return 1.0 - std::log2(p[0] + p[1]);
}

inline double bell_ree(std::vector<double> p) {
  std::sort(p.begin(), p.end(), std::greater<double>());
  if (p[0] <= 0.5) return 0.0;
  return 1.0 - binary_entropy(p[0]);
}

inline double bell_lgr(std::vector<double> p) {
  std::sort(p.begin(), p.end(), std::greater<double>());
  if (p[0] <= 0.5) return 0.0;
  return std::log2(2.0 * p[0]);
}

// Lambda^2 of the isotropic state: linear in the singlet-fraction overlap,
// so the optimum sits at an endpoint of [0, 1/d].
inline double iso_lambda_sq(int d, double lam) {
  if (lam * d * d >= 1.0) return (lam * d + 1.0) / (d * (d + 1.0));
  return (1.0 - lam) / (static_cast<double>(d) * d - 1.0);
}

inline double iso_ree(int d, double lam) {
  if (lam <= 1.0 / d) return 0.0;
  return std::log2(static_cast<double>(d)) + lam * std::log2(lam) +
         (1.0 - lam) * std::log2((1.0 - lam) / (d - 1.0));
}

inline double dicke_gm(int N, const std::vector<int>& kvec) {
  // -log2[ C_{N,k} prod (k_j/N)^{k_j} ] with the 0^0 = 1 convention
  double c = factorial(N);
  double prod = 1.0;
  for (int kj : kvec) {
    c /= factorial(kj);
    if (kj > 0) prod *= std::pow(static_cast<double>(kj) / N, kj);
  }
  return -std::log2(c * prod);
}

// Lambda^2 of a two-level Dicke mixture under the symmetric non-negative
// replica ansatz a = (cos t, sin t): a one-parameter maximization, solved
// by dense scan plus golden-section polish (deterministic).
inline double dicke_mixture_lambda_sq(int N, const std::vector<std::pair<int, double>>& terms) {
  auto value = [&](double t) {
    double c2 = std::cos(t) * std::cos(t);
    double s2 = 1.0 - c2;
    double acc = 0.0;
    for (auto& [k, w] : terms)
      acc += w * binom(N, k) * std::pow(c2, k) * std::pow(s2, N - k);
    return acc;
  };
  const int grid = 4000;
  double best_t = 0.0, best_v = -1.0;
  for (int i = 0; i <= grid; ++i) {
    double t = 0.5 * M_PI * i / grid;
    double v = value(t);
    if (v > best_v) { best_v = v; best_t = t; }
  }
  double lo = std::max(0.0, best_t - M_PI / grid);
  double hi = std::min(0.5 * M_PI, best_t + M_PI / grid);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
  double fa = value(a), fb = value(b);
  for (int it = 0; it < 200; ++it) {
    if (fa < fb) {
      lo = a; a = b; fa = fb;
      b = lo + phi * (hi - lo); fb = value(b);
    } else {
      hi = b; b = a; fb = fa;
      a = hi - phi * (hi - lo); fa = value(a);
    }
  }
  return std::max(best_v, std::max(fa, fb));
}

inline double dur_gm(int N, double x) {
  double thr = 1.0 / (N + 1.0);
  double lam2 = (x <= thr) ? (1.0 - x) / (2.0 * N) : x / 2.0;
  return -std::log2(lam2);
}

// Antisymmetric projector family values (Table 2 / Prop. 13 / Eq. 41).
struct AspValues {
  double gm1, ree1, lgr1;    // single copy
  double gm2, ree2, lgr2;    // two copies, equal dimensions
};

inline AspValues asp_values(int d, int N) {
  AspValues v{};
  double perm = factorial(d) / factorial(d - N);  // d!/(d-N)!
  v.gm1 = std::log2(perm);
  v.ree1 = v.lgr1 = std::log2(factorial(N));
  double dn = std::pow(static_cast<double>(d), N);
  v.gm2 = std::log2(dn * factorial(d) / (factorial(N) * factorial(d - N)));
  v.ree2 = v.lgr2 = std::log2(dn * factorial(N) * factorial(d - N) / factorial(d));
  return v;
}

// Mixed-dimension tensor product rho_{d1,N} (x) rho_{d2,N}, N <= d1 <= d2.
struct AspPairValues {
  double gm, ree, lgr;
};

inline AspPairValues asp_pair_values(int d1, int d2, int N) {
  if (!(N <= d1 && d1 <= d2)) throw std::invalid_argument("asp pair: need N <= d1 <= d2");
  AspPairValues v{};
  double dn = std::pow(static_cast<double>(d1), N);
  v.gm = std::log2(dn * factorial(d2) / (factorial(N) * factorial(d2 - N)));
  v.ree = v.lgr = std::log2(dn * factorial(N) * factorial(d1 - N) / factorial(d1));
  return v;
}

}  // namespace closed

// The paper's analytic value for (family, measure, copies), or nullopt.
inline std::optional<double> closed_form(const FamilySpec& spec, Measure m, int copies = 1) {
  spec.validate();
  if (copies != 1 && copies != 2) throw std::invalid_argument("copies must be 1 or 2");
  const bool two = copies == 2;
  auto twice = [&](double v) { return two ? 2.0 * v : v; };

  switch (spec.family) {
    case Family::BellDiagonal:
      switch (m) {
        case Measure::GM: return twice(closed::bell_gm(spec.probs));   // strong additive
        case Measure::REE: return twice(closed::bell_ree(spec.probs)); // additive
        case Measure::LGR:
          return two ? std::nullopt : std::optional<double>(closed::bell_lgr(spec.probs));
      }
      break;
    case Family::MCB:
      switch (m) {
        case Measure::GM: return twice(std::log2(static_cast<double>(spec.d)));
        case Measure::REE:
          return twice(std::log2(static_cast<double>(spec.d)) - shannon_entropy(spec.probs));
        case Measure::LGR: return std::nullopt;
      }
      break;
    case Family::Isotropic:
      switch (m) {
        case Measure::GM: return twice(-std::log2(closed::iso_lambda_sq(spec.d, spec.lambda)));
        case Measure::REE: return twice(closed::iso_ree(spec.d, spec.lambda));
        case Measure::LGR:
          if (two) return std::nullopt;
          return spec.lambda <= 1.0 / spec.d ? 0.0 : std::log2(spec.d * spec.lambda);
      }
      break;
    case Family::Dicke:
      // GM strong additive; REE and LGR additive for generalized Dicke states.
      return twice(closed::dicke_gm(spec.N, spec.kvec));
    case Family::DickeMixture:
      switch (m) {
        case Measure::GM:
          return twice(-std::log2(closed::dicke_mixture_lambda_sq(spec.N, spec.mixture)));
        case Measure::REE: return std::nullopt;
        case Measure::LGR: return std::nullopt;
      }
      break;
    case Family::Smolin:
      switch (m) {
        case Measure::GM: return twice(3.0);
        case Measure::REE: return twice(1.0);
        case Measure::LGR: return twice(1.0);
      }
      break;
    case Family::Dur:
      if (spec.N < 4) return std::nullopt;  // closed forms proved for N >= 4
      switch (m) {
        case Measure::GM: return twice(closed::dur_gm(spec.N, spec.x));
        case Measure::REE: return twice(spec.x);
        case Measure::LGR: return std::nullopt;
      }
      break;
    case Family::AntisymProjectorState: {
      auto v = closed::asp_values(spec.d, spec.N);
      switch (m) {
        case Measure::GM: return two ? v.gm2 : v.gm1;
        case Measure::REE: return two ? v.ree2 : v.ree1;
        case Measure::LGR: return two ? v.lgr2 : v.lgr1;
      }
      break;
    }
    case Family::AntisymBasis: {
      auto v = closed::asp_values(spec.N, spec.N);
      switch (m) {
        case Measure::GM: return two ? v.gm2 : v.gm1;
        case Measure::REE: return two ? v.ree2 : v.ree1;
        case Measure::LGR: return two ? v.lgr2 : v.lgr1;
      }
      break;
    }
    case Family::GeneralizedAntisym: {
      double single = std::log2(factorial(spec.k));
      if (!two) return single;
      double block = std::pow(static_cast<double>(spec.d), spec.p);
      bool full = std::abs(block - spec.k) < 0.5;  // k == d^p
      if (m == Measure::GM && full) return spec.k * std::log2(static_cast<double>(spec.k));
      return std::nullopt;  // two-copy REE/LGR (and GM for k < d^p) open
    }
    case Family::GHZ:
      return twice(std::log2(static_cast<double>(spec.d)));
    case Family::ProductBasis:
      return 0.0;
  }
  return std::nullopt;
}

}  // namespace entmeas
