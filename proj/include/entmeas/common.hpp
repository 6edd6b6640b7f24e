// common.hpp
// Shared scalar/matrix aliases, tolerances and multi-index helpers.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace entmeas {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// All logarithms in reported values are base 2; values carry the unit "bits".
inline double log2_safe(double x) { return std::log2(x); }

namespace tol {
constexpr double hermitian = 1e-12;
constexpr double trace_one = 1e-12;
constexpr double psd_eig = -1e-10;
constexpr double unit_norm = 1e-12;
constexpr double rank_eig = 1e-9;
constexpr double entropy_floor = 1e-14;
constexpr double support_floor = 1e-12;
}  // namespace tol

// Hard cap on the total Hilbert-space dimension of dense states.
constexpr long kDefaultDimCap = 16384;

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Row-major, party-major indexing: index = sum_j i_j * stride_j with
// stride_j = prod_{l>j} d_l (last party varies fastest).
inline std::vector<long> index_strides(const std::vector<int>& dims) {
  std::vector<long> s(dims.size());
  long acc = 1;
  for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
    s[static_cast<size_t>(j)] = acc;
    acc *= dims[static_cast<size_t>(j)];
  }
  return s;
}

inline long total_dim(const std::vector<int>& dims) {
  long acc = 1;
  for (int d : dims) acc *= d;
  return acc;
}

inline void decompose_index(long idx, const std::vector<int>& dims,
                            std::vector<int>& digits) {
  digits.resize(dims.size());
  for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
    digits[static_cast<size_t>(j)] = static_cast<int>(idx % dims[static_cast<size_t>(j)]);
    idx /= dims[static_cast<size_t>(j)];
  }
}

inline long compose_index(const std::vector<int>& digits,
                          const std::vector<long>& strides) {
  long idx = 0;
  for (size_t j = 0; j < digits.size(); ++j) idx += digits[j] * strides[j];
  return idx;
}

inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Shannon entropy in bits; zero entries contribute nothing (0 log 0 = 0).
inline double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > tol::entropy_floor) h -= x * std::log2(x);
  return h;
}

inline double binary_entropy(double p) { return shannon_entropy({p, 1.0 - p}); }

inline Mat hermitian_part(const Mat& a) { return 0.5 * (a + a.adjoint()); }

// Eigenvalue clip onto the PSD cone.
inline Mat psd_part(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(a));
  Mat out = Mat::Zero(a.rows(), a.cols());
  for (long i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()(i);
    if (lam > 0.0) out += lam * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  return out;
}

inline Mat matrix_sqrt_psd(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(a));
  Mat out = Mat::Zero(a.rows(), a.cols());
  for (long i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()(i);
    if (lam > 0.0) out += std::sqrt(lam) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  return out;
}

}  // namespace entmeas
