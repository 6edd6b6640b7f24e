// rng.hpp
// Deterministic, splittable random source. Per-stream seeds are derived from
// a master seed with splitmix64, so parallel execution order cannot change
// sampled values. Gaussians use an explicit Box-Muller transform rather than
// std::normal_distribution to keep streams portable across standard libraries.

#pragma once

#include "entmeas/common.hpp"

#include <cmath>
#include <random>

namespace entmeas {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for the i-th independent stream of a master seed.
inline uint64_t derive_seed(uint64_t master, uint64_t counter) {
  return splitmix64(master ^ splitmix64(counter + 1));
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  double uniform() {
    // 53-bit mantissa uniform in [0,1).
    return (gen_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  cxd gaussian_cx() { return cxd(gaussian(), gaussian()); }

  uint64_t raw() { return gen_(); }

  // Haar-distributed unit vector (normalized standard complex Gaussian).
  Vec haar_vector(long dim) {
    Vec v(dim);
    for (long i = 0; i < dim; ++i) v(i) = gaussian_cx();
    v.normalize();
    return v;
  }

  // Orthogonally invariant real unit vector, stored with complex type.
  Vec real_sphere_vector(long dim) {
    Vec v(dim);
    for (long i = 0; i < dim; ++i) v(i) = cxd(gaussian(), 0.0);
    v.normalize();
    return v;
  }

  // Haar unitary via QR of a Ginibre matrix with phase fixing.
  Mat haar_unitary(long dim) {
    Mat g(dim, dim);
    for (long i = 0; i < dim; ++i)
      for (long j = 0; j < dim; ++j) g(i, j) = gaussian_cx();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (long j = 0; j < dim; ++j) {
      cxd d = r(j, j);
      q.col(j) *= (std::abs(d) > 0) ? d / std::abs(d) : cxd(1, 0);
    }
    return q;
  }

  // Normalized random density matrix (Ginibre-induced measure), rank <= k.
  Mat random_density(long dim, long k) {
    Mat g(dim, k);
    for (long i = 0; i < dim; ++i)
      for (long j = 0; j < k; ++j) g(i, j) = gaussian_cx();
    Mat rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace entmeas
