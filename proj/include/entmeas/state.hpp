// state.hpp
// Dense party-annotated quantum states. Pure states are kept as unit vectors
// and promoted to density matrices only on demand; mixed states are Hermitian
// PSD unit-trace matrices. Instances are immutable after construction.

#pragma once

#include "entmeas/common.hpp"
#include "entmeas/layout.hpp"

namespace entmeas {

struct StateTags {
  bool non_negative = false;  // all computational-basis entries real and >= 0
  bool symmetric = false;     // support inside the symmetric subspace
  bool antisymmetric = false; // support inside the antisymmetric subspace
  bool real = false;          // all computational-basis entries real
};

class QuantumState {
 public:
  static QuantumState pure(Vec psi, PartyLayout layout, StateTags tags = {},
                           bool validate = true) {
    QuantumState s;
    s.layout_ = std::move(layout);
    s.psi_ = std::move(psi);
    s.is_pure_ = true;
    s.tags_ = tags;
    if (validate) s.check_valid();
    return s;
  }

  static QuantumState mixed(Mat rho, PartyLayout layout, StateTags tags = {},
                            bool validate = true) {
    QuantumState s;
    s.layout_ = std::move(layout);
    s.rho_ = std::move(rho);
    s.is_pure_ = false;
    s.tags_ = tags;
    if (validate) s.check_valid();
    return s;
  }

  static QuantumState basis_state(const PartyLayout& layout, long index) {
    Vec v = Vec::Zero(layout.total_dim());
    v(index) = 1.0;
    StateTags t;
    t.non_negative = true;
    t.real = true;
    return pure(std::move(v), layout, t);
  }

  const PartyLayout& layout() const { return layout_; }
  bool is_pure() const { return is_pure_; }
  const StateTags& tags() const { return tags_; }
  long dim() const { return layout_.total_dim(); }

  const Vec& vector() const {
    if (!is_pure_) throw std::logic_error("vector() on mixed state");
    return psi_;
  }

  // Density-matrix view; promotes a pure state lazily.
  const Mat& matrix() const {
    if (!is_pure_) return rho_;
    if (rho_.size() == 0) rho_ = psi_ * psi_.adjoint();
    return rho_;
  }

  double purity() const {
    if (is_pure_) return 1.0;
    return (rho_ * rho_).trace().real();
  }

  QuantumState with_tags(StateTags t) const {
    QuantumState s = *this;
    s.tags_ = t;
    return s;
  }

  // Spec-level well-formedness checks (Hermitian, PSD, trace / norm, tag
  // consistency for the cheap tags). Throws on violation.
  void check_valid() const {
    if (is_pure_) {
      if (psi_.size() != layout_.total_dim())
        throw std::invalid_argument("pure state dimension mismatch");
      if (std::abs(psi_.norm() - 1.0) > tol::unit_norm)
        throw std::invalid_argument("pure state is not normalized");
    } else {
      if (rho_.rows() != layout_.total_dim() || rho_.cols() != rho_.rows())
        throw std::invalid_argument("density matrix dimension mismatch");
      if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-11)
        throw std::invalid_argument("density matrix is not Hermitian");
      if (std::abs(rho_.trace().real() - 1.0) > 1e-11 ||
          std::abs(rho_.trace().imag()) > tol::trace_one)
        throw std::invalid_argument("density matrix trace != 1");
      Eigen::SelfAdjointEigenSolver<Mat> es(rho_, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < tol::psd_eig)
        throw std::invalid_argument("density matrix is not PSD");
    }
    if (tags_.non_negative || tags_.real) check_entry_tags();
  }

  // The antisymmetric tag needs the projector; checked in antisym.hpp.
  void check_entry_tags() const {
    auto probe = [&](cxd v) {
      if (tags_.real && std::abs(v.imag()) > 1e-12)
        throw std::invalid_argument("real tag violated");
      if (tags_.non_negative &&
          (v.real() < -1e-12 || std::abs(v.imag()) > 1e-12))
        throw std::invalid_argument("non_negative tag violated");
    };
    if (is_pure_) {
      for (long i = 0; i < psi_.size(); ++i) probe(psi_(i));
    } else {
      for (long i = 0; i < rho_.rows(); ++i)
        for (long j = 0; j < rho_.cols(); ++j) probe(rho_(i, j));
    }
  }

 private:
  PartyLayout layout_;
  Vec psi_;
  mutable Mat rho_;
  bool is_pure_ = false;
  StateTags tags_;
};

}  // namespace entmeas
