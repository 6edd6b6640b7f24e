// GM solver: engine behavior, specialized ansaetze, certificates and the
// solver-level invariants (local-unitary invariance, purification identity,
// subadditivity direction).

#include "entmeas/closed_form.hpp"
#include "entmeas/gm.hpp"

#include <gtest/gtest.h>

using namespace entmeas;

namespace {

GmOptions fast_opts(int restarts = 16, uint64_t seed = 42) {
  GmOptions o;
  o.restarts = restarts;
  o.seed = seed;
  return o;
}

QuantumState w_state() { return dicke(3, {2, 1}); }

QuantumState apply_local_unitaries(const QuantumState& s, const std::vector<Mat>& us) {
  const auto& dims = s.layout().dims();
  Mat u = Mat::Ones(1, 1);
  for (size_t j = 0; j < us.size(); ++j) {
    Mat next(u.rows() * us[j].rows(), u.cols() * us[j].cols());
    for (long r = 0; r < u.rows(); ++r)
      for (long c = 0; c < u.cols(); ++c)
        next.block(r * us[j].rows(), c * us[j].cols(), us[j].rows(), us[j].cols()) =
            u(r, c) * us[j];
    u = std::move(next);
  }
  (void)dims;
  if (s.is_pure()) return QuantumState::pure(u * s.vector(), s.layout(), {}, false);
  return QuantumState::mixed(u * s.matrix() * u.adjoint(), s.layout(), {}, false);
}

double witness_overlap(const QuantumState& s, const ProductAnsatz& w) {
  Vec phi = w.assemble();
  if (s.is_pure()) return std::norm(phi.dot(s.vector()));
  return std::real(phi.dot(s.matrix() * phi));
}

}  // namespace

TEST(BestProductOverlap, BasicCases) {
  // |000><000|
  Mat h = Mat::Zero(8, 8);
  h(0, 0) = 1.0;
  auto r = best_product_overlap(h, PartyLayout::qubits(3), fast_opts());
  EXPECT_NEAR(r.lambda_sq, 1.0, 1e-12);

  auto g = ghz(3, 2);
  auto rg = gm(g, fast_opts());
  EXPECT_NEAR(rg.lambda_sq, 0.5, 1e-10);
  EXPECT_NEAR(rg.gm_bits, 1.0, 1e-9);

  auto rw = gm(w_state(), fast_opts());
  EXPECT_NEAR(rw.lambda_sq, 4.0 / 9.0, 1e-9);
  EXPECT_NEAR(rw.gm_bits, std::log2(9.0 / 4.0), 1e-8);
}

TEST(BestProductOverlap, RejectsNonHermitian) {
  Mat h = Mat::Zero(4, 4);
  h(0, 1) = 1.0;  // strongly non-Hermitian
  EXPECT_THROW(best_product_overlap(h, PartyLayout::qubits(2)), std::invalid_argument);
}

TEST(Gm, FamilyClosedForms) {
  EXPECT_NEAR(gm(smolin(), fast_opts()).gm_bits, 3.0, 1e-9);
  EXPECT_NEAR(gm(isotropic(3, 2.0 / 3.0), fast_opts()).gm_bits, 2.0, 1e-9);
  EXPECT_NEAR(gm(dicke(4, {2, 2}), fast_opts()).gm_bits, std::log2(8.0 / 3.0), 1e-9);
  EXPECT_NEAR(gm(bell_diagonal(0.7, 0.1, 0.1, 0.1), fast_opts()).lambda_sq, 0.4, 1e-10);
  EXPECT_NEAR(gm(mcb(3, {0.2, 0.5, 0.3}), fast_opts()).lambda_sq, 1.0 / 3.0, 1e-10);
  EXPECT_NEAR(gm(dur(4, 0.2), fast_opts()).lambda_sq, 0.1, 1e-10);
  EXPECT_NEAR(gm(dur(4, 0.1), fast_opts()).lambda_sq, 0.9 / 8.0, 1e-10);
  EXPECT_NEAR(gm(dur(4, 1.0), fast_opts()).lambda_sq, 0.5, 1e-10);
}

TEST(Gm, GeneralizedAntisymBasisOptimum) {
  auto g = generalized_antisym(2, 2, 4);  // 8 qubits, Lambda^2 = 1/24
  auto r = gm(g, fast_opts(8));
  EXPECT_NEAR(r.gm_bits, std::log2(24.0), 1e-8);
}

TEST(GmSymmetricReplica, DickeWitness) {
  auto r = gm_symmetric_replica(w_state(), fast_opts());
  EXPECT_NEAR(r.lambda_sq, 4.0 / 9.0, 1e-10);
  // witness |a>^{x3} with a = (sqrt(2/3), sqrt(1/3)) up to phase
  const Vec& a = r.witness.locals[0];
  EXPECT_NEAR(std::abs(a(0)), std::sqrt(2.0 / 3.0), 1e-6);
  EXPECT_NEAR(std::abs(a(1)), std::sqrt(1.0 / 3.0), 1e-6);

  auto rg = gm_symmetric_replica(ghz(3, 2), fast_opts());
  EXPECT_NEAR(rg.lambda_sq, 0.5, 1e-10);
  // two degenerate optima |0>^x3 and |1>^x3; either witness is correct
  double a0 = std::abs(rg.witness.locals[0](0));
  double a1 = std::abs(rg.witness.locals[0](1));
  EXPECT_NEAR(std::max(a0, a1), 1.0, 1e-6);
}

TEST(GmSymmetricReplica, MixtureMatchesThetaScanOracle) {
  // s = 0 endpoint: pure |N,1> Dicke optimum; oracle = dense theta grid
  for (double s : {0.0, 0.25, 0.5}) {
    std::vector<std::pair<int, double>> terms;
    if (s > 0) terms.push_back({0, s});
    terms.push_back({1, 1.0 - s});
    auto rho = dicke_mixture(2, terms);
    auto r = gm_symmetric_replica(rho, fast_opts());
    // oracle: theta scan of s*sin^4 + (1-s)*2 cos^2 sin^2 at 1e-6 resolution
    double best = 0.0;
    for (long i = 0; i <= 1570796; ++i) {
      double t = i * 1e-6;
      double c2 = std::cos(t) * std::cos(t), s2 = 1 - c2;
      double v = s * s2 * s2 + (1.0 - s) * 2.0 * c2 * s2;
      best = std::max(best, v);
    }
    EXPECT_NEAR(r.lambda_sq, best, 1e-7) << "s=" << s;
  }
}

TEST(GmSymmetricReplica, RequiresSymmetricTag) {
  EXPECT_THROW(gm_symmetric_replica(bell_diagonal(0.7, 0.1, 0.1, 0.1)),
               std::invalid_argument);
}

TEST(GmAntisymFrame, ProjectorStates) {
  auto r32 = gm_antisym_frame(antisym_projector_state(3, 2), fast_opts());
  EXPECT_NEAR(r32.lambda_sq, 1.0 / 6.0, 1e-10);
  EXPECT_NEAR(r32.gm_bits, std::log2(6.0), 1e-9);

  auto r4 = gm_antisym_frame(antisym_basis(4), fast_opts(8));
  EXPECT_NEAR(r4.gm_bits, std::log2(24.0), 1e-8);

  // any Slater determinant: lambda_sq = 1/N!
  Rng rng(3);
  Mat u = rng.haar_unitary(5);
  auto slater = wedge_state({u.col(0), u.col(1), u.col(2)});
  auto rs = gm_antisym_frame(slater, fast_opts(8));
  EXPECT_NEAR(rs.lambda_sq, 1.0 / 6.0, 1e-9);
}

TEST(GmAntisymFrame, WitnessFrameIsOrthonormal) {
  auto r = gm_antisym_frame(antisym_projector_state(4, 2), fast_opts());
  const auto& w = r.witness.locals;
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = 0; j < w.size(); ++j) {
      cxd g = w[i].dot(w[j]);
      EXPECT_NEAR(std::abs(g - (i == j ? cxd(1, 0) : cxd(0, 0))), 0.0, 1e-8);
    }
}

TEST(Gm, DispatchPrefersSpecializedButCrossChecks) {
  auto r = gm(antisym_projector_state(3, 2), fast_opts());
  EXPECT_NEAR(r.lambda_sq, 1.0 / 6.0, 1e-10);
  auto rw = gm(w_state(), fast_opts());
  EXPECT_EQ(static_cast<int>(rw.ansatz_used),
            static_cast<int>(GmAnsatz::SymmetricReplica));
}

TEST(Gm, CertificateSoundness) {
  for (const auto& s : {bell_diagonal(0.5, 0.3, 0.1, 0.1), smolin(),
                        antisym_projector_state(3, 2)}) {
    auto r = gm(s, fast_opts(8));
    EXPECT_NEAR(witness_overlap(s, r.witness), r.lambda_sq, 1e-10);
    for (const auto& a : r.witness.locals) EXPECT_NEAR(a.norm(), 1.0, 1e-10);
  }
}

TEST(Gm, LocalUnitaryInvariance) {
  Rng rng(17);
  auto base = w_state();
  double ref = gm(base, fast_opts()).gm_bits;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Mat> us = {rng.haar_unitary(2), rng.haar_unitary(2), rng.haar_unitary(2)};
    auto rotated = apply_local_unitaries(base, us);
    EXPECT_NEAR(gm(rotated, fast_opts(24, 100 + static_cast<uint64_t>(trial))).gm_bits,
                ref, 1e-6);
  }
}

TEST(Gm, PurificationIdentity) {
  // G(rho) = G(|psi>) for any (N-1)-party reduction of a pure state
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    int d = (trial % 2 == 0) ? 2 : 3;
    PartyLayout layout = PartyLayout::qudits(3, d);
    auto psi = QuantumState::pure(rng.haar_vector(layout.total_dim()), layout, {}, false);
    auto reduced = partial_trace_indices(psi, {0, 1});
    double gp = gm(psi, fast_opts(24, 500 + static_cast<uint64_t>(trial))).gm_bits;
    double gr = gm(reduced, fast_opts(24, 900 + static_cast<uint64_t>(trial))).gm_bits;
    EXPECT_NEAR(gp, gr, 1e-5) << "trial " << trial;
  }
}

TEST(Gm, SubadditivityDirection) {
  Rng rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    auto a = QuantumState::mixed(rng.random_density(4, 3), PartyLayout::qubits(2));
    auto b = QuantumState::pure(rng.haar_vector(4), PartyLayout::qubits(2), {}, false);
    auto joint = tensor_merge(a, b);
    double ga = gm(a, fast_opts(16, 11 + static_cast<uint64_t>(trial))).gm_bits;
    double gb = gm(b, fast_opts(16, 12 + static_cast<uint64_t>(trial))).gm_bits;
    double gj = gm(joint, fast_opts(16, 13 + static_cast<uint64_t>(trial))).gm_bits;
    EXPECT_LE(gj, ga + gb + 1e-6);
  }
}

TEST(Gm, StrongAdditivityOnNonNegativePairs) {
  // small-scale version of the Theorem-1 property suite
  Rng rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    // non-negative mixed state from non-negative pure pieces
    Mat rho = Mat::Zero(4, 4);
    for (int piece = 0; piece < 3; ++piece) {
      Vec v(4);
      for (int i = 0; i < 4; ++i) v(i) = std::abs(rng.gaussian());
      v.normalize();
      rho += v * v.adjoint();
    }
    rho /= rho.trace().real();
    StateTags t;
    t.non_negative = t.real = true;
    auto a = QuantumState::mixed(rho, PartyLayout::qubits(2), t);
    auto b = QuantumState::mixed(rng.random_density(4, 2), PartyLayout::qubits(2));

    auto ra = gm(a, fast_opts(24, 600 + static_cast<uint64_t>(trial)));
    auto rb = gm(b, fast_opts(24, 700 + static_cast<uint64_t>(trial)));
    std::vector<std::vector<Vec>> seeds;
    {
      std::vector<Vec> joint_seed;
      for (size_t j = 0; j < 2; ++j) {
        Vec m(4);
        for (int ia = 0; ia < 2; ++ia)
          for (int ib = 0; ib < 2; ++ib)
            m(ia * 2 + ib) = ra.witness.locals[j](ia) * rb.witness.locals[j](ib);
        joint_seed.push_back(m);
      }
      seeds.push_back(joint_seed);
    }
    auto joint = tensor_merge(a, b);
    auto rj = gm(joint, fast_opts(24, 800 + static_cast<uint64_t>(trial)), seeds);
    EXPECT_NEAR(rj.gm_bits, ra.gm_bits + rb.gm_bits, 1e-4) << "trial " << trial;
  }
}

TEST(LowerBound, GMinusS) {
  EXPECT_NEAR(lower_bound_g_minus_s(smolin(), fast_opts()), 1.0, 1e-8);
  EXPECT_NEAR(lower_bound_g_minus_s(antisym_projector_state(3, 2), fast_opts()),
              1.0, 1e-8);
  double lb = lower_bound_g_minus_s(dur(4, 0.5), fast_opts());
  EXPECT_LT(lb, 0.5 - 1e-3);  // bound exists but is not tight here
}

TEST(Gm, SinglePartyIsUnentangled) {
  auto s = QuantumState::pure(Rng(2).haar_vector(5), PartyLayout::qudits(1, 5), {}, false);
  EXPECT_NEAR(gm(s, fast_opts(2)).gm_bits, 0.0, 1e-12);
}

TEST(Gm, DeterministicUnderFixedSeed) {
  auto s = bell_diagonal(0.6, 0.2, 0.1, 0.1);
  auto r1 = gm(s, fast_opts(8, 777));
  auto r2 = gm(s, fast_opts(8, 777));
  EXPECT_EQ(r1.lambda_sq, r2.lambda_sq);
  for (size_t j = 0; j < r1.witness.locals.size(); ++j)
    EXPECT_TRUE(r1.witness.locals[j] == r2.witness.locals[j]);
}
