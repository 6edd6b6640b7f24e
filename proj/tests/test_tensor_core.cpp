// Tests for the tensor core: merging, partial trace, permutations, wedge
// products, the antisymmetric projector and entropy.

#include "entmeas/antisym.hpp"
#include "entmeas/rng.hpp"
#include "entmeas/tensor_ops.hpp"

#include <gtest/gtest.h>

using namespace entmeas;

namespace {

Vec basis_vec(long dim, long idx) {
  Vec v = Vec::Zero(dim);
  v(idx) = 1.0;
  return v;
}

QuantumState ghz3() {
  Vec v = Vec::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  StateTags t;
  t.non_negative = t.symmetric = t.real = true;
  return QuantumState::pure(v, PartyLayout::qubits(3), t);
}

// Plain Kronecker product without party merging (oracle for tensor_merge).
Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

TEST(TensorMerge, SingleQubitsBecomeOneParty) {
  auto q0 = QuantumState::basis_state(PartyLayout::qubits(1), 0);
  auto merged = tensor_merge(q0, q0);
  ASSERT_EQ(merged.layout().num_parties(), 1);
  ASSERT_EQ(merged.layout().dim(0), 4);
  EXPECT_TRUE(merged.is_pure());
  EXPECT_NEAR(std::abs(merged.vector()(0)), 1.0, 1e-15);
}

TEST(TensorMerge, PureTimesPureStaysPure) {
  auto g = ghz3();
  auto merged = tensor_merge(g, g);
  EXPECT_TRUE(merged.is_pure());
  ASSERT_EQ(merged.layout().num_parties(), 3);
  for (int j = 0; j < 3; ++j) EXPECT_EQ(merged.layout().dim(j), 4);
  EXPECT_NEAR(merged.vector().norm(), 1.0, 1e-12);
}

TEST(TensorMerge, MatchesNaiveKroneckerPlusPermutation) {
  // rho_{3,2} (x) rho_{3,2}: merged 2-party (9,9) state must equal the
  // 4-party Kronecker product with parties reordered (1,3,2,4).
  auto p = antisym_projector(3, 2);
  Mat rho = p.matrix / p.matrix.trace().real();
  StateTags t;
  t.antisymmetric = true;
  t.real = true;
  auto s = QuantumState::mixed(rho, PartyLayout::qudits(2, 3), t);
  auto merged = tensor_merge(s, s);
  EXPECT_NEAR(merged.matrix().trace().real(), 1.0, 1e-12);
  EXPECT_TRUE(merged.tags().symmetric);

  Mat naive = kron(rho, rho);  // parties (1,2,3,4) with (3,4) the second copy
  auto four = QuantumState::mixed(
      naive, PartyLayout({3, 3, 3, 3}, {"A1", "A2", "B1", "B2"}), {}, true);
  // reorder to (A1, B1, A2, B2): input parties (0,1,2,3) -> positions (0,2,1,3)
  auto reordered = permute_parties(four, {0, 2, 1, 3});
  EXPECT_LT((merged.matrix() - reordered.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TensorMerge, TraceOutIdentityRoundTrip) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto layout = PartyLayout::qubits(2);
    auto a = QuantumState::mixed(rng.random_density(4, 4), layout);
    auto b = QuantumState::mixed(rng.random_density(4, 2), layout);
    auto merged = tensor_merge(a, b);
    // Tracing the merged state back onto copy-a requires splitting each
    // merged party; rebuild the 4-party view and keep parties (0,2).
    Mat m = merged.matrix();
    auto four = QuantumState::mixed(
        m, PartyLayout({2, 2, 2, 2}, {"A1", "B1", "A2", "B2"}), {}, false);
    auto back = partial_trace_indices(four, {0, 2});
    EXPECT_LT((back.matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(PartialTrace, GhzReduction) {
  auto g = ghz3();
  auto r = partial_trace(g, {"A1", "A2"});
  Mat expect = Mat::Zero(4, 4);
  expect(0, 0) = 0.5;
  expect(3, 3) = 0.5;
  EXPECT_LT((r.matrix() - expect).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(r.matrix().trace().real(), 1.0, 1e-12);
}

TEST(PartialTrace, SlaterOneParticleReducedIsMaximallyMixed) {
  auto psi = wedge_state({basis_vec(3, 0), basis_vec(3, 1), basis_vec(3, 2)});
  auto one = partial_trace_indices(psi, {1});
  EXPECT_LT((one.matrix() - Mat::Identity(3, 3) / 3.0).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PartialTrace, DickeReducedEntropy) {
  // |3,(2,1)>: W-type state; tracing one party leaves S = H(2/3,1/3).
  Vec v = Vec::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);  // |001>,|010>,|100>
  auto w = QuantumState::pure(v, PartyLayout::qubits(3));
  auto r = partial_trace(w, {"A2", "A3"});
  EXPECT_NEAR(entropy(r), binary_entropy(2.0 / 3.0), 1e-12);
}

TEST(PartialTrace, Errors) {
  auto g = ghz3();
  EXPECT_THROW(partial_trace(g, {}), std::invalid_argument);
  EXPECT_THROW(partial_trace(g, {"Z9"}), std::invalid_argument);
}

TEST(PermuteParties, IdentityAndSwap) {
  auto g = ghz3();
  auto same = permute_parties(g, {0, 1, 2});
  EXPECT_TRUE(same.vector() == g.vector());

  Vec v01 = Vec::Zero(4);
  v01(1) = 1.0;  // |01>
  auto s = QuantumState::pure(v01, PartyLayout::qubits(2));
  auto swapped = permute_parties(s, {1, 0});
  EXPECT_NEAR(std::abs(swapped.vector()(2)), 1.0, 1e-15);  // |10>
}

TEST(PermuteParties, PreservesSpectrum) {
  Rng rng(5);
  auto s = QuantumState::mixed(rng.random_density(8, 5), PartyLayout::qubits(3));
  auto p = permute_parties(s, {2, 0, 1});
  auto ev1 = eigenvalues_of(s);
  auto ev2 = eigenvalues_of(p);
  for (size_t i = 0; i < ev1.size(); ++i) EXPECT_NEAR(ev1[i], ev2[i], 1e-10);
}

TEST(PermuteParties, RejectsInvalid) {
  auto g = ghz3();
  EXPECT_THROW(permute_parties(g, {0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(permute_parties(g, {0, 1}), std::invalid_argument);
}

TEST(Wedge, TwoPartySinglet) {
  auto w = wedge({basis_vec(2, 0), basis_vec(2, 1)});
  EXPECT_NEAR(w.norm, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(w.vector(1) - cxd(1.0 / std::sqrt(2.0), 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(w.vector(2) + cxd(1.0 / std::sqrt(2.0), 0)), 0.0, 1e-12);
}

TEST(Wedge, LinearlyDependentVanishes) {
  auto w = wedge({basis_vec(2, 0), basis_vec(2, 0)});
  EXPECT_NEAR(w.norm, 0.0, 1e-12);
}

TEST(Wedge, SubnormalizedOverlap) {
  Vec plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  auto w = wedge({basis_vec(2, 0), plus});
  EXPECT_NEAR(w.norm, 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Wedge, NormMatchesGramDeterminant) {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 3 + static_cast<int>(rng.raw() % 3);  // d in 3..5
    int n = 2 + static_cast<int>(rng.raw() % 2);  // n in 2..3
    std::vector<Vec> vs;
    for (int i = 0; i < n; ++i) vs.push_back(rng.haar_vector(d));
    Mat gram(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gram(i, j) = vs[static_cast<size_t>(i)].dot(vs[static_cast<size_t>(j)]);
    double det = std::abs(gram.determinant());
    auto w = wedge(vs);
    EXPECT_NEAR(w.norm, std::sqrt(det), 1e-10);
  }
}

TEST(Wedge, RejectsTooManyVectors) {
  EXPECT_THROW(wedge({basis_vec(2, 0), basis_vec(2, 1), basis_vec(2, 0)}),
               std::invalid_argument);
}

TEST(AntisymProjector, TraceAndIdempotence) {
  for (auto [d, n, tr] : {std::tuple{2, 2, 1.0}, {3, 2, 3.0}, {4, 3, 4.0}}) {
    auto p = antisym_projector(d, n);
    EXPECT_NEAR(p.matrix.trace().real(), tr, 1e-8);
    EXPECT_LT((p.matrix * p.matrix - p.matrix).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(AntisymProjector, SingletCase) {
  auto p = antisym_projector(2, 2);
  auto singlet = wedge({basis_vec(2, 0), basis_vec(2, 1)});
  Mat expect = singlet.vector * singlet.vector.adjoint();
  EXPECT_LT((p.matrix - expect).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(AntisymProjector, CommutesWithLocalUnitaryPowers) {
  Rng rng(123);
  auto p = antisym_projector(3, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Mat u = rng.haar_unitary(3);
    Mat uu = Mat::Zero(9, 9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) uu.block(i * 3, j * 3, 3, 3) = u(i, j) * u;
    EXPECT_LT((uu * p.matrix - p.matrix * uu).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(SlaterRank, DeterminantStatesPass) {
  auto psi3 = wedge_state({basis_vec(3, 0), basis_vec(3, 1), basis_vec(3, 2)});
  EXPECT_TRUE(slater_rank_check(psi3));

  Rng rng(9);
  Mat u = rng.haar_unitary(5);
  auto psi = wedge_state({u.col(0), u.col(1)});
  EXPECT_TRUE(slater_rank_check(psi));
}

TEST(SlaterRank, SuperpositionFails) {
  // wedge(|0>,|1>) + wedge(|2>,|3>) in d=4 has one-particle rank 4 > 2.
  auto w1 = wedge({basis_vec(4, 0), basis_vec(4, 1)});
  auto w2 = wedge({basis_vec(4, 2), basis_vec(4, 3)});
  Vec v = (w1.vector + w2.vector) / std::sqrt(2.0);
  StateTags t;
  t.antisymmetric = true;
  auto s = QuantumState::pure(v, PartyLayout::qudits(2, 4), t);
  ASSERT_TRUE(is_antisymmetric_state(s));
  EXPECT_FALSE(slater_rank_check(s));
}

TEST(SlaterRank, RequiresAntisymmetricTag) {
  auto g = ghz3();
  EXPECT_THROW(slater_rank_check(g), std::invalid_argument);
}

TEST(Entropy, PureAndUniform) {
  EXPECT_NEAR(entropy(ghz3()), 0.0, 1e-12);

  auto p = antisym_projector(3, 2);
  auto s = QuantumState::mixed(p.matrix / 3.0, PartyLayout::qudits(2, 3));
  EXPECT_NEAR(entropy(s), std::log2(3.0), 1e-10);
}

TEST(QuantumStateValidation, CatchesBadInputs) {
  Vec v = Vec::Zero(4);
  v(0) = 2.0;  // not normalized
  EXPECT_THROW(QuantumState::pure(v, PartyLayout::qubits(2)), std::invalid_argument);

  Mat m = Mat::Identity(4, 4);  // trace 4
  EXPECT_THROW(QuantumState::mixed(m, PartyLayout::qubits(2)), std::invalid_argument);

  Mat neg = Mat::Zero(4, 4);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(QuantumState::mixed(neg, PartyLayout::qubits(2)), std::invalid_argument);
}

TEST(TensorMerge, DimensionCap) {
  auto big = QuantumState::basis_state(PartyLayout::qudits(1, 200), 0);
  EXPECT_THROW(tensor_merge(big, big, 16384), DimensionError);
}
