#include <gtest/gtest.h>

#include "mpsgs/errors.hpp"
#include "mpsgs/pauli_space.hpp"
#include "oracles.hpp"

namespace {

using namespace mpsgs;
using pauli::sigma;
using pauli::tau0;
using pauli::tau1;
using pauli::tau2;

constexpr double kTight = 1e-12;

void expect_quartet_near(const PauliQuartet& a, const PauliQuartet& b, double tol) {
  EXPECT_LE((a.coeffs() - b.coeffs()).norm(), tol) << "a=" << a.coeffs().transpose() << " b=" << b.coeffs().transpose();
}

PauliQuartet random_quartet(oracle::Rng& rng) {
  return {rng.complex_normal(), rng.complex_normal(), rng.complex_normal(), rng.complex_normal()};
}

TEST(QuartetFromMatrix, BasisElements) {
  EXPECT_EQ(quartet_from_matrix(to_matrix(sigma)), sigma);
  Matrix2 d;
  d << 2.0, 0.0, 0.0, 0.0;
  EXPECT_EQ(quartet_from_matrix(d), (PauliQuartet{1.0, 1.0, 0.0, 0.0}));
}

TEST(QuartetFromMatrix, MatchesLinearSolve) {
  Matrix2 c;
  c << 1.0, 2.0, 3.0, 4.0;
  const PauliQuartet q = quartet_from_matrix(c);
  expect_quartet_near(q, PauliQuartet{2.5, -1.5, 2.5, -0.5}, kTight);
  EXPECT_LE((q.coeffs() - oracle::quartet_coordinates(c)).norm(), kTight);

  oracle::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Matrix2 m = rng.complex_matrix(2, 2);
    EXPECT_LE((quartet_from_matrix(m).coeffs() - oracle::quartet_coordinates(m)).norm(), kTight);
  }
}

TEST(QuartetFromMatrix, RoundTripsThroughMatrix) {
  oracle::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const PauliQuartet q = random_quartet(rng);
    expect_quartet_near(quartet_from_matrix(to_matrix(q)), q, kTight);
  }
}

TEST(Permute, NegatesAntisymmetricPart) {
  EXPECT_EQ(permute(sigma), (PauliQuartet{0.0, 0.0, 0.0, -1.0}));
  EXPECT_EQ(permute(tau0), tau0);
  oracle::Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const PauliQuartet q = random_quartet(rng);
    // Oracle: transpose the recomposed matrix.
    expect_quartet_near(permute(q), quartet_from_matrix(to_matrix(q).transpose()), kTight);
    EXPECT_EQ(permute(permute(q)), q);
  }
}

TEST(Project, SplitsIntoParityParts) {
  const PauliQuartet q{1.0, 2.0, 3.0, 4.0};
  EXPECT_EQ(project(q, Parity::Symmetric), (PauliQuartet{1.0, 2.0, 3.0, 0.0}));
  EXPECT_EQ(project(q, Parity::Antisymmetric), (PauliQuartet{0.0, 0.0, 0.0, 4.0}));
  oracle::Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    const PauliQuartet r = random_quartet(rng);
    EXPECT_EQ(project(r, Parity::Symmetric) + project(r, Parity::Antisymmetric), r);
    EXPECT_EQ(project(project(r, Parity::Symmetric), Parity::Symmetric), project(r, Parity::Symmetric));
  }
}

TEST(Minkowski, Signature) {
  EXPECT_EQ(minkowski(tau0, tau0), Complex(-1.0));
  EXPECT_EQ(minkowski(tau2, tau2), Complex(1.0));
  EXPECT_EQ(minkowski(tau0 + tau1, tau0 + tau1), Complex(0.0));
  EXPECT_EQ(minkowski(sigma, sigma), Complex(0.0));
}

TEST(TraceForm, ClosedFormMatchesMatrixTrace) {
  // sigma sigma^{-1} sigma sigma^{-1} = id, so the trace is +2.
  EXPECT_NEAR(std::abs(trace_form(sigma, sigma) - Complex(2.0)), 0.0, kTight);
  EXPECT_NEAR(std::abs(trace_form(tau2, tau2) - Complex(2.0)), 0.0, kTight);
  oracle::Rng rng(15);
  for (int i = 0; i < 500; ++i) {
    const PauliQuartet a = random_quartet(rng), b = random_quartet(rng);
    EXPECT_LE(std::abs(trace_form(a, b) - trace_form_direct(a, b)), kTight * (1.0 + a.norm() * b.norm()));
  }
}

TEST(SL2, RejectsNonUnitDeterminant) {
  Matrix2 m;
  m << 2.0, 0.0, 0.0, 1.0;
  EXPECT_THROW(SL2{m}, ValidationError);
  EXPECT_NO_THROW(SL2::normalized(m));
  EXPECT_NEAR(std::abs(SL2::normalized(m).matrix().determinant() - 1.0), 0.0, kTight);
  Matrix2 singular;
  singular << 1.0, 2.0, 2.0, 4.0;
  EXPECT_THROW(SL2::normalized(singular), ValidationError);
  Matrix2 nan = Matrix2::Identity();
  nan(0, 1) = std::nan("");
  EXPECT_THROW(SL2{nan}, ValidationError);
}

TEST(SL2, InverseAndComposition) {
  oracle::Rng rng(16);
  for (int i = 0; i < 100; ++i) {
    const SL2 a(rng.sl2(20.0), 1e-10), b(rng.sl2(20.0), 1e-10);
    EXPECT_LE((a.matrix() * a.inverse().matrix() - Matrix2::Identity()).norm(), 1e-10);
    const PauliQuartet q = random_quartet(rng);
    // (a * b) acts as a first, then b.
    expect_quartet_near(sl2_act(a * b, q), sl2_act(b, sl2_act(a, q)), 1e-9 * (1.0 + q.norm()) * 400.0);
  }
}

TEST(SL2Act, KnownImages) {
  oracle::Rng rng(17);
  expect_quartet_near(sl2_act(SL2::identity(), tau1), tau1, 0.0);
  Matrix2 g;
  g << 1.0, 1.0, -1.0, 1.0;
  expect_quartet_near(sl2_act(SL2(g / std::sqrt(2.0), 1e-12), tau1), tau2, kTight);
  for (int i = 0; i < 100; ++i) {
    expect_quartet_near(sl2_act(SL2(rng.sl2(20.0), 1e-10), sigma), sigma, 1e-10);
  }
}

// Property suite: sigma is fixed, the u component is preserved, and both
// bilinear forms are invariant under the simultaneous action.
TEST(SL2Act, InvarianceProperties) {
  oracle::Rng rng(18);
  for (int i = 0; i < 2000; ++i) {
    const SL2 g(rng.sl2(20.0), 1e-10);
    const PauliQuartet a = random_quartet(rng), b = random_quartet(rng);
    const PauliQuartet ga = sl2_act(g, a), gb = sl2_act(g, b);
    const double scale = 1.0 + a.norm() * b.norm();
    EXPECT_LE(std::abs(ga.u - a.u), 1e-10 * (1.0 + a.norm()));
    EXPECT_LE(std::abs(trace_form(ga, gb) - trace_form(a, b)), 1e-10 * scale * 20.0);
    EXPECT_LE(std::abs(minkowski(ga, gb) - minkowski(a, b)), 1e-10 * scale * 20.0);
    expect_quartet_near(permute(ga), sl2_act(g, permute(a)), 1e-10 * (1.0 + a.norm()) * 20.0);
  }
}

TEST(CSpace, RejectsDependentAndNonFinite) {
  EXPECT_THROW(CSpace({tau0, 2.0 * tau0}), ValidationError);
  EXPECT_THROW(CSpace({PauliQuartet{}}), ValidationError);
  EXPECT_THROW(CSpace({tau0, tau1, tau2, sigma, tau0}), ValidationError);
  EXPECT_THROW(CSpace({PauliQuartet{std::nan(""), 0.0, 0.0, 0.0}}), ValidationError);
  EXPECT_EQ(CSpace().dim(), 0);
}

TEST(CSpace, AmbiguousRankIsRejected) {
  // Second vector differs from the first by 3e-10, inside [rank_tol, 10 rank_tol).
  const PauliQuartet a = tau0;
  const PauliQuartet b = tau0 + 3e-10 * tau1;
  EXPECT_THROW(CSpace({a, b}), DegenerateInputError);
  EXPECT_THROW(CSpace({a, tau0 + 1e-12 * tau1}), ValidationError);
  EXPECT_NO_THROW(CSpace({a, tau0 + 1e-8 * tau1}));
}

TEST(CSpace, CanonicalBasisIsSpanInvariant) {
  const CSpace a({tau0, tau1});
  const CSpace b({tau0 + tau1, tau0 - tau1});
  ASSERT_EQ(a.dim(), b.dim());
  for (int i = 0; i < a.dim(); ++i) expect_quartet_near(a.basis()[i], b.basis()[i], kTight);
}

TEST(SpanEqual, Examples) {
  EXPECT_TRUE(span_equal(CSpace({tau2}), CSpace({2.0 * tau2})));
  EXPECT_FALSE(span_equal(CSpace({tau2}), CSpace({sigma})));
  EXPECT_TRUE(span_equal(CSpace({tau0, tau1}), CSpace({tau0 + tau1, tau0 - tau1})));
  EXPECT_FALSE(span_equal(CSpace({tau0, tau1}), CSpace({tau0})));
  EXPECT_NEAR(CSpace({tau0}).distance(tau0 + tau1), 1.0, kTight);
}

TEST(SL2ActSpace, RoundTripAndSigma) {
  oracle::Rng rng(19);
  for (int i = 0; i < 100; ++i) {
    const SL2 g(rng.sl2(20.0), 1e-10);
    const CSpace v({random_quartet(rng), random_quartet(rng)});
    EXPECT_TRUE(span_equal(sl2_act_space(g.inverse(), sl2_act_space(g, v)), v, 1e-8));
    EXPECT_TRUE(span_equal(sl2_act_space(g, CSpace({sigma})), CSpace({sigma}), 1e-10));
  }
}

TEST(NumericalRank, Bands) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(3, 3);
  EXPECT_EQ(numerical_rank(m, 1e-10), 3);
  m(2, 2) = 1e-13;
  EXPECT_EQ(numerical_rank(m, 1e-10), 2);
  m(2, 2) = 5e-10;
  EXPECT_THROW(numerical_rank(m, 1e-10), DegenerateInputError);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXcd::Zero(2, 2), 1e-10), 0);
}

}  // namespace
