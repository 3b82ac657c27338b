#include <gtest/gtest.h>

#include "mpsgs/errors.hpp"
#include "mpsgs/verifier.hpp"
#include "oracles.hpp"
#include "sampling.hpp"

namespace {

using namespace mpsgs;

FamilyParams f105(Complex nu, Complex nu_prime) {
  FamilyParams p;
  p.family = Family::F105;
  p.g = 1.0;
  p.nu = nu;
  p.nu_prime = nu_prime;
  return p;
}

FamilyParams f107() {
  FamilyParams p;
  p.family = Family::F107;
  p.g = 1.0;
  return p;
}

FamilyParams f112(Complex nu, Complex nu_prime) {
  FamilyParams p;
  p.family = Family::F112;
  p.g1 = 1.0;
  p.g2 = 0.7;
  p.g3 = Complex(0.3, 0.2);
  p.nu = nu;
  p.nu_prime = nu_prime;
  return p;
}

const ClaimCheck& claim(const VerifyReport& r, const std::string& label) {
  for (const auto& c : r.claims) {
    if (c.label == label) return c;
  }
  throw std::runtime_error("missing claim " + label);
}

TEST(Spectrum, ZeroHamiltonian) {
  const LocalHamiltonian h(LocalMatrix::Zero(), "zero");
  const SpectrumReport r = spectrum(full_chain(h, 2));
  EXPECT_EQ(r.kernel_dim, 4);
  EXPECT_EQ(r.ground_energy, 0.0);
  EXPECT_EQ(r.lowest.size(), 4u);
  EXPECT_FALSE(r.warning.has_value());
}

TEST(Spectrum, F107KernelIsFibonacci) {
  for (int n = 2; n <= 8; ++n) {
    const SpectrumReport r = spectrum(full_chain(build_family(f107()), n));
    EXPECT_EQ(r.kernel_dim, oracle::fibonacci(n + 2)) << n;
    EXPECT_TRUE(std::is_sorted(r.lowest.begin(), r.lowest.end()));
  }
}

TEST(Spectrum, F105KernelHoldsAllCataloguedStates) {
  const FamilyParams p = f105(1.0, -1.0);
  const VerifyReport r = verify_family(p, 4);
  EXPECT_GE(r.spectrum.kernel_dim, 4);
  EXPECT_TRUE(r.all_pass());
  EXPECT_TRUE(r.kernel_covers_states());
  // psi_k[0] is psi1 and psi_k[2] is psi0, leaving three independent states.
  EXPECT_EQ(r.independent_states, 3);
}

TEST(Spectrum, LowestIsTruncated) {
  SpectrumOptions opts;
  opts.k = 3;
  const SpectrumReport r = spectrum(full_chain(build_family(f107()), 5), opts);
  EXPECT_EQ(r.lowest.size(), 3u);
}

TEST(CheckZeroMember, KernelVectorsAndDimensionMismatch) {
  const FullHamiltonian h = full_chain(build_family(f107()), 4);
  EXPECT_LE(check_zero_member(h, product_state(1, 4)), 1e-12);
  EXPECT_GT(check_zero_member(h, product_state(0, 4)), 0.1);
  EXPECT_THROW(check_zero_member(h, product_state(1, 3)), ValidationError);
  EXPECT_THROW(check_zero_member(h, StateVector(4, Eigen::VectorXcd::Zero(16))), ValidationError);

  // Any eigenvector from a dense solve of the kernel.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix());
  const StateVector v(4, es.eigenvectors().col(0));
  EXPECT_LE(check_zero_member(h, v), 1e-12);
}

TEST(CheckZeroMember, F108AndF109Claims) {
  FamilyParams p108;
  p108.family = Family::F108;
  p108.g = 1.3;
  EXPECT_LE(check_zero_member(full_chain(build_family(p108), 6), product_state(1, 6)), 1e-10);

  FamilyParams p109;
  p109.family = Family::F109;
  p109.g1 = 1.0;
  p109.g2 = 2.0;
  p109.g3 = Complex(0.5, 0.5);
  const FullHamiltonian h = full_chain(build_family(p109), 8);
  EXPECT_LE(check_zero_member(h, product_state(0, 8)), 1e-10);
  EXPECT_LE(check_zero_member(h, product_state(1, 8)), 1e-10);
}

TEST(Covariance, IdentityUnitaryAndGeneral) {
  oracle::Rng rng(51);
  const FamilyParams p = f105(1.0, -1.0);
  const LocalHamiltonian h = build_family(p);
  const StateVector psi = psi_k(6, 2, 1, -1.0);
  const double base = check_zero_member(full_chain(h, 6), psi);
  EXPECT_NEAR(covariance_check(h, psi, SL2::identity(), 6), base, 1e-15);
  for (int i = 0; i < 5; ++i) {
    EXPECT_LE(covariance_check(h, psi, SL2::normalized(rng.unitary(2)), 6), 1e-9);
    EXPECT_LE(covariance_check(h, psi, SL2(rng.sl2(10.0), 1e-10), 6), 1e-8);
  }
}

TEST(NoMpsCaseReport, Emitted) {
  const SpectrumReport a = no_mps_case_report(CanonicalForm(CaseId::C62), 4);
  EXPECT_EQ(a.n_sites, 4);
  EXPECT_FALSE(a.lowest.empty());
  EXPECT_NO_THROW(no_mps_case_report(CanonicalForm(CaseId::C56), 4));
  EXPECT_NO_THROW(no_mps_case_report(CanonicalForm(CaseId::C61), 4));
  EXPECT_NO_THROW(no_mps_case_report(CanonicalForm(CaseId::C60, Complex(0.0)), 6));
  EXPECT_THROW(no_mps_case_report(CanonicalForm(CaseId::C49), 4), ValidationError);
  EXPECT_THROW(no_mps_case_report(CanonicalForm(CaseId::C62), 11), ValidationError);
}

TEST(CataloguedStates, Labels) {
  const auto f105_states = catalogued_states(f105(1.0, -1.0), 4);
  std::vector<std::string> labels;
  for (const auto& s : f105_states) labels.push_back(s.label);
  EXPECT_NE(std::find(labels.begin(), labels.end(), "psi_k[1]"), labels.end());
  EXPECT_NE(std::find(labels.begin(), labels.end(), "psi0"), labels.end());

  // No root of unity at this ratio: only the product states.
  EXPECT_EQ(catalogued_states(f105(1.0, 0.5), 4).size(), 2u);
  EXPECT_EQ(catalogued_states(f107(), 5).size(), static_cast<std::size_t>(oracle::fibonacci(7)));
}

TEST(VerifyFamily, F107AtFiveSites) {
  const VerifyReport r = verify_family(f107(), 5);
  EXPECT_EQ(r.spectrum.kernel_dim, 13);
  EXPECT_EQ(r.independent_states, 13);
  EXPECT_TRUE(r.all_pass());
}

TEST(VerifyFamily, F117AndF116ProductStates) {
  oracle::Rng rng(52);
  for (Family f : {Family::F108, Family::F116, Family::F117}) {
    const VerifyReport r = verify_family(sampling::random_params(f, rng), 6);
    EXPECT_TRUE(r.all_pass()) << to_string(f);
  }
}

// With the E^1 = e^0e^0 + e^1e^1 term present the product states are not
// annihilated; these tests pin the residual away from zero so a change in
// behaviour is noticed.
TEST(VerifyFamily, F112ProductStatesAreNotZeroEnergy) {
  const VerifyReport r = verify_family(f112(1.0, -1.0), 6);
  EXPECT_FALSE(claim(r, "psi0").pass);
  EXPECT_FALSE(claim(r, "psi1").pass);
  EXPECT_GT(*claim(r, "psi1").residual, 1e-3);
  EXPECT_TRUE(claim(r, "psi_prime").pass);
  EXPECT_FALSE(r.all_pass());
}

TEST(VerifyFamily, F112ParityStates) {
  const VerifyReport literal = verify_family(f112(1.0, 1.0), 5);
  EXPECT_TRUE(claim(literal, "psi_even").pass);
  // The odd sum without its single-zero term is not in the kernel.
  EXPECT_FALSE(claim(literal, "psi_odd").pass);

  CatalogOptions from_zero;
  from_zero.odd_from_zero = true;
  const VerifyReport full = verify_family(f112(1.0, 1.0), 5, 1e-9, {}, from_zero);
  EXPECT_TRUE(claim(full, "psi_odd").pass);
  EXPECT_TRUE(claim(full, "psi_even").pass);
}

TEST(VerifyFamily, ZeroVectorClaimHasNoResidual) {
  const VerifyReport r = verify_family(f112(1.0, 1.0), 2);
  const ClaimCheck& odd = claim(r, "psi_odd");
  EXPECT_FALSE(odd.residual.has_value());
  EXPECT_FALSE(odd.pass);
}

TEST(StateRank, Examples) {
  std::vector<StateVector> states = {product_state(0, 3), product_state(1, 3), product_state(0, 3)};
  EXPECT_EQ(state_rank(states), 2);
  EXPECT_EQ(state_rank({}), 0);
}

}  // namespace
