#include "gapk/error.hpp"
#include "gapk/localizer.hpp"
#include "gapk/models.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gapk;

namespace {

CMatrix random_diagonal(Index d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  CMatrix m = CMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) m(i, i) = u(rng);
  return m;
}

// [D, x] with D amplified by hand.
double commutator_oracle(const CMatrix& d, const CMatrix& x, Index n) {
  const CMatrix big = oracle::kron(CMatrix::Identity(n, n), d);
  return oracle::norm2(big * x - x * big);
}

}  // namespace

TEST(Triple, OddAndEvenShapes) {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -2.0;
  const SpectralTriple odd = SpectralTriple::odd(d);
  EXPECT_EQ(odd.dirac(), d);
  EXPECT_EQ(odd.grading().size(), 0);
  const SpectralTriple even = SpectralTriple::even(d);
  EXPECT_EQ(even.dirac().rows(), 4);
  EXPECT_EQ(even.dirac().topRightCorner(2, 2), d);
  const CMatrix g = even.grading();
  EXPECT_LT(oracle::max_abs(g * even.dirac() + even.dirac() * g), 1e-15);
  EXPECT_EQ(odd.amplified_d0(3), oracle::kron(CMatrix::Identity(3, 3), d));
  CMatrix nsa = d;
  nsa(0, 1) = 1.0;
  EXPECT_THROW(SpectralTriple::odd(nsa), Error);
}

TEST(Commutator, MatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const Index d = 2 + t % 3;
    const Index n = 1 + t % 2;
    const CMatrix dm = random_diagonal(d, rng);
    const CMatrix x = oracle::random_matrix(d * n, rng);
    const SpectralTriple triple = SpectralTriple::odd(dm);
    EXPECT_NEAR(commutator_norm(triple, OperatorElement(x, d, n, false)),
                commutator_oracle(dm, x, n), 1e-10);
  }
}

TEST(Commutator, EvenUsesFullDirac) {
  std::mt19937_64 rng(6);
  const CMatrix d0 = oracle::random_matrix(3, rng);
  CMatrix x = oracle::random_matrix(3, rng);
  x = CMatrix((x + x.adjoint()) * 0.5);
  const SpectralTriple triple = SpectralTriple::even(d0);
  CMatrix xx = CMatrix::Zero(6, 6);
  xx.topLeftCorner(3, 3) = x;
  xx.bottomRightCorner(3, 3) = x;
  const CMatrix D = triple.dirac();
  EXPECT_NEAR(commutator_norm(triple, OperatorElement(x, 3, 1, true)),
              oracle::norm2(D * xx - xx * D), 1e-10);
}

TEST(Localizer, UnitSpectrumClosedForm) {
  std::mt19937_64 rng(8);
  const CMatrix d = random_diagonal(4, rng);
  const SpectralTriple triple = SpectralTriple::odd(d);
  const OperatorElement e = OperatorElement::unit(4);
  for (double kappa : {0.1, 0.5, 1.0}) {
    for (double s : {0.2, 0.5, 0.8}) {
      std::vector<double> expected;
      for (Index i = 0; i < 4; ++i) {
        const double l = d(i, i).real();
        for (double sign : {1.0, -1.0}) {
          const double r = std::sqrt(std::pow(1 + sign * s, 2) + kappa * kappa * l * l);
          expected.push_back(r);
          expected.push_back(-r);
        }
      }
      const CMatrix L = build_generalized(triple, e, kappa, s);
      EXPECT_TRUE(oracle::multiset_close(oracle::hermitian_eigs(L), expected, 1e-10));
      EXPECT_EQ(inertia_signature(L).signature, 0);
    }
  }
}

TEST(Localizer, BlockLayouts) {
  std::mt19937_64 rng(10);
  const CMatrix d = random_diagonal(2, rng);
  const CMatrix x = oracle::random_matrix(2, rng);
  const SpectralTriple triple = SpectralTriple::odd(d);
  const OperatorElement xe(x, 2, 1, false);
  const CMatrix L = build_generalized(triple, xe, 0.3, 0.4);
  EXPECT_EQ(L.block(0, 2, 2, 2), x);
  EXPECT_EQ(L.block(0, 4, 2, 2), CMatrix(0.3 * d));
  EXPECT_EQ(L.block(6, 4, 2, 2), CMatrix(-x.adjoint()));
  EXPECT_LT(oracle::max_abs(L - L.adjoint()), 1e-15);
  const CMatrix R = build_reduced(triple, xe, 0.3);
  EXPECT_EQ(R.block(0, 0, 2, 2), CMatrix(0.3 * d));
  EXPECT_EQ(R.block(0, 2, 2, 2), x);
  EXPECT_EQ(R.block(2, 2, 2, 2), CMatrix(-0.3 * d));
  EXPECT_THROW(build_reduced(triple, xe, -1.0), Error);
}

// The printed generalized localizer anticommutes with a fixed symmetry,
// so its spectrum is symmetric and the signature vanishes.
TEST(Localizer, GeneralizedSpectrumIsSymmetric) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 5; ++t) {
    const CMatrix d = random_diagonal(3, rng);
    const CMatrix x = oracle::random_matrix(3, rng);
    const CMatrix L = build_generalized(SpectralTriple::odd(d), OperatorElement(x, 3, 1, false), 0.7, 0.2);
    CMatrix sy = CMatrix::Zero(2, 2);
    sy(0, 1) = Complex(0, -1);
    sy(1, 0) = Complex(0, 1);
    const CMatrix S = oracle::kron(sy, CMatrix::Identity(6, 6));
    EXPECT_LT(oracle::max_abs(S * L + L * S), 1e-12);
  }
}

TEST(Region, KappaBoundAndStar) {
  const SpectralTriple triple = circle_dirac(3);
  const OperatorElement x = circle_unitary_truncation(1, 3);
  const ValidRegion r = valid_region(triple, x, 0.5);
  EXPECT_NEAR(r.commutator_norm, 1.0, 1e-12);
  EXPECT_FALSE(r.unbounded);
  EXPECT_DOUBLE_EQ(r.s_star, 0.25);
  EXPECT_NEAR(r.kappa_max(0.25), 0.0625, 1e-15);
  EXPECT_NEAR(r.kappa_star, 0.03125, 1e-15);
  EXPECT_EQ(r.g(0.6), 0.0);
  EXPECT_THROW(valid_region(triple, x, 1.5), Error);
  EXPECT_THROW(valid_region(triple, x, 0.0), Error);
  const ValidRegion unit = valid_region(triple, OperatorElement::unit(7), 0.5);
  EXPECT_TRUE(unit.unbounded);
  EXPECT_TRUE(std::isinf(unit.kappa_max(0.2)));
}

TEST(Region, GapBoundHoldsForRandomElements) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    const Index d = 2 + seed % 4;
    const CMatrix dm = random_diagonal(d, rng);
    const OperatorElement x = random_gapped(d, 1 + seed % 2, 0.4, false, seed);
    const SpectralTriple triple = SpectralTriple::odd(dm);
    const ValidRegion r = valid_region(triple, x, 0.4);
    for (auto [kappa, s] : index_points(r)) {
      const GapBoundCheck c = gap_bound_check(triple, x, kappa, s, 0.4);
      EXPECT_TRUE(c.holds) << "margin " << c.margin;
      // min eig of L^2 recomputed from the oracle spectrum
      double m = 1e300;
      for (double v : oracle::hermitian_eigs(build_generalized(triple, x, kappa, s)))
        m = std::min(m, v * v);
      EXPECT_NEAR(c.min_eig_sq, m, 1e-9);
    }
  }
}

TEST(Index, CircleFigureValues) {
  const SpectralTriple triple = circle_dirac(3);
  const OperatorElement x1 = circle_unitary_truncation(1, 3);
  const LocalizerReport r1 = localizer_index(triple, x1, 0.5, {}, 1.0);
  EXPECT_EQ(r1.signature, 2);
  EXPECT_EQ(r1.index, 1);
  EXPECT_EQ(oracle::signature(oracle::hermitian_eigs(build_reduced(triple, x1, 1.0)), 1e-9), 2);
  const LocalizerReport r2 =
      localizer_index(triple, circle_unitary_truncation(2, 3), 0.5, {}, 0.1);
  EXPECT_EQ(r2.index, 2);
}

TEST(Index, RegionPointsAgree) {
  const SpectralTriple triple = circle_dirac(6);
  const OperatorElement x = circle_unitary_truncation(-2, 6);
  const LocalizerReport r = localizer_index(triple, x, 0.5);
  ASSERT_EQ(r.samples.size(), 5u);
  for (const auto& s : r.samples) {
    EXPECT_TRUE(s.invertible);
    EXPECT_EQ(s.signature, r.signature);
  }
  EXPECT_EQ(r.index, -2);
}

TEST(Index, UnitHasIndexZero) {
  const SpectralTriple triple = circle_dirac(2);
  EXPECT_EQ(localizer_index(triple, OperatorElement::unit(5, 2), 0.5).index, 0);
}

TEST(Index, ErrorsPropagate) {
  const SpectralTriple triple = circle_dirac(3);
  // x = 0 is gapped but the localizer kappa D is singular (0 in sigma(D)).
  const OperatorElement zero(CMatrix::Zero(7, 7), 7, 1, true);
  try {
    localizer_index(triple, zero, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularLocalizer);
  }
  EXPECT_THROW(localizer_index(triple, OperatorElement::unit(3), 0.5), Error);
}

TEST(Index, EvenTripleOnProjections) {
  // D0 = diag(1, -1), x = 2p - 1 for a rank-one projection.
  CMatrix d0 = CMatrix::Zero(2, 2);
  d0(0, 0) = 1.0;
  d0(1, 1) = -1.0;
  const SpectralTriple triple = SpectralTriple::even(d0);
  CMatrix x = -CMatrix::Identity(2, 2);
  x(0, 0) = 1.0;
  const OperatorElement xe(x, 2, 1, true);
  const LocalizerReport r = localizer_index(triple, xe, 0.5);
  const auto eigs = oracle::hermitian_eigs(build_reduced(triple, xe, r.kappa));
  EXPECT_EQ(r.signature, oracle::signature(eigs, 1e-9));
  EXPECT_EQ(r.index * 2, r.signature);
  CMatrix nsa = CMatrix::Zero(2, 2);
  nsa(0, 1) = 1.0;
  EXPECT_THROW(build_reduced(triple, OperatorElement(nsa, 2, 1, false), 1.0), Error);
}
