#include "gapk/error.hpp"
#include "gapk/models.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace gapk;

TEST(Circle, DiracIsDiagonalFourier) {
  const SpectralTriple t = circle_dirac(1);
  CMatrix expect = CMatrix::Zero(3, 3);
  expect(0, 0) = -1.0;
  expect(2, 2) = 1.0;
  EXPECT_EQ(t.dirac(), expect);
  EXPECT_EQ(circle_dirac(3).dirac().rows(), 7);
  EXPECT_THROW(circle_dirac(0), Error);
}

TEST(Circle, ToeplitzPattern) {
  const int N = 3;
  for (int m = -6; m <= 6; ++m) {
    const CMatrix x = circle_unitary_truncation(m, N).matrix();
    for (int j = -N; j <= N; ++j)
      for (int k = -N; k <= N; ++k)
        EXPECT_EQ(x(j + N, k + N), k == j + m ? Complex(1.0) : Complex(0.0));
  }
  EXPECT_THROW(circle_unitary_truncation(7, 3), Error);
}

TEST(Circle, AdjointAndCommutator) {
  for (int m = 1; m <= 3; ++m) {
    const CMatrix a = circle_unitary_truncation(m, 4).matrix();
    const CMatrix b = circle_unitary_truncation(-m, 4).matrix();
    EXPECT_EQ(a.adjoint(), b);
    EXPECT_NEAR(commutator_norm(circle_dirac(4), circle_unitary_truncation(m, 4)),
                static_cast<double>(m), 1e-12);
  }
}

TEST(Circle, SigmaForWindingOne) {
  const auto x = circle_unitary_truncation(1, 3);
  std::vector<double> expected(2, 0.0);
  expected.insert(expected.end(), 6, 1.0);
  expected.insert(expected.end(), 6, -1.0);
  EXPECT_TRUE(oracle::multiset_close(sigma_spectrum(x), expected, 1e-12));
  EXPECT_NEAR(max_delta(x), 1.0, 1e-12);
}

TEST(Shift, UpperShiftPattern) {
  const CMatrix j = bilateral_shift_truncation(3).matrix();
  CMatrix expect = CMatrix::Zero(3, 3);
  expect(0, 1) = expect(1, 2) = 1.0;
  EXPECT_EQ(j, expect);
  EXPECT_THROW(bilateral_shift_truncation(1), Error);
}

TEST(RandomGapped, Contract) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const bool sa = seed % 2 == 1;
    const double delta = 0.2 + 0.03 * static_cast<double>(seed);
    const OperatorElement x = random_gapped(3, 2, delta, sa, seed);
    EXPECT_TRUE(delta_singular_check(x, delta).verdict);
    EXPECT_EQ(x.matrix(), random_gapped(3, 2, delta, sa, seed).matrix());
    if (sa) EXPECT_LT(oracle::max_abs(x.matrix() - x.matrix().adjoint()), 1e-14);
    for (double sv : oracle::singular_values(x.matrix())) EXPECT_GE(sv, delta - 1e-12);
  }
  EXPECT_THROW(random_gapped(2, 1, 1.0, false, 0), Error);
  EXPECT_THROW(random_gapped(2, 1, 0.0, false, 0), Error);
}

TEST(Winding, FigureCases) {
  const WindingDemo a = winding_demo(1, 3, 1.0, 0.0);
  EXPECT_EQ(a.report.signature, 2);
  EXPECT_EQ(a.report.index, 1);
  EXPECT_EQ(winding_demo(2, 3, 0.1, 0.0).report.index, 2);
}

TEST(Winding, SweepAndNegation) {
  for (int m = 1; m <= 3; ++m) {
    EXPECT_EQ(winding_demo(m, 8).report.index, m);
    EXPECT_EQ(winding_demo(-m, 8).report.index, -m);
  }
}

TEST(Winding, StableInN) {
  for (int N = 4; N <= 10; ++N) {
    EXPECT_EQ(winding_demo(2, N).report.index, 2) << N;
  }
}
