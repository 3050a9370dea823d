#include "gapk/error.hpp"
#include "gapk/kernels.hpp"
#include "gapk/models.hpp"

#include <gtest/gtest.h>

#include <limits>

using namespace gapk;

TEST(Kernels, BorderedGapsMatchSerial) {
  const OperatorElement x = random_gapped(4, 2, 0.4, false, 3);
  const auto s = open_grid(0.4, 17);
  EXPECT_EQ(kernels::serial::bordered_gaps(x, s, {}), kernels::omp::bordered_gaps(x, s, {}));
}

TEST(Kernels, LocalizerSweepMatchesSerial) {
  const SpectralTriple triple = circle_dirac(5);
  const OperatorElement x = circle_unitary_truncation(2, 5);
  std::vector<std::pair<double, double>> pts;
  for (int i = 1; i <= 4; ++i)
    for (int j = 0; j <= 3; ++j) pts.emplace_back(0.01 * i, 0.1 * j);
  const auto a = kernels::serial::localizer_sweep(triple, x, pts, {});
  const auto b = kernels::omp::localizer_sweep(triple, x, pts, {});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].kappa, b[k].kappa);
    EXPECT_EQ(a[k].s, b[k].s);
    EXPECT_EQ(a[k].signature, b[k].signature);
    EXPECT_EQ(a[k].min_abs_eig, b[k].min_abs_eig);
    EXPECT_EQ(a[k].generalized_signature, b[k].generalized_signature);
    EXPECT_EQ(a[k].generalized_min_abs_eig, b[k].generalized_min_abs_eig);
  }
}

TEST(Kernels, PathTraceMatchesSerial) {
  std::vector<OperatorElement> samples;
  for (std::uint64_t k = 0; k < 12; ++k) samples.push_back(random_gapped(3, 1, 0.3, k % 2 == 0, k));
  for (GapMode mode : {GapMode::spectrum, GapMode::grid}) {
    const auto a = kernels::serial::path_trace(samples, 0.3, mode, {});
    const auto b = kernels::omp::path_trace(samples, 0.3, mode, {});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(a[k].verdict, b[k].verdict);
      EXPECT_EQ(a[k].marginal, b[k].marginal);
      EXPECT_EQ(a[k].delta_max, b[k].delta_max);
      EXPECT_EQ(a[k].mid_gap, b[k].mid_gap);
    }
  }
}

TEST(Kernels, ContractionMatchesSerial) {
  const CMatrix a = random_unitary(6, 9);
  std::vector<double> t;
  for (int k = 0; k <= 20; ++k) t.push_back(k / 20.0);
  EXPECT_EQ(kernels::serial::contraction_min_singular(a, Complex(0, 1), t),
            kernels::omp::contraction_min_singular(a, Complex(0, 1), t));
}

TEST(Kernels, ErrorsSurfaceFromWorkers) {
  const OperatorElement x = random_gapped(2, 1, 0.3, false, 1);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(kernels::omp::bordered_gaps(x, {0.1, nan, 0.2}, {}), Error);
  EXPECT_THROW(kernels::serial::bordered_gaps(x, {0.1, nan, 0.2}, {}), Error);
}
