#pragma once

// Data-parallel sweeps. Each kernel has a serial reference and an OpenMP
// version with identical results; the library calls the OpenMP ones.

#include "gapk/gap.hpp"
#include "gapk/linalg.hpp"
#include "gapk/localizer.hpp"

#include <utility>
#include <vector>

namespace gapk::kernels {

struct SampleGap {
  bool verdict = false;
  bool marginal = false;
  double delta_max = 0.0;
  double mid_gap = 0.0;  // s-gap at s = delta / 2
};

namespace serial {

std::vector<double> bordered_gaps(const OperatorElement& x,
                                  const std::vector<double>& shifts,
                                  const TolerancePolicy& policy);

std::vector<LocalizerSample> localizer_sweep(
    const SpectralTriple& triple, const OperatorElement& x,
    const std::vector<std::pair<double, double>>& points,
    const TolerancePolicy& policy);

std::vector<SampleGap> path_trace(const std::vector<OperatorElement>& samples,
                                  double delta, GapMode mode,
                                  const TolerancePolicy& policy);

std::vector<double> contraction_min_singular(const CMatrix& x, Complex z,
                                             const std::vector<double>& t);

}  // namespace serial

namespace omp {

std::vector<double> bordered_gaps(const OperatorElement& x,
                                  const std::vector<double>& shifts,
                                  const TolerancePolicy& policy);

std::vector<LocalizerSample> localizer_sweep(
    const SpectralTriple& triple, const OperatorElement& x,
    const std::vector<std::pair<double, double>>& points,
    const TolerancePolicy& policy);

std::vector<SampleGap> path_trace(const std::vector<OperatorElement>& samples,
                                  double delta, GapMode mode,
                                  const TolerancePolicy& policy);

std::vector<double> contraction_min_singular(const CMatrix& x, Complex z,
                                             const std::vector<double>& t);

}  // namespace omp

}  // namespace gapk::kernels
