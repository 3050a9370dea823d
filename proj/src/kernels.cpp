#include "gapk/kernels.hpp"

#include "gapk/error.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>

namespace gapk::kernels {

namespace {

double bordered_gap_at(const OperatorElement& x, double s,
                       const TolerancePolicy& policy) {
  return inertia_signature(bordered(x, s), policy).min_abs_eig;
}

SampleGap sample_gap(const OperatorElement& x, double delta, GapMode mode,
                     const TolerancePolicy& policy) {
  const GapCertificate cert = delta_singular_check(x, delta, mode, 9, policy);
  SampleGap out;
  out.verdict = cert.verdict;
  out.marginal = cert.marginal;
  out.delta_max = cert.delta_max;
  const double mid = 0.5 * delta;
  out.mid_gap = std::numeric_limits<double>::infinity();
  for (double lambda : cert.sigma_x) {
    out.mid_gap = std::min(out.mid_gap, std::abs(mid + lambda));
  }
  return out;
}

double contraction_sample(const CMatrix& x, Complex z, double t) {
  const CMatrix gamma = t * x + z * (1.0 - t) * identity(x.rows());
  return min_singular_value(gamma);
}

// Runs body(i) for i in [0, n) across OpenMP threads. The first exception by
// index is rethrown after the loop, so failures are reported deterministically.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

namespace serial {

std::vector<double> bordered_gaps(const OperatorElement& x,
                                  const std::vector<double>& shifts,
                                  const TolerancePolicy& policy) {
  std::vector<double> out;
  out.reserve(shifts.size());
  for (double s : shifts) out.push_back(bordered_gap_at(x, s, policy));
  return out;
}

std::vector<LocalizerSample> localizer_sweep(
    const SpectralTriple& triple, const OperatorElement& x,
    const std::vector<std::pair<double, double>>& points,
    const TolerancePolicy& policy) {
  std::vector<LocalizerSample> out;
  out.reserve(points.size());
  for (const auto& [kappa, s] : points) {
    out.push_back(sample_localizer(triple, x, kappa, s, policy));
  }
  return out;
}

std::vector<SampleGap> path_trace(const std::vector<OperatorElement>& samples,
                                  double delta, GapMode mode,
                                  const TolerancePolicy& policy) {
  std::vector<SampleGap> out;
  out.reserve(samples.size());
  for (const auto& x : samples) out.push_back(sample_gap(x, delta, mode, policy));
  return out;
}

std::vector<double> contraction_min_singular(const CMatrix& x, Complex z,
                                             const std::vector<double>& t) {
  std::vector<double> out;
  out.reserve(t.size());
  for (double ti : t) out.push_back(contraction_sample(x, z, ti));
  return out;
}

}  // namespace serial

namespace omp {

std::vector<double> bordered_gaps(const OperatorElement& x,
                                  const std::vector<double>& shifts,
                                  const TolerancePolicy& policy) {
  std::vector<double> out(shifts.size());
  parallel_for(shifts.size(), [&](std::size_t i) {
    out[i] = bordered_gap_at(x, shifts[i], policy);
  });
  return out;
}

std::vector<LocalizerSample> localizer_sweep(
    const SpectralTriple& triple, const OperatorElement& x,
    const std::vector<std::pair<double, double>>& points,
    const TolerancePolicy& policy) {
  std::vector<LocalizerSample> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    out[i] = sample_localizer(triple, x, points[i].first, points[i].second,
                              policy);
  });
  return out;
}

std::vector<SampleGap> path_trace(const std::vector<OperatorElement>& samples,
                                  double delta, GapMode mode,
                                  const TolerancePolicy& policy) {
  std::vector<SampleGap> out(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    out[i] = sample_gap(samples[i], delta, mode, policy);
  });
  return out;
}

std::vector<double> contraction_min_singular(const CMatrix& x, Complex z,
                                             const std::vector<double>& t) {
  std::vector<double> out(t.size());
  parallel_for(t.size(),
               [&](std::size_t i) { out[i] = contraction_sample(x, z, t[i]); });
  return out;
}

}  // namespace omp

}  // namespace gapk::kernels
