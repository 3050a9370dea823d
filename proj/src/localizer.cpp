#include "gapk/localizer.hpp"

#include "gapk/error.hpp"
#include "gapk/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gapk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_compatible(const SpectralTriple& triple, const OperatorElement& x) {
  if (triple.ambient_dim() != x.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "triple acts on C^" + std::to_string(triple.ambient_dim()) +
                    " but the element has ambient dimension " +
                    std::to_string(x.ambient_dim()));
  }
}

void require_kappa(double kappa, double s) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::BadArgument, "kappa must be finite and > 0");
  }
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw Error(ErrorCode::BadArgument, "s must be finite and >= 0");
  }
}

// Any k x k block layout [[a, b], [c, d]] with equally sized blocks.
CMatrix blocks2(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                const CMatrix& d) {
  const Index k = a.rows();
  CMatrix out(2 * k, 2 * k);
  out << a, b, c, d;
  return out;
}

}  // namespace

std::string_view to_string(Parity parity) noexcept {
  return parity == Parity::odd ? "odd" : "even";
}

SpectralTriple SpectralTriple::odd(CMatrix dirac, std::string label,
                                   const TolerancePolicy& policy) {
  require_square(dirac);
  require_finite(dirac);
  const CMatrix skew = dirac - dirac.adjoint();
  if (skew.cwiseAbs().maxCoeff() > 0.0 &&
      operator_norm(skew) > policy.threshold(dirac)) {
    throw Error(ErrorCode::NotSelfAdjoint, "odd Dirac matrix must be self-adjoint");
  }
  SpectralTriple t;
  t.parity_ = Parity::odd;
  t.d0_ = (dirac + dirac.adjoint()) * 0.5;
  t.label_ = std::move(label);
  return t;
}

SpectralTriple SpectralTriple::even(CMatrix d0, std::string label) {
  require_square(d0);
  require_finite(d0);
  SpectralTriple t;
  t.parity_ = Parity::even;
  t.d0_ = std::move(d0);
  t.label_ = std::move(label);
  return t;
}

CMatrix SpectralTriple::dirac() const {
  if (parity_ == Parity::odd) return d0_;
  const Index d = d0_.rows();
  return blocks2(CMatrix::Zero(d, d), d0_, d0_.adjoint(), CMatrix::Zero(d, d));
}

CMatrix SpectralTriple::grading() const {
  if (parity_ == Parity::odd) return CMatrix();
  const Index d = d0_.rows();
  return direct_sum(identity(d), -identity(d));
}

CMatrix SpectralTriple::amplified_d0(Index block_size) const {
  return kron(identity(block_size), d0_);
}

double commutator_norm(const SpectralTriple& triple, const OperatorElement& x) {
  require_compatible(triple, x);
  const CMatrix d0 = triple.amplified_d0(x.block_size());
  const CMatrix& a = x.matrix();
  if (triple.parity() == Parity::odd) {
    return operator_norm(d0 * a - a * d0);
  }
  // [D, diag(x, x)] = [[0, D0 x - x D0], [D0* x - x D0*, 0]]
  const Index k = a.rows();
  const CMatrix upper = d0 * a - a * d0;
  const CMatrix lower = d0.adjoint() * a - a * d0.adjoint();
  return operator_norm(
      blocks2(CMatrix::Zero(k, k), upper, lower, CMatrix::Zero(k, k)));
}

CMatrix build_generalized(const SpectralTriple& triple,
                          const OperatorElement& x, double kappa, double s) {
  require_compatible(triple, x);
  require_kappa(kappa, s);
  const Index k = x.dim();
  const CMatrix kd = kappa * triple.amplified_d0(x.block_size());
  const CMatrix kds = kd.adjoint();
  const CMatrix& a = x.matrix();
  const CMatrix sI = s * identity(k);
  const CMatrix zero = CMatrix::Zero(k, k);

  CMatrix out(4 * k, 4 * k);
  out << sI, a, kd, zero,
         a.adjoint(), sI, zero, kd,
         kds, zero, -sI, -a,
         zero, kds, -a.adjoint(), -sI;
  return out;
}

CMatrix build_reduced(const SpectralTriple& triple, const OperatorElement& x,
                      double kappa) {
  require_compatible(triple, x);
  require_kappa(kappa, 0.0);
  const CMatrix kd = kappa * triple.amplified_d0(x.block_size());
  const CMatrix& a = x.matrix();
  if (triple.parity() == Parity::odd) {
    return blocks2(kd, a, a.adjoint(), -kd);
  }
  if (!x.self_adjoint()) {
    throw Error(ErrorCode::ModeMismatch,
                "the even localizer pairs with self-adjoint elements only");
  }
  return blocks2(a, kd, kd.adjoint(), -a);
}

double ValidRegion::g(double s) const {
  return std::max(0.0, std::min(s, delta - s));
}

double ValidRegion::kappa_max(double s) const {
  if (unbounded) return kInf;
  const double gs = g(s);
  return gs * gs / commutator_norm;
}

ValidRegion valid_region(const SpectralTriple& triple, const OperatorElement& x,
                         double delta, const TolerancePolicy& policy) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::BadDelta, "the localizer region needs delta > 0");
  }
  const GapCertificate cert =
      delta_singular_check(x, delta, GapMode::spectrum, 9, policy);
  if (!cert.verdict) {
    throw Error(ErrorCode::NotGapped,
                "element is not delta-singular at delta = " +
                    std::to_string(delta) + " (max delta " +
                    std::to_string(cert.delta_max) + ")");
  }
  ValidRegion region;
  region.delta = delta;
  region.commutator_norm = commutator_norm(triple, x);
  const double scale =
      2.0 * operator_norm(triple.dirac()) * operator_norm(x.matrix());
  region.unbounded =
      region.commutator_norm <= policy.threshold(x.dim(), scale);
  region.s_star = 0.5 * delta;
  const double gs = region.g(region.s_star);
  region.kappa_star = region.unbounded
                          ? 0.5 * gs * gs
                          : 0.5 * region.kappa_max(region.s_star);
  return region;
}

GapBoundCheck gap_bound_check(const SpectralTriple& triple,
                              const OperatorElement& x, double kappa, double s,
                              double delta, const TolerancePolicy& policy) {
  if (delta < 0.0) {
    delta = max_delta(x, policy);
  }
  const double gs = std::isinf(delta) ? s : std::max(0.0, std::min(s, delta - s));
  const CMatrix loc = build_generalized(triple, x, kappa, s);
  const SpectrumSummary spec = inertia_signature(loc, policy);

  GapBoundCheck out;
  // eigenvalues of L^2 are the squares of those of L
  out.min_eig_sq = spec.min_abs_eig * spec.min_abs_eig;
  out.bound = gs * gs - kappa * commutator_norm(triple, x);
  out.margin = out.min_eig_sq - out.bound;
  double norm = 0.0;
  for (double lambda : spec.eigenvalues) norm = std::max(norm, std::abs(lambda));
  out.tau = policy.threshold(loc.rows(), norm * norm);
  out.holds = out.min_eig_sq >= out.bound - out.tau;
  return out;
}

LocalizerSample sample_localizer(const SpectralTriple& triple,
                                 const OperatorElement& x, double kappa,
                                 double s, const TolerancePolicy& policy) {
  LocalizerSample out;
  out.kappa = kappa;
  out.s = s;
  const SpectrumSummary reduced =
      inertia_signature(build_reduced(triple, x, kappa), policy);
  out.signature = reduced.signature;
  out.min_abs_eig = reduced.min_abs_eig;
  out.invertible = reduced.inertia.n_zero == 0;
  const SpectrumSummary general =
      inertia_signature(build_generalized(triple, x, kappa, s), policy);
  out.generalized_signature = general.signature;
  out.generalized_min_abs_eig = general.min_abs_eig;
  out.generalized_invertible = general.inertia.n_zero == 0;
  return out;
}

std::vector<std::pair<double, double>> index_points(const ValidRegion& region) {
  const double delta = region.delta;
  const double s_lo = 0.25 * delta;
  const double s_hi = 0.75 * delta;
  // g(s_lo) = g(s_hi), so one kappa range fits both corners.
  const double gs = region.g(s_lo);
  const double k_cap = region.unbounded ? gs * gs : region.kappa_max(s_lo);
  const double k_hi = 0.5 * k_cap;
  const double k_lo = 0.125 * k_cap;
  return {{region.kappa_star, region.s_star},
          {k_lo, s_lo},
          {k_hi, s_lo},
          {k_lo, s_hi},
          {k_hi, s_hi}};
}

LocalizerReport localizer_index(const SpectralTriple& triple,
                                const OperatorElement& x, double delta,
                                const TolerancePolicy& policy,
                                std::optional<double> kappa,
                                std::optional<double> s) {
  require_compatible(triple, x);
  if (triple.parity() == Parity::even && !x.self_adjoint()) {
    throw Error(ErrorCode::ModeMismatch,
                "even index pairings take self-adjoint elements");
  }
  const ValidRegion region = valid_region(triple, x, delta, policy);

  std::vector<std::pair<double, double>> points;
  if (kappa) {
    points.emplace_back(*kappa, s.value_or(0.0));
  } else {
    points = index_points(region);
    if (s) points.front().second = *s;
  }

  LocalizerReport report;
  report.parity = triple.parity();
  report.delta = delta;
  report.commutator_norm = region.commutator_norm;
  report.samples = kernels::omp::localizer_sweep(triple, x, points, policy);

  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const LocalizerSample& p = report.samples[i];
    if (!p.invertible) {
      throw Error(ErrorCode::SingularLocalizer,
                  "localizer not invertible at kappa = " +
                      std::to_string(p.kappa) + ", s = " + std::to_string(p.s) +
                      " (min |eig| " + std::to_string(p.min_abs_eig) + ")");
    }
    if (p.signature != report.samples.front().signature) {
      throw Error(ErrorCode::InconsistentSignature,
                  "signature " + std::to_string(p.signature) + " at sample " +
                      std::to_string(i) + " differs from " +
                      std::to_string(report.samples.front().signature));
    }
  }

  const LocalizerSample& head = report.samples.front();
  report.kappa = head.kappa;
  report.s = head.s;
  const SpectrumSummary spec =
      inertia_signature(build_reduced(triple, x, head.kappa), policy);
  report.eigenvalues = spec.eigenvalues;
  report.inertia = spec.inertia;
  report.signature = spec.signature;
  report.min_abs_eig = spec.min_abs_eig;
  report.tau = spec.tau;
  report.generalized_signature = head.generalized_signature;
  const double gs = region.g(head.s);
  report.gap_bound = gs * gs - head.kappa * region.commutator_norm;

  // The index is half the reduced signature, which therefore has to be even.
  if ((2 * report.signature) % 4 != 0) {
    throw Error(ErrorCode::NotDivisibleBy4,
                "2 * Sig = " + std::to_string(2 * report.signature) +
                    " is not divisible by 4");
  }
  report.index = static_cast<long>(report.signature / 2);
  return report;
}

}  // namespace gapk
