#include "gapk/homotopy.hpp"

#include "gapk/error.hpp"
#include "gapk/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace gapk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

bool same_shape(const OperatorElement& a, const OperatorElement& b) {
  return a.ambient_dim() == b.ambient_dim() &&
         a.block_size() == b.block_size();
}

}  // namespace

void HomotopyPath::validate() const {
  if (samples.size() < 2 || samples.size() != parameters.size()) {
    throw Error(ErrorCode::BadArgument,
                "a path needs at least two samples with matching parameters");
  }
  for (const auto& x : samples) {
    if (!same_shape(x, samples.front())) {
      throw Error(ErrorCode::ShapeMismatch, "path samples differ in shape");
    }
  }
  if (parameters.front() != 0.0 || parameters.back() != 1.0) {
    throw Error(ErrorCode::BadArgument, "path parameters must run from 0 to 1");
  }
  for (std::size_t k = 1; k < parameters.size(); ++k) {
    if (!(parameters[k] > parameters[k - 1])) {
      throw Error(ErrorCode::BadArgument,
                  "path parameters must be strictly increasing");
    }
  }
}

std::vector<double> uniform_parameters(int count) {
  if (count < 2) {
    throw Error(ErrorCode::BadArgument, "need at least two path samples");
  }
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    t[static_cast<std::size_t>(k)] =
        static_cast<double>(k) / static_cast<double>(count - 1);
  }
  t.back() = 1.0;
  return t;
}

std::string_view to_string(PathMode mode) noexcept {
  return mode == PathMode::sa ? "sa" : "general";
}

PathMode path_mode_from_string(std::string_view name) {
  if (name == "sa") return PathMode::sa;
  if (name == "general") return PathMode::general;
  throw Error(ErrorCode::BadArgument,
              "unknown path mode '" + std::string(name) + "'");
}

PathCertificate verify_path(const HomotopyPath& path, double delta,
                            PathMode mode, const TolerancePolicy& policy) {
  path.validate();
  if (mode == PathMode::sa) {
    for (const auto& x : path.samples) {
      if (!x.self_adjoint()) {
        throw Error(ErrorCode::ModeMismatch,
                    "sa paths need self-adjoint samples");
      }
    }
  }

  PathCertificate cert;
  cert.delta = delta;
  cert.mode = mode;
  const GapMode gap_mode =
      mode == PathMode::sa ? GapMode::self_adjoint : GapMode::spectrum;
  const auto trace =
      kernels::omp::path_trace(path.samples, delta, gap_mode, policy);

  cert.step_guard = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < trace.size(); ++k) {
    cert.sample_verdicts.push_back(trace[k].verdict);
    cert.delta_max_trace.push_back(trace[k].delta_max);
    cert.gap_trace.push_back(trace[k].mid_gap);
    cert.step_guard = std::min(cert.step_guard, 0.5 * trace[k].mid_gap);
    if (!trace[k].verdict && !cert.failure) {
      cert.failure = PathFailure{ErrorCode::GapViolation, k};
    }
  }
  for (std::size_t k = 0; k + 1 < path.samples.size(); ++k) {
    const double step = operator_norm(path.samples[k + 1].matrix() -
                                      path.samples[k].matrix());
    cert.step_norms.push_back(step);
    if (!(step < cert.step_guard) && !cert.failure) {
      cert.failure = PathFailure{ErrorCode::StepTooLarge, k};
    }
  }
  cert.verdict = !cert.failure.has_value();
  return cert;
}

OperatorElement stabilize(const OperatorElement& x, Index target_level) {
  if (target_level < x.block_size()) {
    throw Error(ErrorCode::LevelTooSmall,
                "cannot stabilize level " + std::to_string(x.block_size()) +
                    " down to " + std::to_string(target_level));
  }
  if (target_level == x.block_size()) return x;
  const Index pad = (target_level - x.block_size()) * x.ambient_dim();
  return OperatorElement(direct_sum(x.matrix(), identity(pad)), x.ambient_dim(),
                         target_level, x.self_adjoint());
}

OperatorElement direct_sum_class(const OperatorElement& x,
                                 const OperatorElement& y) {
  if (x.ambient_dim() != y.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "direct sums need equal ambient dimensions");
  }
  return OperatorElement(direct_sum(x.matrix(), y.matrix()), x.ambient_dim(),
                         x.block_size() + y.block_size(),
                         x.self_adjoint() && y.self_adjoint());
}

Contraction contract_invertible(const OperatorElement& x, int steps,
                                const TolerancePolicy& policy) {
  const CMatrix& a = x.matrix();
  if (min_singular_value(a) <= policy.threshold(a)) {
    throw Error(ErrorCode::NotInvertible,
                "contraction needs an invertible element");
  }

  Eigen::ComplexEigenSolver<CMatrix> solver(a, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonFinite, "eigensolver did not converge");
  }
  // Both rays of every eigenvalue's line are blocked.
  std::vector<double> angles;
  for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double theta = wrap_angle(std::arg(solver.eigenvalues()(i)));
    angles.push_back(theta);
    angles.push_back(wrap_angle(theta + std::numbers::pi));
  }
  std::sort(angles.begin(), angles.end());

  constexpr double kAngularTol = 1e-12;
  double best_width = -1.0;
  double best_start = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double start = angles[i];
    const double end =
        i + 1 < angles.size() ? angles[i + 1] : angles.front() + kTwoPi;
    const double width = end - start;
    if (width > best_width + kAngularTol) {
      best_width = width;
      best_start = start;
    }
  }
  if (best_width <= kAngularTol) {
    throw Error(ErrorCode::NoGapFound,
                "no direction avoids the eigenvalue lines");
  }

  Contraction out;
  out.z = std::polar(1.0, wrap_angle(best_start + 0.5 * best_width));
  out.path.parameters = uniform_parameters(std::max(steps, 2));
  out.min_singular = kernels::omp::contraction_min_singular(
      a, out.z, out.path.parameters);

  const CMatrix id = identity(a.rows());
  for (std::size_t k = 0; k < out.path.parameters.size(); ++k) {
    const double t = out.path.parameters[k];
    CMatrix gamma = t * a + out.z * (1.0 - t) * id;
    const double tau = policy.threshold(gamma);
    if (!(out.min_singular[k] > tau)) {
      throw Error(ErrorCode::NotInvertible,
                  "contraction path singular at sample " + std::to_string(k));
    }
    out.path.samples.emplace_back(std::move(gamma), x.ambient_dim(),
                                  x.block_size(), false);
  }
  return out;
}

KClassWitness make_witness(const OperatorElement& x, double delta,
                           const TolerancePolicy& policy) {
  return make_witness(
      x, OperatorElement::unit(x.ambient_dim(), x.block_size()), delta, policy);
}

KClassWitness make_witness(const OperatorElement& plus,
                           const OperatorElement& minus, double delta,
                           const TolerancePolicy& policy) {
  if (plus.ambient_dim() != minus.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "witness slots need equal ambient dimensions");
  }
  for (const OperatorElement* slot : {&plus, &minus}) {
    if (!delta_singular_check(*slot, delta, GapMode::spectrum, 9, policy)
             .verdict) {
      throw Error(ErrorCode::NotGapped,
                  "witness representative is not delta-singular");
    }
  }
  KClassWitness w;
  w.plus = plus;
  w.minus = minus;
  w.level = std::max(plus.block_size(), minus.block_size());
  w.delta = delta;
  return w;
}

std::pair<OperatorElement, OperatorElement> comparison_endpoints(
    const KClassWitness& a, const KClassWitness& b, Index level) {
  return {stabilize(direct_sum_class(a.plus, b.minus), level),
          stabilize(direct_sum_class(b.plus, a.minus), level)};
}

bool equal_certified(const KClassWitness& a, const KClassWitness& b,
                     const HomotopyPath& path, const TolerancePolicy& policy) {
  path.validate();
  const Index level = path.samples.front().block_size();
  const auto [from, to] = comparison_endpoints(a, b, level);
  if (!same_shape(from, path.samples.front())) return false;

  const auto close = [&](const OperatorElement& p, const OperatorElement& q) {
    const double scale = std::max(
        {operator_norm(p.matrix()), operator_norm(q.matrix()), 1.0});
    return operator_norm(p.matrix() - q.matrix()) <=
           policy.threshold(p.dim(), scale);
  };
  if (!close(path.samples.front(), from) || !close(path.samples.back(), to)) {
    return false;
  }
  return verify_path(path, std::min(a.delta, b.delta), PathMode::general,
                     policy)
      .verdict;
}

long witness_index(KClassWitness& w, const SpectralTriple& triple,
                   const TolerancePolicy& policy) {
  const long value = localizer_index(triple, w.plus, w.delta, policy).index -
                     localizer_index(triple, w.minus, w.delta, policy).index;
  w.invariant_indices[triple.label()] = value;
  return value;
}

bool distinct_by_index(const KClassWitness& a, const KClassWitness& b,
                       const SpectralTriple& triple,
                       const TolerancePolicy& policy) {
  KClassWitness left = a;
  KClassWitness right = b;
  return witness_index(left, triple, policy) !=
         witness_index(right, triple, policy);
}

}  // namespace gapk
