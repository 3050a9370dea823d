#include "gapk/gap.hpp"

#include "gapk/error.hpp"
#include "gapk/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gapk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool hermitian_within(const CMatrix& m, const TolerancePolicy& policy) {
  const CMatrix skew = m - m.adjoint();
  if (skew.cwiseAbs().maxCoeff() == 0.0) return true;
  return operator_norm(skew) <= policy.threshold(m);
}

// Shared verdict over a list of |lambda| values: violation strictly inside
// (tau, delta - tau); marginal when some value sits within tau of a boundary.
void classify(const std::vector<double>& values, double delta, double tau,
              GapCertificate& cert) {
  cert.verdict = true;
  cert.marginal = false;
  for (double lambda : values) {
    const double a = std::abs(lambda);
    if (delta == 0.0) {
      if (a <= tau) cert.verdict = false;
      if (a > tau && a <= 2.0 * tau) cert.marginal = true;
      continue;
    }
    if (a > tau && a < delta - tau) cert.verdict = false;
    if (std::abs(a - delta) <= tau) cert.marginal = true;
    if (a > tau && a <= 2.0 * tau) cert.marginal = true;
  }
}

}  // namespace

OperatorElement::OperatorElement(CMatrix matrix, Index ambient_dim,
                                 Index block_size, bool self_adjoint,
                                 const TolerancePolicy& policy)
    : matrix_(std::move(matrix)),
      ambient_dim_(ambient_dim),
      block_size_(block_size),
      self_adjoint_(self_adjoint) {
  require_square(matrix_);
  require_finite(matrix_);
  if (ambient_dim_ < 1 || block_size_ < 1 ||
      ambient_dim_ * block_size_ != matrix_.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix of size " + std::to_string(matrix_.rows()) +
                    " is not d*n with d=" + std::to_string(ambient_dim_) +
                    ", n=" + std::to_string(block_size_));
  }
  if (self_adjoint_ && !hermitian_within(matrix_, policy)) {
    throw Error(ErrorCode::NotSelfAdjoint,
                "element flagged self-adjoint is not Hermitian at tolerance");
  }
}

OperatorElement OperatorElement::from_matrix(CMatrix matrix,
                                             const TolerancePolicy& policy) {
  require_square(matrix);
  require_finite(matrix);
  const bool sa = hermitian_within(matrix, policy);
  const Index d = matrix.rows();
  return OperatorElement(std::move(matrix), d, 1, sa, policy);
}

OperatorElement OperatorElement::unit(Index ambient_dim, Index block_size) {
  return OperatorElement(identity(ambient_dim * block_size), ambient_dim,
                         block_size, true);
}

CMatrix bordered(const OperatorElement& x, double s) {
  if (!std::isfinite(s)) {
    throw Error(ErrorCode::NonFinite, "shift s must be finite");
  }
  const Index k = x.dim();
  CMatrix out(2 * k, 2 * k);
  out.topLeftCorner(k, k) = s * identity(k);
  out.topRightCorner(k, k) = x.matrix();
  out.bottomLeftCorner(k, k) = x.matrix().adjoint();
  out.bottomRightCorner(k, k) = s * identity(k);
  return out;
}

std::vector<double> sigma_spectrum(const OperatorElement& x,
                                   const TolerancePolicy& policy) {
  return eig_hermitian(bordered(x, 0.0), policy);
}

double sigma_tolerance(const OperatorElement& x,
                       const TolerancePolicy& policy) {
  return policy.threshold(2 * x.dim(), operator_norm(x.matrix()));
}

std::string_view to_string(GapMode mode) noexcept {
  switch (mode) {
    case GapMode::spectrum: return "spectrum";
    case GapMode::grid: return "grid";
    case GapMode::self_adjoint: return "self_adjoint";
  }
  return "spectrum";
}

GapMode gap_mode_from_string(std::string_view name) {
  if (name == "spectrum") return GapMode::spectrum;
  if (name == "grid") return GapMode::grid;
  if (name == "self_adjoint" || name == "sa") return GapMode::self_adjoint;
  throw Error(ErrorCode::BadArgument,
              "unknown gap mode '" + std::string(name) + "'");
}

std::vector<double> open_grid(double delta, int points) {
  std::vector<double> s;
  s.reserve(static_cast<std::size_t>(std::max(points, 0)));
  for (int k = 1; k <= points; ++k) {
    s.push_back(delta * static_cast<double>(k) / static_cast<double>(points + 1));
  }
  return s;
}

double smallest_nonzero_abs(const std::vector<double>& spectrum, double tau) {
  double best = kInf;
  for (double lambda : spectrum) {
    const double a = std::abs(lambda);
    if (a > tau) best = std::min(best, a);
  }
  return best;
}

GapCertificate delta_singular_check(const OperatorElement& x, double delta,
                                    GapMode mode, int grid_points,
                                    const TolerancePolicy& policy) {
  if (!std::isfinite(delta) || delta < 0.0) {
    throw Error(ErrorCode::BadDelta, "delta must be finite and >= 0");
  }
  if (mode == GapMode::self_adjoint && !x.self_adjoint()) {
    throw Error(ErrorCode::ModeMismatch,
                "self_adjoint mode needs a self-adjoint element");
  }
  if (mode == GapMode::grid && (grid_points < 2 || delta <= 0.0)) {
    throw Error(ErrorCode::BadArgument,
                "grid mode needs grid_points >= 2 and delta > 0");
  }

  GapCertificate cert;
  cert.mode = mode;
  cert.queried_delta = delta;
  cert.sigma_x = sigma_spectrum(x, policy);
  cert.tau = sigma_tolerance(x, policy);
  cert.delta_max = smallest_nonzero_abs(cert.sigma_x, cert.tau);

  const std::vector<double> grid =
      delta > 0.0 ? open_grid(delta, std::max(grid_points, 2))
                  : std::vector<double>{};

  switch (mode) {
    case GapMode::spectrum: {
      classify(cert.sigma_x, delta, cert.tau, cert);
      for (double s : grid) {
        double g = kInf;
        for (double lambda : cert.sigma_x) g = std::min(g, std::abs(s + lambda));
        cert.s_gaps.emplace_back(s, g);
      }
      break;
    }
    case GapMode::self_adjoint: {
      const std::vector<double> spec = eig_hermitian(x.matrix(), policy);
      classify(spec, delta, cert.tau, cert);
      // bordered(x, s) ~ diag(s + x, s - x)
      for (double s : grid) {
        double g = kInf;
        for (double lambda : spec) {
          g = std::min({g, std::abs(s + lambda), std::abs(s - lambda)});
        }
        cert.s_gaps.emplace_back(s, g);
      }
      break;
    }
    case GapMode::grid: {
      const std::vector<double> gaps =
          kernels::omp::bordered_gaps(x, grid, policy);
      cert.verdict = true;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double s = grid[k];
        const double bound = std::min(s, delta - s);
        if (gaps[k] < bound - cert.tau) cert.verdict = false;
        if (std::abs(gaps[k] - bound) <= cert.tau) cert.marginal = true;
        cert.s_gaps.emplace_back(s, gaps[k]);
      }
      break;
    }
  }
  return cert;
}

double s_gap(const OperatorElement& x, double s,
             const TolerancePolicy& policy) {
  if (!(s > 0.0)) {
    throw Error(ErrorCode::BadArgument, "s-gap needs s > 0");
  }
  return inertia_signature(bordered(x, s), policy).min_abs_eig;
}

double max_delta(const OperatorElement& x, const TolerancePolicy& policy) {
  return smallest_nonzero_abs(sigma_spectrum(x, policy),
                              sigma_tolerance(x, policy));
}

}  // namespace gapk
