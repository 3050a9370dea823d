#include "gapk/linalg.hpp"

#include "gapk/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>

namespace gapk {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Eigen::VectorXd singular_values(const CMatrix& m) {
  require_finite(m);
  if (m.size() == 0) return Eigen::VectorXd();
  // BDCSVD falls back to Jacobi below its block size, so small inputs stay exact.
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues();
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::SingularAtTolerance: return "SingularAtTolerance";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularConjugator: return "SingularConjugator";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::NotOdd: return "NotOdd";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::GapViolation: return "GapViolation";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::LevelTooSmall: return "LevelTooSmall";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NoGapFound: return "NoGapFound";
    case ErrorCode::NotGapped: return "NotGapped";
    case ErrorCode::SingularLocalizer: return "SingularLocalizer";
    case ErrorCode::InconsistentSignature: return "InconsistentSignature";
    case ErrorCode::NotDivisibleBy4: return "NotDivisibleBy4";
    case ErrorCode::WindingTooLarge: return "WindingTooLarge";
    case ErrorCode::BadDelta: return "BadDelta";
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

double TolerancePolicy::threshold(Index dim, double norm) const {
  return zero_threshold_factor * static_cast<double>(std::max<Index>(dim, 1)) *
         kEps * norm;
}

double TolerancePolicy::threshold(const CMatrix& m) const {
  return threshold(m.rows(), operator_norm(m));
}

TolerancePolicy TolerancePolicy::from_env() {
  TolerancePolicy policy;
  if (const char* raw = std::getenv("GAPK_TOL_FACTOR")) {
    char* end = nullptr;
    const double value = std::strtod(raw, &end);
    if (end != raw && *end == '\0' && std::isfinite(value) && value > 0.0) {
      policy.zero_threshold_factor = value;
    }
  }
  return policy;
}

bool is_finite(const CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

void require_finite(const CMatrix& m) {
  if (!is_finite(m)) {
    throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
  }
}

void require_square(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NotSquare,
                "expected a square matrix, got " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()));
  }
}

std::vector<double> eig_hermitian(const CMatrix& m,
                                  const TolerancePolicy& policy) {
  return inertia_signature(m, policy).eigenvalues;
}

SpectrumSummary inertia_signature(const CMatrix& m,
                                  const TolerancePolicy& policy,
                                  bool require_invertible) {
  require_square(m);
  require_finite(m);

  SpectrumSummary out;
  const Index n = m.rows();
  if (n == 0) return out;

  const CMatrix sym = (m + m.adjoint()) * 0.5;
  const CMatrix skew = m - m.adjoint();

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonFinite, "Hermitian eigensolver did not converge");
  }
  const Eigen::VectorXd& w = solver.eigenvalues();
  double norm = 0.0;
  for (Index i = 0; i < n; ++i) norm = std::max(norm, std::abs(w(i)));
  out.tau = policy.threshold(n, norm);

  if (skew.cwiseAbs().maxCoeff() > 0.0) {
    const double asym = operator_norm(skew);
    if (asym > out.tau) {
      throw Error(ErrorCode::NotSelfAdjoint,
                  "||M - M*|| = " + std::to_string(asym) +
                      " exceeds tolerance " + std::to_string(out.tau));
    }
  }

  out.eigenvalues.assign(w.data(), w.data() + n);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  out.min_abs_eig = std::numeric_limits<double>::infinity();
  for (double lambda : out.eigenvalues) {
    out.min_abs_eig = std::min(out.min_abs_eig, std::abs(lambda));
    if (lambda > out.tau) {
      ++out.inertia.n_plus;
    } else if (lambda < -out.tau) {
      ++out.inertia.n_minus;
    } else {
      ++out.inertia.n_zero;
    }
  }
  out.signature = out.inertia.signature();

  if (require_invertible && out.inertia.n_zero > 0) {
    throw Error(ErrorCode::SingularAtTolerance,
                std::to_string(out.inertia.n_zero) +
                    " eigenvalue(s) within tolerance " +
                    std::to_string(out.tau) + " of zero");
  }
  return out;
}

double operator_norm(const CMatrix& m) {
  const Eigen::VectorXd s = singular_values(m);
  return s.size() == 0 ? 0.0 : s.maxCoeff();
}

double min_singular_value(const CMatrix& m) {
  const Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0) return 0.0;
  // A non-square matrix has min(rows, cols) singular values; the rank
  // deficiency of the long side is not reported here.
  return s.minCoeff();
}

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double similarity_residual(const CMatrix& a, const CMatrix& b,
                           const CMatrix& p, const TolerancePolicy& policy) {
  require_square(a);
  require_square(b);
  require_square(p);
  if (a.rows() != b.rows() || p.rows() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "similarity needs A, B, P of equal size");
  }
  if (min_singular_value(p) <= policy.threshold(p)) {
    throw Error(ErrorCode::SingularConjugator,
                "conjugator is not invertible at tolerance");
  }
  // P A P^-1 = (P^-* (P A)^*)^*, solved rather than inverted.
  const CMatrix pa = p * a;
  const CMatrix conj = p.adjoint().partialPivLu().solve(pa.adjoint()).adjoint();
  return operator_norm(conj - b);
}

bool verify_similarity(const CMatrix& a, const CMatrix& b, const CMatrix& p,
                       const TolerancePolicy& policy) {
  const double residual = similarity_residual(a, b, p, policy);
  const double scale =
      std::max({operator_norm(a), operator_norm(b), 1.0});
  return residual <= policy.threshold(a.rows(), scale);
}

CMatrix random_gaussian(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re, im);
    }
  }
  return out;
}

CMatrix random_unitary(Index n, std::uint64_t seed) {
  const CMatrix g = random_gaussian(n, n, seed);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

}  // namespace gapk
