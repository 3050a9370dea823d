#pragma once

#include "gapk/linalg.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace gapk {

/// An element x of M_n(E), stored as its d*n x d*n image in the concrete
/// C*-envelope. Block layout: element blocks outer, ambient inner, i.e. the
/// (i, j) entry of x is the d x d block at rows i*d, cols j*d.
class OperatorElement {
 public:
  OperatorElement() = default;

  /// Validates finiteness, dimension d*n, and (when flagged) self-adjointness.
  OperatorElement(CMatrix matrix, Index ambient_dim, Index block_size,
                  bool self_adjoint, const TolerancePolicy& policy = {});

  /// Single-block element (n = 1, d = dim); self-adjointness detected.
  static OperatorElement from_matrix(CMatrix matrix,
                                     const TolerancePolicy& policy = {});

  /// The unit e of M_n(E) with ambient dimension d.
  static OperatorElement unit(Index ambient_dim, Index block_size = 1);

  const CMatrix& matrix() const { return matrix_; }
  Index ambient_dim() const { return ambient_dim_; }
  Index block_size() const { return block_size_; }
  Index dim() const { return matrix_.rows(); }
  bool self_adjoint() const { return self_adjoint_; }

 private:
  CMatrix matrix_;
  Index ambient_dim_ = 0;
  Index block_size_ = 0;
  bool self_adjoint_ = false;
};

/// [[s I, x], [x*, s I]].
CMatrix bordered(const OperatorElement& x, double s);

/// Sigma_x: ascending eigenvalues of [[0, x], [x*, 0]].
std::vector<double> sigma_spectrum(const OperatorElement& x,
                                   const TolerancePolicy& policy = {});

/// Zero threshold used for Sigma_x (that of bordered(x, 0)).
double sigma_tolerance(const OperatorElement& x,
                       const TolerancePolicy& policy = {});

enum class GapMode { spectrum, grid, self_adjoint };

std::string_view to_string(GapMode mode) noexcept;
GapMode gap_mode_from_string(std::string_view name);

struct GapCertificate {
  std::vector<double> sigma_x;
  double delta_max = 0.0;  // +inf when Sigma_x is numerically {0}
  double queried_delta = 0.0;
  bool verdict = false;
  bool marginal = false;
  GapMode mode = GapMode::spectrum;
  double tau = 0.0;
  std::vector<std::pair<double, double>> s_gaps;  // (s, g)
};

/// Open-interval grid s_k = delta * k / (points + 1), k = 1..points.
std::vector<double> open_grid(double delta, int points);

/// Decides whether x is delta-singular.
///
/// spectrum:     Sigma_x avoids (-delta, 0) u (0, delta) beyond tau.
/// grid:         independent route; eigensolves bordered(x, s) on the open
///               grid and checks the s-gap bound g(s) >= min{s, delta-s} - tau.
/// self_adjoint: sigma(x) avoids (-delta, 0) u (0, delta) beyond tau.
///
/// delta = 0 asks whether bordered(x, 0) is invertible.
GapCertificate delta_singular_check(const OperatorElement& x, double delta,
                                    GapMode mode = GapMode::spectrum,
                                    int grid_points = 9,
                                    const TolerancePolicy& policy = {});

/// Smallest |eigenvalue| of bordered(x, s), s > 0.
double s_gap(const OperatorElement& x, double s,
             const TolerancePolicy& policy = {});

/// Largest delta for which x is delta-singular (+inf if Sigma_x ~ {0}).
double max_delta(const OperatorElement& x, const TolerancePolicy& policy = {});

/// Smallest |lambda| over entries of `spectrum` with |lambda| > tau.
double smallest_nonzero_abs(const std::vector<double>& spectrum, double tau);

}  // namespace gapk
