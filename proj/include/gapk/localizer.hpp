#pragma once

#include "gapk/gap.hpp"
#include "gapk/linalg.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gapk {

enum class Parity { odd, even };

std::string_view to_string(Parity parity) noexcept;

/// A finite operator system spectral triple.
///
/// Odd:  D0 is the self-adjoint Dirac matrix D on C^d.
/// Even: D0 is the off-diagonal block of D = [[0, D0], [D0*, 0]] on
///       C^d (+) C^d with grading gamma = diag(I, -I); represented elements
///       act diagonally as diag(x, x) and so commute with gamma.
class SpectralTriple {
 public:
  SpectralTriple() = default;

  static SpectralTriple odd(CMatrix dirac, std::string label = "odd",
                            const TolerancePolicy& policy = {});
  static SpectralTriple even(CMatrix d0, std::string label = "even");

  Parity parity() const { return parity_; }
  const CMatrix& d0() const { return d0_; }
  const std::string& label() const { return label_; }
  Index ambient_dim() const { return d0_.rows(); }

  /// Assembled D on the full Hilbert space (size d odd, 2d even).
  CMatrix dirac() const;
  /// gamma = diag(I, -I); empty for odd triples.
  CMatrix grading() const;
  /// D0 amplified to n element blocks: kron(I_n, D0).
  CMatrix amplified_d0(Index block_size) const;

 private:
  Parity parity_ = Parity::odd;
  CMatrix d0_;
  std::string label_;
};

/// ||[D, x]|| with D amplified blockwise (and x acting as diag(x, x) when even).
double commutator_norm(const SpectralTriple& triple, const OperatorElement& x);

/// The 4-block generalized localizer
///   [[ s,        x,        k D0,    0    ],
///    [ x*,       s,        0,       k D0 ],
///    [ k D0*,    0,       -s,      -x    ],
///    [ 0,        k D0*,   -x*,     -s    ]]
CMatrix build_generalized(const SpectralTriple& triple,
                          const OperatorElement& x, double kappa, double s);

/// Odd:  [[k D, x], [x*, -k D]].
/// Even: [[x, k D0], [k D0*, -x]] (x must be self-adjoint).
CMatrix build_reduced(const SpectralTriple& triple, const OperatorElement& x,
                      double kappa);

/// Sufficient invertibility region 0 < kappa < g_s^2 / ||[D, x]||, 0 < s < delta.
struct ValidRegion {
  double commutator_norm = 0.0;
  double delta = 0.0;
  bool unbounded = false;
  double s_star = 0.0;
  double kappa_star = 0.0;

  double g(double s) const;
  double kappa_max(double s) const;
};

ValidRegion valid_region(const SpectralTriple& triple, const OperatorElement& x,
                         double delta, const TolerancePolicy& policy = {});

struct GapBoundCheck {
  bool holds = false;
  double min_eig_sq = 0.0;  // smallest eigenvalue of L^2
  double bound = 0.0;       // g_s^2 - kappa ||[D, x]||
  double margin = 0.0;      // min_eig_sq - bound
  double tau = 0.0;
};

/// Checks L_kappa(D, x, s)^2 >= (g_s^2 - kappa ||[D, x]||) on the generalized
/// localizer. A negative delta means "use max_delta(x)".
GapBoundCheck gap_bound_check(const SpectralTriple& triple,
                              const OperatorElement& x, double kappa, double s,
                              double delta = -1.0,
                              const TolerancePolicy& policy = {});

/// Signatures of both localizers at one (kappa, s) point.
struct LocalizerSample {
  double kappa = 0.0;
  double s = 0.0;
  Index signature = 0;  // reduced localizer
  double min_abs_eig = 0.0;
  bool invertible = false;
  Index generalized_signature = 0;
  double generalized_min_abs_eig = 0.0;
  bool generalized_invertible = false;
};

LocalizerSample sample_localizer(const SpectralTriple& triple,
                                 const OperatorElement& x, double kappa,
                                 double s, const TolerancePolicy& policy = {});

struct LocalizerReport {
  double kappa = 0.0;
  double s = 0.0;
  double delta = 0.0;
  Parity parity = Parity::odd;
  std::vector<double> eigenvalues;  // reduced localizer at (kappa, s)
  Inertia inertia;
  Index signature = 0;
  Index generalized_signature = 0;
  double commutator_norm = 0.0;
  double gap_bound = 0.0;
  double min_abs_eig = 0.0;
  double tau = 0.0;
  long index = 0;
  std::vector<LocalizerSample> samples;
};

/// Evaluation points used by the index: the interior point and the four
/// corners of the sub-rectangle s in {delta/4, 3 delta/4},
/// kappa in {kappa_max(delta/4)/8, kappa_max(delta/4)/2}.
std::vector<std::pair<double, double>> index_points(const ValidRegion& region);

/// The integer index pairing ind_D^delta([x]) = Sig(L_reduced) / 2, certified
/// by signature agreement at all points of `index_points` (or at a single
/// user-supplied point when `kappa` is given; `s` defaults to 0 there).
LocalizerReport localizer_index(const SpectralTriple& triple,
                                const OperatorElement& x, double delta,
                                const TolerancePolicy& policy = {},
                                std::optional<double> kappa = std::nullopt,
                                std::optional<double> s = std::nullopt);

}  // namespace gapk
