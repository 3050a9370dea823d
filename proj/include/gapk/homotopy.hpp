#pragma once

#include "gapk/error.hpp"
#include "gapk/gap.hpp"
#include "gapk/linalg.hpp"
#include "gapk/localizer.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gapk {

/// Sampled path t -> x(t) with t_0 = 0 < t_1 < ... < t_last = 1.
struct HomotopyPath {
  std::vector<OperatorElement> samples;
  std::vector<double> parameters;

  /// Throws ShapeMismatch / BadArgument when the invariants fail.
  void validate() const;
};

/// Uniform parameters k / (count - 1).
std::vector<double> uniform_parameters(int count);

enum class PathMode { sa, general };

std::string_view to_string(PathMode mode) noexcept;
PathMode path_mode_from_string(std::string_view name);

struct PathFailure {
  ErrorCode code = ErrorCode::GapViolation;  // GapViolation or StepTooLarge
  std::size_t index = 0;                      // sample or step index
};

struct PathCertificate {
  bool verdict = false;
  std::optional<PathFailure> failure;
  double delta = 0.0;
  PathMode mode = PathMode::general;
  std::vector<bool> sample_verdicts;
  std::vector<double> delta_max_trace;
  std::vector<double> gap_trace;   // s-gap at s = delta / 2 per sample
  std::vector<double> step_norms;  // ||x(t_{k+1}) - x(t_k)||
  double step_guard = 0.0;         // half the minimal gap_trace entry
};

/// Certifies a discrete homotopy inside G^delta (general) or H^delta (sa):
/// every sample is delta-singular, and consecutive samples differ by less
/// than half the smallest s-gap at s = delta / 2, so by Weyl's inequality no
/// eigenvalue of the bordered matrix can cross zero between samples.
PathCertificate verify_path(const HomotopyPath& path, double delta,
                            PathMode mode, const TolerancePolicy& policy = {});

/// x (+) I_{(m - n) d}.
OperatorElement stabilize(const OperatorElement& x, Index target_level);

/// Block direct sum; the ambient dimensions must agree.
OperatorElement direct_sum_class(const OperatorElement& x,
                                 const OperatorElement& y);

struct Contraction {
  Complex z;
  HomotopyPath path;
  std::vector<double> min_singular;
};

/// The straight path gamma(t) = t x + z (1 - t) I from z I to an invertible x,
/// with z on the unit circle chosen so that the line through 0 and z avoids
/// every eigenvalue of x (midpoint of the widest angular gap).
Contraction contract_invertible(const OperatorElement& x, int steps = 33,
                                const TolerancePolicy& policy = {});

/// Formal difference [plus] - [minus] in the Grothendieck group.
struct KClassWitness {
  OperatorElement plus;
  OperatorElement minus;
  Index level = 0;
  double delta = 0.0;
  std::map<std::string, long> invariant_indices;
};

/// Witness of [x] with the unit e_n in the minus slot.
KClassWitness make_witness(const OperatorElement& x, double delta,
                           const TolerancePolicy& policy = {});

KClassWitness make_witness(const OperatorElement& plus,
                           const OperatorElement& minus, double delta,
                           const TolerancePolicy& policy = {});

/// The two elements a certified path must connect for
/// [p] - [m] = [p'] - [m']: stabilize(p (+) m') and stabilize(p' (+) m).
std::pair<OperatorElement, OperatorElement> comparison_endpoints(
    const KClassWitness& a, const KClassWitness& b, Index level);

/// Stabilizes both sides to the path's level and certifies the path between
/// them. Sound but incomplete: false only means this path does not certify.
bool equal_certified(const KClassWitness& a, const KClassWitness& b,
                     const HomotopyPath& path,
                     const TolerancePolicy& policy = {});

/// ind(plus) - ind(minus) for the triple; also recorded under its label.
long witness_index(KClassWitness& w, const SpectralTriple& triple,
                   const TolerancePolicy& policy = {});

/// True when the index pairings differ, a proof that the classes differ.
bool distinct_by_index(const KClassWitness& a, const KClassWitness& b,
                       const SpectralTriple& triple,
                       const TolerancePolicy& policy = {});

}  // namespace gapk
