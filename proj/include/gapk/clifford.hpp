#pragma once

#include "gapk/gap.hpp"
#include "gapk/linalg.hpp"

#include <vector>

namespace gapk {

/// Matrix model of the complex Clifford algebra CCl_p with its grading.
///
/// p = 2m:   CCl_p = M_{2^m}(C), Gamma = diag(I, -I).
/// p = 2m+1: CCl_p = M_{2^m}(C) (+) M_{2^m}(C), embedded block-diagonally in
///           M_{2^{m+1}}(C); Gamma swaps the two summands.
struct CliffordRep {
  int p = 0;
  Index rep_dim = 0;
  std::vector<CMatrix> generators;
  CMatrix grading;
  bool odd = false;  // p odd: Gamma is the block swap
};

CliffordRep clifford_rep(int p);

struct CliffordResiduals {
  double anticommutation = 0.0;  // max ||e_i e_j + e_j e_i - 2 delta_ij I||
  double self_adjoint = 0.0;     // max ||e_i - e_i*||
  double grading_anticommutation = 0.0;  // max ||Gamma e_i + e_i Gamma||
  double grading_involution = 0.0;  // max(||Gamma - Gamma*||, ||Gamma^2 - I||)

  double max() const;
};

CliffordResiduals clifford_residuals(const CliffordRep& rep);

/// Gamma amplified to act on a = (rep_dim * k)-square matrices (Gamma (x) I_k).
CMatrix amplified_grading(const CliffordRep& rep, Index size);

/// Even (parity 0) or odd (parity 1) part: (a +- Gamma a Gamma) / 2.
CMatrix graded_part(const CMatrix& a, const CliffordRep& rep, int parity);

enum class LowTarget { V0, V1 };

/// V0: diag(x, -x) (x self-adjoint), V1: [[0, x], [x*, 0]].
OperatorElement embed_low(const OperatorElement& x, LowTarget target,
                          const TolerancePolicy& policy = {});

/// Periodicity reduction of an odd self-adjoint y in E (x) CCl_{p+1}:
/// p = 2m extracts x from (x, -x); p = 2m+1 extracts the corner of
/// [[0, x], [x*, 0]]. The result lives in M_n(M_{2^m}(E)).
OperatorElement reduce_periodic(const OperatorElement& y, int p,
                                const TolerancePolicy& policy = {});

enum class DoublingForm { V0, V1 };

struct DoublingCheck {
  bool similar = false;
  double residual = 0.0;
  CMatrix four_block;
  CMatrix doubled;    // bordered(x, s) (x) I_2
  CMatrix conjugator; // signed permutation P with P four_block P^T = doubled
};

/// Builds the four-block matrix of the given form, bordered(x, s) (x) I_2 and
/// the explicit signed-permutation conjugator between them.
DoublingCheck doubling_similarity(const OperatorElement& x, double s,
                                  DoublingForm form,
                                  const TolerancePolicy& policy = {});

/// V1 form always; additionally the V0 form when x is self-adjoint.
bool verify_doubling(const OperatorElement& x, double s,
                     const TolerancePolicy& policy = {});

}  // namespace gapk
