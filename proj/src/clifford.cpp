#include "gapk/clifford.hpp"

#include "gapk/error.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace gapk {

namespace {

const Complex I_{0.0, 1.0};

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0.0, -I_, I_, 0.0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

struct EvenModel {
  std::vector<CMatrix> generators;
  CMatrix chirality;  // anticommutes with every generator
};

// CCl_{2m} on C^{2^m}; m = 0 gives the trivial model with chirality [1].
EvenModel even_model(int m) {
  if (m == 0) return {{}, identity(1)};
  if (m == 1) return {{pauli_x(), pauli_y()}, pauli_z()};
  const EvenModel inner = even_model(m - 1);
  const Index h = inner.chirality.rows();
  EvenModel out;
  for (const CMatrix& g : inner.generators) {
    out.generators.push_back(kron(pauli_x(), g));
  }
  out.generators.push_back(kron(pauli_x(), inner.chirality));
  out.generators.push_back(kron(pauli_y(), identity(h)));
  out.chirality = kron(pauli_z(), identity(h));
  return out;
}

CMatrix swap_grading(Index half) {
  CMatrix g = CMatrix::Zero(2 * half, 2 * half);
  g.topRightCorner(half, half) = identity(half);
  g.bottomLeftCorner(half, half) = identity(half);
  return g;
}

double relative_tolerance(const TolerancePolicy& policy, const CMatrix& m) {
  return policy.threshold(m.rows(), std::max(operator_norm(m), 1.0));
}

// Reorders rows/cols of an (outer x block x inner) indexed matrix to
// (block x outer x inner).
CMatrix move_outer_inside(const CMatrix& a, Index outer, Index blocks,
                          Index inner) {
  if (outer == 1 || blocks == 1) return a;
  const Index n = outer * blocks * inner;
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index c = 0; c < outer; ++c) {
    for (Index b = 0; b < blocks; ++b) {
      for (Index i = 0; i < inner; ++i) {
        perm[static_cast<std::size_t>((c * blocks + b) * inner + i)] =
            (b * outer + c) * inner + i;
      }
    }
  }
  CMatrix out(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      out(perm[static_cast<std::size_t>(r)], perm[static_cast<std::size_t>(c)]) =
          a(r, c);
    }
  }
  return out;
}

}  // namespace

CliffordRep clifford_rep(int p) {
  if (p < 1) {
    throw Error(ErrorCode::BadArgument, "Clifford algebras need p >= 1");
  }
  CliffordRep rep;
  rep.p = p;
  rep.odd = (p % 2) == 1;
  const int m = p / 2;
  if (!rep.odd) {
    EvenModel model = even_model(m);
    rep.generators = std::move(model.generators);
    rep.grading = std::move(model.chirality);
  } else {
    // (g, -g) for the 2m generators of CCl_{2m} and its chirality.
    EvenModel model = even_model(m);
    model.generators.push_back(model.chirality);
    for (const CMatrix& g : model.generators) {
      rep.generators.push_back(direct_sum(g, -g));
    }
    rep.grading = swap_grading(model.chirality.rows());
  }
  rep.rep_dim = rep.grading.rows();
  return rep;
}

double CliffordResiduals::max() const {
  return std::max({anticommutation, self_adjoint, grading_anticommutation,
                   grading_involution});
}

CliffordResiduals clifford_residuals(const CliffordRep& rep) {
  CliffordResiduals r;
  const Index n = rep.rep_dim;
  const CMatrix id = identity(n);
  const auto maxabs = [](const CMatrix& m) { return m.cwiseAbs().maxCoeff(); };
  for (std::size_t i = 0; i < rep.generators.size(); ++i) {
    const CMatrix& ei = rep.generators[i];
    r.self_adjoint = std::max(r.self_adjoint, maxabs(ei - ei.adjoint()));
    r.grading_anticommutation = std::max(
        r.grading_anticommutation, maxabs(rep.grading * ei + ei * rep.grading));
    for (std::size_t j = i; j < rep.generators.size(); ++j) {
      const CMatrix& ej = rep.generators[j];
      CMatrix anti = ei * ej + ej * ei;
      if (i == j) anti -= 2.0 * id;
      r.anticommutation = std::max(r.anticommutation, maxabs(anti));
    }
  }
  r.grading_involution =
      std::max(maxabs(rep.grading - rep.grading.adjoint()),
               maxabs(rep.grading * rep.grading - id));
  return r;
}

CMatrix amplified_grading(const CliffordRep& rep, Index size) {
  if (size % rep.rep_dim != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "size " + std::to_string(size) + " is not a multiple of " +
                    std::to_string(rep.rep_dim));
  }
  return kron(rep.grading, identity(size / rep.rep_dim));
}

CMatrix graded_part(const CMatrix& a, const CliffordRep& rep, int parity) {
  require_square(a);
  if (parity != 0 && parity != 1) {
    throw Error(ErrorCode::BadArgument, "parity must be 0 or 1");
  }
  const CMatrix g = amplified_grading(rep, a.rows());
  const CMatrix conj = g * a * g;
  return parity == 0 ? CMatrix((a + conj) * 0.5) : CMatrix((a - conj) * 0.5);
}

OperatorElement embed_low(const OperatorElement& x, LowTarget target,
                          const TolerancePolicy& policy) {
  const Index k = x.dim();
  CMatrix out = CMatrix::Zero(2 * k, 2 * k);
  if (target == LowTarget::V0) {
    if (!x.self_adjoint()) {
      throw Error(ErrorCode::ModeMismatch, "V0 embedding needs a self-adjoint x");
    }
    out.topLeftCorner(k, k) = x.matrix();
    out.bottomRightCorner(k, k) = -x.matrix();
  } else {
    out.topRightCorner(k, k) = x.matrix();
    out.bottomLeftCorner(k, k) = x.matrix().adjoint();
  }
  return OperatorElement(std::move(out), x.ambient_dim(), 2 * x.block_size(),
                         true, policy);
}

OperatorElement reduce_periodic(const OperatorElement& y, int p,
                                const TolerancePolicy& policy) {
  if (p < 0) {
    throw Error(ErrorCode::BadArgument, "periodicity degree must be >= 0");
  }
  const CliffordRep rep = clifford_rep(p + 1);
  const Index r = rep.rep_dim;
  if (y.dim() % r != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "element of size " + std::to_string(y.dim()) +
                    " does not carry a CCl_" + std::to_string(p + 1) +
                    " factor of size " + std::to_string(r));
  }
  const CMatrix& a = y.matrix();
  const double tol = relative_tolerance(policy, a);
  const CMatrix skew = a - a.adjoint();
  if (skew.cwiseAbs().maxCoeff() > 0.0 && operator_norm(skew) > tol) {
    throw Error(ErrorCode::NotSelfAdjoint, "periodic reduction needs y = y*");
  }
  const CMatrix g = amplified_grading(rep, y.dim());
  if (operator_norm(g * a + a * g) > tol) {
    throw Error(ErrorCode::NotOdd, "y does not anticommute with the grading");
  }

  const Index h = y.dim() / 2;
  CMatrix x;
  if (rep.odd) {
    // CCl_{2m+1} sits block-diagonally; odd elements are (x, -x).
    if (operator_norm(a.topRightCorner(h, h)) > tol) {
      throw Error(ErrorCode::NotOdd,
                  "y has off-diagonal blocks outside CCl_" +
                      std::to_string(p + 1));
    }
    x = a.topLeftCorner(h, h);
  } else {
    x = a.topRightCorner(h, h);
  }

  const Index outer = r / 2;  // 2^m
  const Index n_y = y.block_size();
  if (n_y % r == 0) {
    const Index n = n_y / r;
    CMatrix reordered = move_outer_inside(x, outer, n, y.ambient_dim());
    return OperatorElement(std::move(reordered), outer * y.ambient_dim(), n,
                           rep.odd, policy);
  }
  return OperatorElement(std::move(x), h, 1, rep.odd, policy);
}

DoublingCheck doubling_similarity(const OperatorElement& x, double s,
                                  DoublingForm form,
                                  const TolerancePolicy& policy) {
  if (form == DoublingForm::V0 && !x.self_adjoint()) {
    throw Error(ErrorCode::ModeMismatch, "V0 doubling needs a self-adjoint x");
  }
  const Index k = x.dim();
  const CMatrix& a = x.matrix();
  const CMatrix sI = s * identity(k);
  const CMatrix zero = CMatrix::Zero(k, k);

  DoublingCheck out;
  out.four_block.resize(4 * k, 4 * k);
  if (form == DoublingForm::V0) {
    out.four_block << sI, zero, a, zero,
                      zero, sI, zero, -a,
                      a, zero, sI, zero,
                      zero, -a, zero, sI;
  } else {
    out.four_block << sI, zero, zero, a,
                      zero, sI, a.adjoint(), zero,
                      zero, a, sI, zero,
                      a.adjoint(), zero, zero, sI;
  }
  out.doubled = kron(bordered(x, s), identity(2));

  // Block b of the four-block layout goes to row r (of bordered) and copy c
  // (of I_2) at position 2 r + c, with an optional sign.
  struct Target { Index row_offset; Index copy; double sign; };
  const Target v0[4] = {{0, 0, 1.0}, {0, 1, 1.0}, {k, 0, 1.0}, {k, 1, -1.0}};
  const Target v1[4] = {{0, 0, 1.0}, {k, 1, 1.0}, {0, 1, 1.0}, {k, 0, 1.0}};
  const Target* map = form == DoublingForm::V0 ? v0 : v1;

  out.conjugator = CMatrix::Zero(4 * k, 4 * k);
  for (Index b = 0; b < 4; ++b) {
    for (Index i = 0; i < k; ++i) {
      const Target& t = map[b];
      out.conjugator(2 * (t.row_offset + i) + t.copy, b * k + i) = t.sign;
    }
  }
  out.residual =
      similarity_residual(out.four_block, out.doubled, out.conjugator, policy);
  out.similar = verify_similarity(out.four_block, out.doubled, out.conjugator,
                                  policy);
  return out;
}

bool verify_doubling(const OperatorElement& x, double s,
                     const TolerancePolicy& policy) {
  bool ok = doubling_similarity(x, s, DoublingForm::V1, policy).similar;
  if (x.self_adjoint()) {
    ok = ok && doubling_similarity(x, s, DoublingForm::V0, policy).similar;
  }
  return ok;
}

}  // namespace gapk
