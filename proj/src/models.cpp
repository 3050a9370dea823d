#include "gapk/models.hpp"

#include "gapk/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace gapk {

SpectralTriple circle_dirac(int N) {
  if (N < 1) throw Error(ErrorCode::BadArgument, "circle truncation needs N >= 1");
  const Index dim = 2 * N + 1;
  CMatrix d = CMatrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) d(i, i) = static_cast<double>(i - N);
  return SpectralTriple::odd(std::move(d), "circle-N" + std::to_string(N));
}

OperatorElement circle_unitary_truncation(int m, int N) {
  if (N < 1) throw Error(ErrorCode::BadArgument, "circle truncation needs N >= 1");
  if (std::abs(m) > 2 * N) {
    throw Error(ErrorCode::WindingTooLarge,
                "|m| = " + std::to_string(std::abs(m)) +
                    " exceeds 2N = " + std::to_string(2 * N));
  }
  const Index dim = 2 * N + 1;
  CMatrix x = CMatrix::Zero(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    const Index k = j + m;
    if (k >= 0 && k < dim) x(j, k) = 1.0;
  }
  return OperatorElement(std::move(x), dim, 1, m == 0);
}

OperatorElement bilateral_shift_truncation(int n) {
  if (n < 2) throw Error(ErrorCode::BadArgument, "shift truncation needs n >= 2");
  CMatrix x = CMatrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) x(i, i + 1) = 1.0;
  return OperatorElement(std::move(x), n, 1, false);
}

OperatorElement random_gapped(Index d, Index n, double delta,
                              bool self_adjoint, std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::BadDelta, "random_gapped needs 0 < delta < 1");
  }
  if (d < 1 || n < 1) {
    throw Error(ErrorCode::BadArgument, "random_gapped needs d, n >= 1");
  }
  const Index k = d * n;
  const CMatrix g =
      random_gaussian(k, k, seed) / std::sqrt(static_cast<double>(k));

  if (self_adjoint) {
    const CMatrix h = (g + g.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    Eigen::VectorXd w = eig.eigenvalues();
    for (Index i = 0; i < w.size(); ++i) {
      const double mag = std::max(std::abs(w(i)), delta);
      w(i) = w(i) < 0.0 ? -mag : mag;
    }
    const CMatrix& v = eig.eigenvectors();
    CMatrix x = v * w.cast<Complex>().asDiagonal() * v.adjoint();
    x = CMatrix((x + x.adjoint()) * 0.5);
    return OperatorElement(std::move(x), d, n, true);
  }

  Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd sv = svd.singularValues();
  for (Index i = 0; i < sv.size(); ++i) sv(i) = std::max(sv(i), delta);
  CMatrix x = svd.matrixU() * sv.cast<Complex>().asDiagonal() *
              svd.matrixV().adjoint();
  return OperatorElement(std::move(x), d, n, false);
}

WindingDemo winding_demo(int m, int N, std::optional<double> kappa,
                         std::optional<double> s,
                         const TolerancePolicy& policy) {
  WindingDemo demo;
  demo.m = m;
  demo.N = N;
  demo.expected_index = m;
  const SpectralTriple triple = circle_dirac(N);
  const OperatorElement x = circle_unitary_truncation(m, N);
  const double dmax = max_delta(x, policy);
  const double delta = std::isinf(dmax) ? 0.5 : 0.5 * dmax;
  demo.report = localizer_index(triple, x, delta, policy, kappa, s);
  return demo;
}

}  // namespace gapk
