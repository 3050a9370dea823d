#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace gapk {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Numerical proxy for the strict inequalities of the theory.
///
/// The zero threshold of a matrix M is
///   tau(M) = factor * dim(M) * eps * ||M||_2
/// and every "invertible", "zero eigenvalue" or "gapped" verdict in the
/// library is taken relative to it.
struct TolerancePolicy {
  double zero_threshold_factor = 16.0;

  double threshold(Index dim, double norm) const;
  double threshold(const CMatrix& m) const;

  /// Policy with the factor read from GAPK_TOL_FACTOR when set and valid.
  static TolerancePolicy from_env();
};

struct Inertia {
  Index n_plus = 0;
  Index n_zero = 0;
  Index n_minus = 0;

  Index dim() const { return n_plus + n_zero + n_minus; }
  Index signature() const { return n_plus - n_minus; }
};

struct SpectrumSummary {
  std::vector<double> eigenvalues;  // ascending
  Inertia inertia;
  Index signature = 0;
  double min_abs_eig = 0.0;
  double tau = 0.0;
};

bool is_finite(const CMatrix& m);
void require_finite(const CMatrix& m);
void require_square(const CMatrix& m);

/// Ascending eigenvalues of a (numerically) self-adjoint matrix. The input
/// is symmetrized as (M + M*)/2; asymmetry above tau(M) is an error.
std::vector<double> eig_hermitian(const CMatrix& m,
                                  const TolerancePolicy& policy = {});

/// Eigenvalues together with the inertia counted against tau(M).
SpectrumSummary inertia_signature(const CMatrix& m,
                                  const TolerancePolicy& policy = {},
                                  bool require_invertible = false);

/// Largest singular value.
double operator_norm(const CMatrix& m);

/// Smallest singular value.
double min_singular_value(const CMatrix& m);

CMatrix identity(Index n);
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// ||P A P^-1 - B||_2. Throws SingularConjugator if P is not certifiably
/// invertible.
double similarity_residual(const CMatrix& a, const CMatrix& b,
                           const CMatrix& p,
                           const TolerancePolicy& policy = {});

/// True iff ||P A P^-1 - B||_2 <= factor * dim * eps * max(||A||, ||B||, 1).
bool verify_similarity(const CMatrix& a, const CMatrix& b, const CMatrix& p,
                       const TolerancePolicy& policy = {});

/// Haar-distributed unitary from a seeded complex Gaussian (QR with phase fix).
CMatrix random_unitary(Index n, std::uint64_t seed);

/// Seeded complex Gaussian matrix with unit-variance entries.
CMatrix random_gaussian(Index rows, Index cols, std::uint64_t seed);

}  // namespace gapk
