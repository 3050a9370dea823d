#pragma once

#include "gapk/gap.hpp"
#include "gapk/localizer.hpp"

#include <cstdint>
#include <optional>

namespace gapk {

/// Truncated circle Dirac operator -i d/dt on span{e_-N, ..., e_N}:
/// D = diag(-N, ..., N) in ascending Fourier order.
SpectralTriple circle_dirac(int N);

/// Compression P_N u P_N of u(t) = e^{imt}: entry (j, k) = 1 iff k = j + m
/// (Fourier indices -N..N), i.e. ones on the m-th superdiagonal.
OperatorElement circle_unitary_truncation(int m, int N);

/// n x n compression of the bilateral shift: the nilpotent upper shift J_n.
OperatorElement bilateral_shift_truncation(int n);

/// Seeded element of M_n(M_d) that is delta-singular by construction: the
/// singular values (or |eigenvalues| when self_adjoint) of a Gaussian draw
/// are clamped up to delta.
OperatorElement random_gapped(Index d, Index n, double delta,
                              bool self_adjoint, std::uint64_t seed);

struct WindingDemo {
  int m = 0;
  int N = 0;
  long expected_index = 0;
  LocalizerReport report;
};

/// Circle triple + Toeplitz truncation through the localizer index.
/// Without kappa the default region point is used; with kappa, s defaults
/// to 0. delta is half the element's max_delta.
WindingDemo winding_demo(int m, int N, std::optional<double> kappa = std::nullopt,
                         std::optional<double> s = std::nullopt,
                         const TolerancePolicy& policy = {});

}  // namespace gapk
