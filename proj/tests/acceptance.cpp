// Acceptance suite: one PASS/FAIL line per criterion.

#include "gapk/clifford.hpp"
#include "gapk/error.hpp"
#include "gapk/gap.hpp"
#include "gapk/homotopy.hpp"
#include "gapk/localizer.hpp"
#include "gapk/models.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace gapk;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what;
      pass = false;
    }
  }
};

CMatrix gaussian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

CMatrix random_diagonal(Index d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  CMatrix m = CMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) m(i, i) = u(rng);
  return m;
}

// ---------------------------------------------------------------------------

void circle_figure(Verdict& v) {
  const WindingDemo a = winding_demo(1, 3, 1.0, 0.0);
  const WindingDemo b = winding_demo(2, 3, 0.1, 0.0);
  v.require(a.report.signature == 2, "Sig(L) for m=1 is " + std::to_string(a.report.signature));
  v.require(a.report.index == 1, "index for m=1 is " + std::to_string(a.report.index));
  v.require(b.report.index == 2, "index for m=2 is " + std::to_string(b.report.index));
  v.detail << (v.pass ? "" : "; ") << "m=1: Sig " << a.report.signature << ", index "
           << a.report.index << "; m=2: index " << b.report.index;
}

void winding_sweep(Verdict& v) {
  for (int m = -3; m <= 3; ++m) {
    if (m == 0) continue;
    const long idx = winding_demo(m, 8).report.index;
    v.require(idx == m, "m=" + std::to_string(m) + " gave " + std::to_string(idx));
    v.detail << (v.pass ? "" : ";") << " " << m << "->" << idx;
  }
}

void shift_bordered(Verdict& v) {
  double worst = 0.0;
  for (int n = 3; n <= 8; ++n) {
    const OperatorElement x = bilateral_shift_truncation(n);
    for (double s : {0.1, 0.3, 0.5}) {
      const std::vector<double> eig = eig_hermitian(bordered(x, s));
      int counts[3] = {0, 0, 0};
      const double values[3] = {s - 1.0, s, s + 1.0};
      for (double e : eig) {
        int best = 0;
        for (int k = 1; k < 3; ++k)
          if (std::abs(e - values[k]) < std::abs(e - values[best])) best = k;
        worst = std::max(worst, std::abs(e - values[best]));
        ++counts[best];
      }
      v.require(counts[0] == n - 1 && counts[1] == 2 && counts[2] == n - 1,
                "multiplicities at n=" + std::to_string(n));
    }
  }
  v.require(worst <= 1e-10, "eigenvalue error " + std::to_string(worst));
  v.detail << (v.pass ? "" : "; ") << "max deviation " << worst;
}

void unit_localizer(Verdict& v) {
  const SpectralTriple triple = circle_dirac(3);
  const OperatorElement e = OperatorElement::unit(7);
  double worst = 0.0;
  for (double kappa : {0.1, 0.5, 1.0}) {
    for (double s : {0.2, 0.5, 0.8}) {
      std::vector<double> expected;
      for (int l = -3; l <= 3; ++l) {
        for (double sign : {1.0, -1.0}) {
          const double r = std::sqrt(std::pow(1.0 + sign * s, 2) + kappa * kappa * l * l);
          expected.push_back(r);
          expected.push_back(-r);
        }
      }
      std::sort(expected.begin(), expected.end());
      const SpectrumSummary sp = inertia_signature(build_generalized(triple, e, kappa, s));
      for (std::size_t k = 0; k < expected.size(); ++k)
        worst = std::max(worst, std::abs(sp.eigenvalues[k] - expected[k]));
      v.require(sp.signature == 0, "nonzero signature");
    }
  }
  v.require(worst <= 1e-10, "eigenvalue error " + std::to_string(worst));
  v.detail << (v.pass ? "" : "; ") << "max deviation " << worst;
}

void region_constancy(Verdict& v) {
  int points = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    const Index d = 1 + static_cast<Index>(seed % 6);
    const Index n = 1 + static_cast<Index>(seed % 2);
    const double delta = 0.2 + 0.03 * static_cast<double>(seed);
    const SpectralTriple triple = SpectralTriple::odd(random_diagonal(d, rng));
    const OperatorElement x = random_gapped(d, n, delta, seed % 3 == 0, seed);
    const ValidRegion region = valid_region(triple, x, delta);
    long gen = 0;
    long red = 0;
    bool first = true;
    for (int i = 1; i <= 5; ++i) {
      const double s = delta * i / 6.0;
      const double cap = region.unbounded ? 1.0 : region.kappa_max(s);
      for (int j = 1; j <= 5; ++j) {
        const double kappa = cap * j / 6.0;
        const LocalizerSample p = sample_localizer(triple, x, kappa, s);
        const GapBoundCheck c = gap_bound_check(triple, x, kappa, s, delta);
        ++points;
        v.require(c.holds, "gap bound at seed " + std::to_string(seed));
        v.require(p.generalized_invertible && p.invertible,
                  "singular localizer at seed " + std::to_string(seed));
        if (first) {
          gen = p.generalized_signature;
          red = p.signature;
          first = false;
        }
        v.require(p.generalized_signature == gen && p.signature == red,
                  "signature changed at seed " + std::to_string(seed));
      }
    }
  }
  v.detail << (v.pass ? "" : "; ") << points << " region points";
}

void mode_agreement(Verdict& v) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int cases = 0;
  int disagreements = 0;
  while (cases < 100) {
    const Index n = 1 + static_cast<Index>(u(rng) * 6);
    const OperatorElement x(CMatrix(gaussian(n, rng) / std::sqrt(2.0 * n)), n, 1, false);
    const double dmax = max_delta(x);
    const double tau = sigma_tolerance(x);
    const double delta = 2.0 * u(rng) * std::min(dmax, 1.5);
    if (!(delta > 0.0) || std::abs(delta - dmax) <= 10.0 * tau) continue;
    ++cases;
    const bool a = delta_singular_check(x, delta, GapMode::spectrum).verdict;
    const bool b = delta_singular_check(x, delta, GapMode::grid, 9).verdict;
    if (a != b) ++disagreements;
  }
  v.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  v.detail << (v.pass ? "" : "; ") << cases << " matrices";
}

void clifford_suite(Verdict& v) {
  double worst = 0.0;
  for (int p = 1; p <= 12; ++p) worst = std::max(worst, clifford_residuals(clifford_rep(p)).max());
  v.require(worst < 1e-12, "relation residual " + std::to_string(worst));

  std::mt19937_64 rng(77);
  for (int k = 0; k < 20; ++k) {
    const Index d = 1 + k % 3;
    const Index n = 1 + k % 2;
    CMatrix a = gaussian(d * n, rng);
    const CMatrix h = (a + a.adjoint()) * 0.5;
    const OperatorElement sa(h, d, n, true);
    const OperatorElement gen(a, d, n, false);
    v.require(reduce_periodic(embed_low(sa, LowTarget::V0), 0).matrix() == h, "V0 round trip");
    v.require(reduce_periodic(embed_low(gen, LowTarget::V1), 1).matrix() == a, "V1 round trip");
    const double s = 0.05 + 0.045 * k;
    v.require(verify_doubling(k % 2 ? gen : sa, s), "doubling at pair " + std::to_string(k));
  }
  v.detail << (v.pass ? "" : "; ") << "max relation residual " << worst;
}

CMatrix unitary_flow(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Eigen::VectorXcd ph = (Complex(0, 1) * t * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

void invariance_suite(Verdict& v) {
  const int N = 8;
  const SpectralTriple triple = circle_dirac(N);
  for (int m1 : {-2, -1, 1, 2}) {
    const OperatorElement x = circle_unitary_truncation(m1, N);
    const long base = localizer_index(triple, x, 0.5).index;
    for (int m2 : {-1, 1, 3}) {
      const OperatorElement y = circle_unitary_truncation(m2, N);
      const long sum = localizer_index(triple, direct_sum_class(x, y), 0.5).index;
      v.require(sum == base + localizer_index(triple, y, 0.5).index, "additivity");
    }
    for (Index level = 2; level <= 3; ++level)
      v.require(localizer_index(triple, stabilize(x, level), 0.5).index == base, "stabilization");

    // x_t = u_t x u_t* along a certified path
    std::mt19937_64 rng(static_cast<std::uint64_t>(50 + m1));
    const CMatrix g = gaussian(x.dim(), rng);
    const CMatrix h = CMatrix((g + g.adjoint()) * 0.5) * (0.05 / operator_norm(g));
    HomotopyPath path;
    path.parameters = uniform_parameters(17);
    for (double t : path.parameters) {
      const CMatrix u = unitary_flow(h, t);
      path.samples.emplace_back(CMatrix(u * x.matrix() * u.adjoint()), x.ambient_dim(), 1, false);
    }
    v.require(verify_path(path, 0.5, PathMode::general).verdict, "conjugation path not certified");
    v.require(localizer_index(triple, path.samples.back(), 0.5).index == base, "conjugation changed index");
  }

  const bool invariance_ok = v.pass;
  int compared = 0;
  int mismatched = 0;
  std::string example;
  for (int m : {-2, -1, 1, 2}) {
    const OperatorElement x = circle_unitary_truncation(m, N);
    const LocalizerReport r = localizer_index(triple, x, 0.5);
    const LocalizerSample p = sample_localizer(triple, x, r.kappa, 0.0);
    if (!(p.invertible && p.generalized_invertible)) continue;
    ++compared;
    if (p.generalized_signature != 2 * p.signature) {
      ++mismatched;
      if (example.empty())
        example = "m=" + std::to_string(m) + ": Sig(gen, s=0) = " +
                  std::to_string(p.generalized_signature) + " vs 2*Sig(red) = " +
                  std::to_string(2 * p.signature);
    }
  }
  v.require(mismatched == 0, "Sig(gen, s=0) != 2 Sig(red) in " + std::to_string(mismatched) + "/" +
                                 std::to_string(compared) + " cases (" + example + ")");
  v.detail << (v.pass ? "" : "; ") << "additivity, stabilization, conjugation: "
           << (invariance_ok ? "ok" : "FAILED") << "; signature doubling: "
           << (mismatched == 0 ? "ok" : "FAILED");
}

void contraction_demo(Verdict& v) {
  std::mt19937_64 rng(9);
  double lowest = 1e300;
  for (int k = 0; k < 50; ++k) {
    const Index n = 1 + k % 8;
    const CMatrix a = gaussian(n, rng);
    const Contraction c = contract_invertible(OperatorElement(a, n, 1, false), 65);
    v.require(c.min_singular.size() == 65, "sample count");
    for (double s : c.min_singular) lowest = std::min(lowest, s);
  }
  v.require(lowest > 1e-8, "min singular value " + std::to_string(lowest));
  v.detail << (v.pass ? "" : "; ") << "smallest singular value " << lowest;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Verdict&)> run;
  };
  const Criterion criteria[] = {
      {"circle model m=1,2 at N=3: signature and index", circle_figure},
      {"winding sweep N=8, m in +-1..3", winding_sweep},
      {"shift truncation bordered spectrum {s-1, s, s+1}", shift_bordered},
      {"unit localizer closed-form spectrum, signature 0", unit_localizer},
      {"signature constant on the valid region, gap bound holds", region_constancy},
      {"spectrum and grid gap verdicts agree", mode_agreement},
      {"Clifford relations, round trips, doubling similarity", clifford_suite},
      {"index invariance and signature doubling", invariance_suite},
      {"contraction of invertible matrices", contraction_demo},
  };
  int failed = 0;
  int number = 0;
  for (const Criterion& c : criteria) {
    ++number;
    Verdict v;
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failed;
    std::printf("%s %d %s: %s\n", v.pass ? "PASS" : "FAIL", number, c.name, v.detail.str().c_str());
  }
  std::printf("%d/%d criteria passed\n", number - failed, number);
  return failed == 0 ? 0 : 1;
}
