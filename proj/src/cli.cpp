#include "gapk/cli.hpp"

#include "gapk/clifford.hpp"
#include "gapk/error.hpp"
#include "gapk/gap.hpp"
#include "gapk/homotopy.hpp"
#include "gapk/io.hpp"
#include "gapk/localizer.hpp"
#include "gapk/models.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

namespace gapk::cli {

namespace {

using io::Json;

struct Shared {
  std::optional<double> tol_factor;
  std::string out;
  std::uint64_t seed = 0;
  std::string plot;
};

struct ModelArgs {
  std::string config;
  std::string matrix;
  std::string dirac;
  bool even = false;
  Index block_size = 1;
  int m = 1;
  int N = 3;
  std::optional<double> kappa;
  std::optional<double> s;
  std::optional<double> delta;
};

struct Model {
  SpectralTriple triple;
  OperatorElement x;
  double delta = 0.0;
  Json description;
};

TolerancePolicy make_policy(const Shared& shared) {
  TolerancePolicy policy = TolerancePolicy::from_env();
  if (shared.tol_factor) policy.zero_threshold_factor = *shared.tol_factor;
  return policy;
}

// Self-adjointness is detected against the policy threshold.
OperatorElement element_from(CMatrix m, Index block_size,
                             const TolerancePolicy& policy) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NotSquare, "element matrices must be square");
  }
  if (block_size < 1 || m.rows() % block_size != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "block size " + std::to_string(block_size) +
                    " does not divide dimension " + std::to_string(m.rows()));
  }
  const CMatrix skew = m - m.adjoint();
  const bool sa = skew.cwiseAbs().maxCoeff() == 0.0 ||
                  operator_norm(skew) <= policy.threshold(m);
  const Index d = m.rows() / block_size;
  return OperatorElement(std::move(m), d, block_size, sa, policy);
}

double default_delta(const OperatorElement& x, const TolerancePolicy& policy) {
  const double dmax = max_delta(x, policy);
  return std::isinf(dmax) ? 0.5 : 0.5 * dmax;
}

void load_circle_config(ModelArgs& args) {
  const Json cfg = Json::parse(io::read_text(args.config));
  if (cfg.value("model", std::string()) != "circle") {
    throw Error(ErrorCode::ParseError, "config: only \"model\": \"circle\" is known");
  }
  try {
    args.N = cfg.at("N").get<int>();
    args.m = cfg.at("m").get<int>();
    if (cfg.contains("kappa")) args.kappa = cfg["kappa"].get<double>();
    if (cfg.contains("s")) args.s = cfg["s"].get<double>();
    if (cfg.contains("delta")) args.delta = cfg["delta"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
}

void check_circle_size(int N) {
  if (N < 1) throw Error(ErrorCode::BadArgument, "N must be >= 1");
}

Model build_model(ModelArgs& args, const TolerancePolicy& policy) {
  if (!args.config.empty()) {
    try {
      load_circle_config(args);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
    }
  }
  Model model;
  if (!args.matrix.empty()) {
    if (args.dirac.empty()) {
      throw Error(ErrorCode::BadArgument, "--matrix needs --dirac");
    }
    CMatrix d = io::read_matrix(args.dirac);
    model.triple = args.even ? SpectralTriple::even(std::move(d), "dirac-file")
                             : SpectralTriple::odd(std::move(d), "dirac-file",
                                                   policy);
    model.x = element_from(io::read_matrix(args.matrix), args.block_size, policy);
    model.description = {{"model", "matrix"},
                         {"parity", std::string(to_string(model.triple.parity()))},
                         {"ambient_dim", model.x.ambient_dim()},
                         {"block_size", model.x.block_size()}};
  } else {
    check_circle_size(args.N);
    model.triple = circle_dirac(args.N);
    model.x = circle_unitary_truncation(args.m, args.N);
    model.description = {{"model", "circle"}, {"N", args.N}, {"m", args.m}};
  }
  model.delta = args.delta ? *args.delta : default_delta(model.x, policy);
  return model;
}

void write_plot(const std::string& path, const std::vector<double>& eigenvalues,
                double tau, const std::string& title) {
  if (path.empty()) return;
  std::filesystem::path svg(path);
  io::write_text(svg, io::eigenvalue_svg(eigenvalues, tau, title));
  std::filesystem::path csv = svg;
  csv.replace_extension(".csv");
  io::write_text(csv, io::eigenvalues_to_csv(eigenvalues));
}

Json spectrum_json(const SpectrumSummary& s) {
  Json out;
  out["eigenvalues"] = s.eigenvalues;
  out["inertia"] = {{"n_plus", s.inertia.n_plus},
                    {"n_zero", s.inertia.n_zero},
                    {"n_minus", s.inertia.n_minus}};
  out["signature"] = s.signature;
  out["min_abs_eig"] = s.min_abs_eig;
  out["tau"] = s.tau;
  return out;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

struct Outcome {
  Json result;
  int code = kExitOk;
};

// --- subcommands -----------------------------------------------------------

struct GapArgs {
  std::string matrix;
  double delta = 0.0;
  std::string mode = "spectrum";
  int grid = 9;
  Index block_size = 1;
};

Outcome run_gap_check(const GapArgs& a, const Shared& shared,
                      const TolerancePolicy& policy) {
  const GapMode mode = gap_mode_from_string(a.mode);
  OperatorElement x = element_from(io::read_matrix(a.matrix), a.block_size, policy);
  if (mode == GapMode::self_adjoint && !x.self_adjoint()) {
    throw Error(ErrorCode::NotSelfAdjoint,
                "self_adjoint mode needs a self-adjoint matrix");
  }
  const GapCertificate cert = delta_singular_check(x, a.delta, mode, a.grid, policy);
  Outcome o;
  o.result = io::to_json(cert);
  o.result["ambient_dim"] = x.ambient_dim();
  o.result["block_size"] = x.block_size();
  o.code = cert.verdict ? kExitOk : kExitVerdictFalse;
  write_plot(shared.plot, cert.sigma_x, cert.tau, "Sigma_x");
  return o;
}

Outcome run_localizer(ModelArgs& args, const Shared& shared,
                      const TolerancePolicy& policy) {
  const Model model = build_model(args, policy);
  std::optional<ValidRegion> region;
  try {
    region = valid_region(model.triple, model.x, model.delta, policy);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotGapped || !args.kappa) throw;
  }
  const double kappa = args.kappa ? *args.kappa : region->kappa_star;
  const double s = args.s ? *args.s : (args.kappa ? 0.0 : region->s_star);

  const SpectrumSummary reduced = inertia_signature(
      build_reduced(model.triple, model.x, kappa), policy);
  const SpectrumSummary generalized = inertia_signature(
      build_generalized(model.triple, model.x, kappa, s), policy);

  Outcome o;
  o.result["input"] = model.description;
  o.result["kappa"] = kappa;
  o.result["s"] = s;
  o.result["delta"] = model.delta;
  o.result["commutator_norm"] = commutator_norm(model.triple, model.x);
  o.result["region"] = region ? io::to_json(*region) : Json(nullptr);
  o.result["reduced"] = spectrum_json(reduced);
  o.result["generalized"] = spectrum_json(generalized);
  if (region) {
    o.result["gap_bound"] = io::to_json(
        gap_bound_check(model.triple, model.x, kappa, s, model.delta, policy));
  }
  write_plot(shared.plot, reduced.eigenvalues, reduced.tau,
             "localizer eigenvalues, kappa = " + std::to_string(kappa));
  return o;
}

Outcome run_index(ModelArgs& args, std::optional<long> expect,
                  const Shared& shared, const TolerancePolicy& policy) {
  const Model model = build_model(args, policy);
  const LocalizerReport report = localizer_index(model.triple, model.x,
                                                 model.delta, policy,
                                                 args.kappa, args.s);
  Outcome o;
  o.result["input"] = model.description;
  o.result["index"] = report.index;
  o.result["report"] = io::to_json(report);
  if (expect) {
    o.result["expected_index"] = *expect;
    if (report.index != *expect) o.code = kExitVerdictFalse;
  }
  write_plot(shared.plot, report.eigenvalues, report.tau,
             "index " + std::to_string(report.index));
  return o;
}

Outcome run_circle(ModelArgs& args, const Shared& shared,
                   const TolerancePolicy& policy) {
  if (!args.config.empty()) load_circle_config(args);
  check_circle_size(args.N);
  const WindingDemo demo = winding_demo(args.m, args.N, args.kappa, args.s, policy);
  Outcome o;
  o.result["m"] = demo.m;
  o.result["N"] = demo.N;
  o.result["expected_index"] = demo.expected_index;
  o.result["index"] = demo.report.index;
  o.result["signature"] = demo.report.signature;
  o.result["report"] = io::to_json(demo.report);
  o.code = demo.report.index == demo.expected_index ? kExitOk : kExitVerdictFalse;
  std::ostringstream title;
  title << "m = " << args.m << ", N = " << args.N << ", kappa = "
        << demo.report.kappa;
  write_plot(shared.plot, demo.report.eigenvalues, demo.report.tau, title.str());
  return o;
}

struct CliffordArgs {
  int p = 4;
  int pairs = 20;
};

OperatorElement random_element(std::mt19937_64& rng, bool self_adjoint,
                               const TolerancePolicy& policy) {
  std::uniform_int_distribution<int> dim(1, 3);
  const Index d = dim(rng);
  const Index n = dim(rng) % 2 + 1;
  CMatrix a = random_gaussian(d * n, d * n, rng());
  if (self_adjoint) a = CMatrix((a + a.adjoint()) * 0.5);
  return OperatorElement(std::move(a), d, n, self_adjoint, policy);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return (a - b).cwiseAbs().maxCoeff();
}

Outcome run_clifford(const CliffordArgs& a, const Shared& shared,
                     const TolerancePolicy& policy) {
  constexpr double kRelationTol = 1e-12;
  if (a.pairs < 0) throw Error(ErrorCode::BadArgument, "--pairs must be >= 0");
  const CliffordRep rep = clifford_rep(a.p);
  const CliffordResiduals res = clifford_residuals(rep);
  const bool relations_ok = res.max() < kRelationTol;

  std::mt19937_64 rng(shared.seed);
  std::uniform_real_distribution<double> shift(0.05, 1.0);
  double round_trip_error = 0.0;
  bool doubling_ok = true;
  Json pairs = Json::array();
  for (int k = 0; k < a.pairs; ++k) {
    const bool sa = k % 2 == 0;
    const OperatorElement x = random_element(rng, sa, policy);
    const double s = shift(rng);
    const OperatorElement back =
        sa ? reduce_periodic(embed_low(x, LowTarget::V0, policy), 0, policy)
           : reduce_periodic(embed_low(x, LowTarget::V1, policy), 1, policy);
    round_trip_error = std::max(round_trip_error, max_abs_diff(back.matrix(), x.matrix()));
    const bool doubled = verify_doubling(x, s, policy);
    doubling_ok = doubling_ok && doubled;
    pairs.push_back({{"dim", x.dim()}, {"self_adjoint", sa}, {"s", s},
                     {"doubling", doubled}});
  }
  const bool round_trip_ok = round_trip_error <= kRelationTol;

  Outcome o;
  o.result["p"] = a.p;
  o.result["rep_dim"] = rep.rep_dim;
  o.result["generators"] = rep.generators.size();
  o.result["residuals"] = io::to_json(res);
  o.result["relation_tolerance"] = kRelationTol;
  o.result["relations_ok"] = relations_ok;
  o.result["round_trip_error"] = round_trip_error;
  o.result["round_trip_ok"] = round_trip_ok;
  o.result["doubling_ok"] = doubling_ok;
  o.result["pairs"] = std::move(pairs);
  const bool verdict = relations_ok && round_trip_ok && doubling_ok;
  o.result["verdict"] = verdict;
  o.code = verdict ? kExitOk : kExitVerdictFalse;
  return o;
}

Outcome run_homotopy(const std::string& path, const TolerancePolicy& policy) {
  io::Json doc_json;
  try {
    doc_json = Json::parse(io::read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  const io::PathDocument doc = io::path_from_json(doc_json, policy);
  const PathCertificate cert = verify_path(doc.path, doc.delta, doc.mode, policy);
  Outcome o;
  o.result = io::to_json(cert);
  o.result["samples"] = doc.path.samples.size();
  o.code = cert.verdict ? kExitOk : kExitVerdictFalse;
  return o;
}

struct ContractArgs {
  std::string matrix;
  int steps = 33;
  std::string emit_path;
};

Outcome run_contract(const ContractArgs& a, const Shared& shared,
                     const TolerancePolicy& policy) {
  if (a.steps < 2) throw Error(ErrorCode::BadArgument, "--steps must be >= 2");
  const OperatorElement x = element_from(io::read_matrix(a.matrix), 1, policy);
  const Contraction c = contract_invertible(x, a.steps, policy);
  Outcome o;
  o.result["z"] = complex_json(c.z);
  o.result["steps"] = c.path.parameters.size();
  o.result["parameters"] = c.path.parameters;
  o.result["min_singular"] = c.min_singular;
  double lowest = std::numeric_limits<double>::infinity();
  for (double v : c.min_singular) lowest = std::min(lowest, v);
  o.result["min_singular_overall"] = lowest;
  o.result["verdict"] = true;
  if (!a.emit_path.empty()) {
    io::write_text(a.emit_path,
                   io::path_to_json(c.path, 0.0, PathMode::general).dump(2) + "\n");
  }
  if (!shared.plot.empty()) {
    write_plot(shared.plot, c.min_singular, 0.0, "min singular value along the path");
  }
  return o;
}

void add_model_options(CLI::App* sub, ModelArgs& args) {
  sub->add_option("--config", args.config, "circle model JSON config")
      ->check(CLI::ExistingFile);
  sub->add_option("--matrix", args.matrix, "element matrix (.json or .csv)")
      ->check(CLI::ExistingFile);
  sub->add_option("--dirac", args.dirac, "Dirac matrix (D, or D0 with --even)")
      ->check(CLI::ExistingFile);
  sub->add_flag("--even", args.even, "even triple: --dirac holds D0");
  sub->add_option("--block-size", args.block_size, "element blocks n")
      ->check(CLI::PositiveNumber);
  sub->add_option("--m", args.m, "circle winding m");
  sub->add_option("--N", args.N, "circle truncation N");
  sub->add_option("--kappa", args.kappa, "localizer kappa")
      ->check(CLI::PositiveNumber);
  sub->add_option("--s", args.s, "localizer shift s")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--delta", args.delta, "gap size delta")
      ->check(CLI::NonNegativeNumber);
}

Json envelope(const std::string& subcommand, const TolerancePolicy& policy) {
  Json j;
  j["version"] = io::kVersion;
  j["subcommand"] = subcommand;
  j["tolerance"] = io::tolerance_to_json(policy);
  return j;
}

void emit(const Json& report, const Shared& shared, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (shared.out.empty() || shared.out == "-") {
    out << text;
  } else {
    io::write_text(shared.out, text);
  }
}

Json error_json(std::string_view code, const std::string& detail) {
  Json j;
  j["error"] = std::string(code);
  j["detail"] = detail;
  j["version"] = io::kVersion;
  return j;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"gapk: gapped invariants of finite operator systems"};
  app.name("gapk");
  app.require_subcommand(1, 1);

  Shared shared;
  app.add_option("--tol-factor", shared.tol_factor,
                 "zero-threshold factor (default from GAPK_TOL_FACTOR, else 16)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", shared.out, "report path (default stdout)");
  app.add_option("--seed", shared.seed, "seed for randomized checks");
  app.add_option("--plot", shared.plot, "write an SVG plot plus a .csv dump");

  GapArgs gap;
  auto* gap_cmd = app.add_subcommand("gap-check", "delta-singularity certificate");
  gap_cmd->add_option("--matrix", gap.matrix, "matrix (.json or .csv)")
      ->required()
      ->check(CLI::ExistingFile);
  gap_cmd->add_option("--delta", gap.delta, "gap size")
      ->required()
      ->check(CLI::NonNegativeNumber);
  gap_cmd->add_option("--mode", gap.mode, "spectrum | grid | self_adjoint")
      ->check(CLI::IsMember({"spectrum", "grid", "self_adjoint"}));
  gap_cmd->add_option("--grid", gap.grid, "grid points in (0, delta)")
      ->check(CLI::PositiveNumber);
  gap_cmd->add_option("--block-size", gap.block_size, "element blocks n")
      ->check(CLI::PositiveNumber);

  ModelArgs loc;
  auto* loc_cmd = app.add_subcommand("localizer", "localizer spectra at (kappa, s)");
  add_model_options(loc_cmd, loc);

  ModelArgs idx;
  std::optional<long> expect;
  auto* idx_cmd = app.add_subcommand("index", "index pairing via the localizer");
  add_model_options(idx_cmd, idx);
  idx_cmd->add_option("--expect", expect, "exit 2 unless the index equals this");

  ModelArgs circ;
  auto* circ_cmd = app.add_subcommand("circle", "circle winding-number demo");
  circ_cmd->add_option("--config", circ.config, "circle model JSON config")
      ->check(CLI::ExistingFile);
  circ_cmd->add_option("--m", circ.m, "winding m");
  circ_cmd->add_option("--N", circ.N, "truncation N");
  circ_cmd->add_option("--kappa", circ.kappa, "localizer kappa")
      ->check(CLI::PositiveNumber);
  circ_cmd->add_option("--s", circ.s, "localizer shift s")
      ->check(CLI::NonNegativeNumber);

  CliffordArgs cl;
  auto* cl_cmd = app.add_subcommand("clifford-verify", "Clifford relations and round trips");
  cl_cmd->add_option("--p", cl.p, "Clifford degree p")->check(CLI::PositiveNumber);
  cl_cmd->add_option("--pairs", cl.pairs, "random (x, s) pairs");

  std::string path_file;
  auto* hom_cmd = app.add_subcommand("homotopy-verify", "certify a sampled path");
  hom_cmd->add_option("--path", path_file, "path JSON")
      ->required()
      ->check(CLI::ExistingFile);

  ContractArgs con;
  auto* con_cmd = app.add_subcommand("contract", "contract an invertible element");
  con_cmd->add_option("--matrix", con.matrix, "matrix (.json or .csv)")
      ->required()
      ->check(CLI::ExistingFile);
  con_cmd->add_option("--steps", con.steps, "path samples");
  con_cmd->add_option("--emit-path", con.emit_path, "write the path JSON here");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion&) {
    out << io::kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const TolerancePolicy policy = make_policy(shared);
  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    Outcome o;
    if (chosen == gap_cmd) {
      o = run_gap_check(gap, shared, policy);
    } else if (chosen == loc_cmd) {
      o = run_localizer(loc, shared, policy);
    } else if (chosen == idx_cmd) {
      o = run_index(idx, expect, shared, policy);
    } else if (chosen == circ_cmd) {
      o = run_circle(circ, shared, policy);
    } else if (chosen == cl_cmd) {
      o = run_clifford(cl, shared, policy);
    } else if (chosen == hom_cmd) {
      o = run_homotopy(path_file, policy);
    } else {
      o = run_contract(con, shared, policy);
    }
    Json report = envelope(name, policy);
    report["result"] = std::move(o.result);
    emit(report, shared, out);
    return o.code;
  } catch (const Error& e) {
    err << error_json(to_string(e.code()), e.what()).dump() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << error_json("ParseError", e.what()).dump() << "\n";
  } catch (const std::exception& e) {
    err << error_json("Internal", e.what()).dump() << "\n";
  }
  return kExitError;
}

}  // namespace gapk::cli
