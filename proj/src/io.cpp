#include "gapk/io.hpp"

#include "gapk/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace gapk::io {

namespace {

std::string format_real(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string format_short(double v) {
  std::ostringstream os;
  os << std::setprecision(4) << v;
  return os.str();
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
  }
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["data"] = std::move(data);
  return out;
}

CMatrix matrix_from_json(const Json& j) {
  try {
    const Index rows = j.at("rows").get<Index>();
    const Index cols = j.at("cols").get<Index>();
    const Json& data = j.at("data");
    if (rows < 1 || cols < 1 || !data.is_array() ||
        static_cast<Index>(data.size()) != rows * cols) {
      throw Error(ErrorCode::ParseError,
                  "matrix JSON needs rows*cols entries in \"data\"");
    }
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      for (Index c = 0; c < cols; ++c) {
        const Json& cell = data.at(static_cast<std::size_t>(i * cols + c));
        if (cell.is_number()) {
          m(i, c) = Complex(cell.get<double>(), 0.0);
        } else if (cell.is_array() && cell.size() == 2) {
          m(i, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
        } else {
          throw Error(ErrorCode::ParseError,
                      "matrix entries must be [re, im] pairs");
        }
      }
    }
    require_finite(m);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("matrix JSON: ") + e.what());
  }
}

CMatrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<Complex>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::replace(line.begin(), line.end(), ';', ' ');
    std::istringstream fields(line);
    std::vector<double> numbers;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        numbers.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad CSV number '" + token + "'");
      }
    }
    if (numbers.empty()) continue;
    if (numbers.size() % 2 != 0) {
      throw Error(ErrorCode::ParseError, "CSV rows must hold re,im pairs");
    }
    std::vector<Complex> row;
    for (std::size_t k = 0; k < numbers.size(); k += 2) {
      row.emplace_back(numbers[k], numbers[k + 1]);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, "empty CSV matrix");
  const std::size_t cols = rows.front().size();
  CMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorCode::ParseError, "ragged CSV matrix");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(i), static_cast<Index>(c)) = rows[i][c];
    }
  }
  require_finite(m);
  return m;
}

std::string matrix_to_csv(const CMatrix& m) {
  std::ostringstream os;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_real(m(i, j).real()) << ',' << format_real(m(i, j).imag());
    }
    os << '\n';
  }
  return os.str();
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  }
  out << text;
}

CMatrix read_matrix(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  if (path.extension() == ".csv") return matrix_from_csv(text);
  try {
    return matrix_from_json(Json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

Json real_to_json(double value) {
  if (std::isinf(value)) return value > 0 ? Json("inf") : Json("-inf");
  return Json(value);
}

double real_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw Error(ErrorCode::ParseError, "expected a number, got '" + s + "'");
  }
  if (!j.is_number()) throw Error(ErrorCode::ParseError, "expected a number");
  return j.get<double>();
}

Json tolerance_to_json(const TolerancePolicy& policy) {
  Json out;
  out["zero_threshold_factor"] = policy.zero_threshold_factor;
  out["rule"] = "factor * dim * eps * ||M||_2";
  return out;
}

Json to_json(const GapCertificate& cert) {
  Json out;
  out["sigma_x"] = cert.sigma_x;
  out["delta_max"] = real_to_json(cert.delta_max);
  out["delta"] = cert.queried_delta;
  out["verdict"] = cert.verdict;
  out["marginal"] = cert.marginal;
  out["mode"] = std::string(to_string(cert.mode));
  out["tau"] = cert.tau;
  Json gaps = Json::array();
  for (const auto& [s, g] : cert.s_gaps) gaps.push_back(Json::array({s, g}));
  out["s_gaps"] = std::move(gaps);
  return out;
}

Json to_json(const LocalizerSample& sample) {
  Json out;
  out["kappa"] = sample.kappa;
  out["s"] = sample.s;
  out["signature"] = sample.signature;
  out["min_abs_eig"] = sample.min_abs_eig;
  out["invertible"] = sample.invertible;
  out["generalized_signature"] = sample.generalized_signature;
  out["generalized_min_abs_eig"] = sample.generalized_min_abs_eig;
  out["generalized_invertible"] = sample.generalized_invertible;
  return out;
}

Json to_json(const LocalizerReport& report) {
  Json out;
  out["parity"] = std::string(to_string(report.parity));
  out["kappa"] = report.kappa;
  out["s"] = report.s;
  out["delta"] = report.delta;
  out["eigenvalues"] = report.eigenvalues;
  out["inertia"] = {{"n_plus", report.inertia.n_plus},
                    {"n_zero", report.inertia.n_zero},
                    {"n_minus", report.inertia.n_minus}};
  out["signature"] = report.signature;
  out["generalized_signature"] = report.generalized_signature;
  out["commutator_norm"] = report.commutator_norm;
  out["gap_bound"] = report.gap_bound;
  out["min_abs_eig"] = report.min_abs_eig;
  out["tau"] = report.tau;
  out["index"] = report.index;
  Json samples = Json::array();
  for (const auto& s : report.samples) samples.push_back(to_json(s));
  out["samples"] = std::move(samples);
  return out;
}

Json to_json(const ValidRegion& region) {
  Json out;
  out["commutator_norm"] = region.commutator_norm;
  out["delta"] = region.delta;
  out["unbounded"] = region.unbounded;
  out["s_star"] = region.s_star;
  out["kappa_star"] = region.kappa_star;
  out["kappa_max_at_s_star"] = real_to_json(region.kappa_max(region.s_star));
  return out;
}

Json to_json(const GapBoundCheck& check) {
  Json out;
  out["holds"] = check.holds;
  out["min_eig_sq"] = check.min_eig_sq;
  out["bound"] = check.bound;
  out["margin"] = check.margin;
  out["tau"] = check.tau;
  return out;
}

Json to_json(const PathCertificate& cert) {
  Json out;
  out["verdict"] = cert.verdict;
  out["delta"] = cert.delta;
  out["mode"] = std::string(to_string(cert.mode));
  if (cert.failure) {
    out["failure"] = {{"code", std::string(to_string(cert.failure->code))},
                      {"index", cert.failure->index}};
  } else {
    out["failure"] = nullptr;
  }
  out["sample_verdicts"] = cert.sample_verdicts;
  Json dmax = Json::array();
  for (double v : cert.delta_max_trace) dmax.push_back(real_to_json(v));
  out["delta_max_trace"] = std::move(dmax);
  Json gaps = Json::array();
  for (double v : cert.gap_trace) gaps.push_back(real_to_json(v));
  out["gap_trace"] = std::move(gaps);
  out["step_norms"] = cert.step_norms;
  out["step_guard"] = real_to_json(cert.step_guard);
  return out;
}

Json to_json(const CliffordResiduals& r) {
  Json out;
  out["anticommutation"] = r.anticommutation;
  out["self_adjoint"] = r.self_adjoint;
  out["grading_anticommutation"] = r.grading_anticommutation;
  out["grading_involution"] = r.grading_involution;
  out["max"] = r.max();
  return out;
}

PathDocument path_from_json(const Json& j, const TolerancePolicy& policy) {
  try {
    PathDocument doc;
    doc.delta = real_from_json(j.at("delta"));
    doc.mode = path_mode_from_string(j.value("mode", std::string("general")));
    const Json& samples = j.at("samples");
    if (!samples.is_array()) {
      throw Error(ErrorCode::ParseError, "\"samples\" must be an array");
    }
    for (const Json& s : samples) {
      CMatrix m = matrix_from_json(s.at("matrix"));
      const Index d = j.value("ambient_dim", static_cast<Index>(m.rows()));
      const Index n = j.value("block_size", static_cast<Index>(1));
      const bool sa = doc.mode == PathMode::sa;
      doc.path.parameters.push_back(s.at("t").get<double>());
      if (sa) {
        doc.path.samples.emplace_back(std::move(m), d, n, true, policy);
      } else {
        doc.path.samples.emplace_back(std::move(m), d, n, false, policy);
      }
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("path JSON: ") + e.what());
  }
}

Json path_to_json(const HomotopyPath& path, double delta, PathMode mode) {
  Json out;
  out["delta"] = delta;
  out["mode"] = std::string(to_string(mode));
  if (!path.samples.empty()) {
    out["ambient_dim"] = path.samples.front().ambient_dim();
    out["block_size"] = path.samples.front().block_size();
  }
  Json samples = Json::array();
  for (std::size_t k = 0; k < path.samples.size(); ++k) {
    samples.push_back({{"t", path.parameters[k]},
                       {"matrix", matrix_to_json(path.samples[k].matrix())}});
  }
  out["samples"] = std::move(samples);
  return out;
}

std::string eigenvalues_to_csv(const std::vector<double>& eigenvalues) {
  std::ostringstream os;
  for (double v : eigenvalues) os << format_real(v) << '\n';
  return os.str();
}

std::string eigenvalue_svg(const std::vector<double>& eigenvalues, double tau,
                           const std::string& title) {
  const double width = 640.0;
  const double height = 420.0;
  const double left = 60.0;
  const double right = 20.0;
  const double top = 40.0;
  const double bottom = 40.0;

  std::vector<double> ev = eigenvalues;
  std::sort(ev.begin(), ev.end());
  const auto n = ev.size();
  std::size_t n_minus = 0;
  std::size_t n_plus = 0;
  for (double v : ev) {
    if (v < -tau) ++n_minus;
    if (v > tau) ++n_plus;
  }
  // Surplus: the unmatched eigenvalues nearest zero on the majority side.
  std::vector<bool> surplus(n, false);
  if (n_plus > n_minus) {
    std::size_t first = 0;
    while (first < n && ev[first] <= tau) ++first;
    for (std::size_t k = 0; k < n_plus - n_minus; ++k) surplus[first + k] = true;
  } else if (n_minus > n_plus) {
    std::size_t last = n_minus;  // one past the last negative
    for (std::size_t k = 0; k < n_minus - n_plus; ++k) surplus[last - 1 - k] = true;
  }

  double ymax = tau;
  for (double v : ev) ymax = std::max(ymax, std::abs(v));
  ymax = ymax > 0.0 ? 1.05 * ymax : 1.0;
  const auto px = [&](std::size_t i) {
    const double span = n > 1 ? static_cast<double>(n - 1) : 1.0;
    return left + (width - left - right) * static_cast<double>(i) / span;
  };
  const auto py = [&](double v) {
    return top + (height - top - bottom) * (0.5 - 0.5 * v / ymax);
  };

  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
     << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"14\">"
     << title << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << py(0.0) << "\" x2=\""
     << width - right << "\" y2=\"" << py(0.0)
     << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
     << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
  for (double tick : {-ymax / 1.05, 0.0, ymax / 1.05}) {
    os << "<text x=\"" << left - 6 << "\" y=\"" << py(tick) + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << format_short(tick) << "</text>\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double x = px(i);
    const double y = py(ev[i]);
    if (surplus[i]) {
      os << "<polygon class=\"surplus\" points=\"" << x << ',' << y - 6 << ' '
         << x + 6 << ',' << y << ' ' << x << ',' << y + 6 << ' ' << x - 6
         << ',' << y << "\" fill=\"red\"/>\n";
    } else {
      const char* colour = ev[i] < -tau ? "#1f4fb4" : (ev[i] > tau ? "black" : "#999");
      const char* cls = ev[i] < -tau ? "negative" : (ev[i] > tau ? "positive" : "zero");
      os << "<circle class=\"" << cls << "\" cx=\"" << x << "\" cy=\"" << y
         << "\" r=\"3.5\" fill=\"" << colour << "\"/>\n";
    }
  }
  os << "<text x=\"" << width - right << "\" y=\"" << height - 12
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
     << "n+ = " << n_plus << ", n- = " << n_minus << ", Sig = "
     << static_cast<long>(n_plus) - static_cast<long>(n_minus) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace gapk::io
