#pragma once

#include "gapk/clifford.hpp"
#include "gapk/gap.hpp"
#include "gapk/homotopy.hpp"
#include "gapk/linalg.hpp"
#include "gapk/localizer.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace gapk::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

/// One "re,im" pair per cell, one row per line: "re,im,re,im,...".
CMatrix matrix_from_csv(const std::string& text);
std::string matrix_to_csv(const CMatrix& m);

/// Reads .json or .csv by extension.
CMatrix read_matrix(const std::filesystem::path& path);

/// Number or the string "inf" / "-inf".
Json real_to_json(double value);
double real_from_json(const Json& j);

Json tolerance_to_json(const TolerancePolicy& policy);

Json to_json(const GapCertificate& cert);
Json to_json(const LocalizerSample& sample);
Json to_json(const LocalizerReport& report);
Json to_json(const ValidRegion& region);
Json to_json(const GapBoundCheck& check);
Json to_json(const PathCertificate& cert);
Json to_json(const CliffordResiduals& residuals);

/// {"delta": d, "mode": "sa"|"general", "samples": [{"t": t, "matrix": {...}}]}
/// with optional "ambient_dim" / "block_size" applied to every sample.
struct PathDocument {
  double delta = 0.0;
  PathMode mode = PathMode::general;
  HomotopyPath path;
};

PathDocument path_from_json(const Json& j, const TolerancePolicy& policy = {});
Json path_to_json(const HomotopyPath& path, double delta, PathMode mode);

/// One eigenvalue per line.
std::string eigenvalues_to_csv(const std::vector<double>& eigenvalues);

/// Scatter of localizer eigenvalues in ascending order: negative ones blue,
/// positive ones black, and the signature surplus (the unmatched eigenvalues
/// closest to zero on the majority side) as red diamonds.
std::string eigenvalue_svg(const std::vector<double>& eigenvalues, double tau,
                           const std::string& title);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace gapk::io
