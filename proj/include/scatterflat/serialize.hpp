#pragma once

/// JSON/CSV serialization shared by the CLI and the tests: integer matrices
/// as arrays of integer strings, factorizations with exact rational entries,
/// sample grids and peak reports, and the scan manifest written alongside
/// every file output. All floating-point text uses 15 significant digits.

#include <string>

#include "json.hpp"

#include "scatterflat/exactlin.hpp"
#include "scatterflat/poisson.hpp"

namespace scatterflat::serialize {

inline constexpr const char* kToolVersion = "0.1.0";

/// Format a double with 15 significant digits (%.15g).
std::string fmt_double(double x);

/// Parse [["2","1"],["1","1"]]-style JSON (integer strings; bare JSON
/// integers are also accepted) into an IntMatrix. PreconditionError on
/// malformed input or unsupported size.
exactlin::IntMatrix int_matrix_from_json(const nlohmann::json& j);
exactlin::IntMatrix int_matrix_from_string(const std::string& text);

/// Exact rational as "p" or "p/q".
std::string rat_to_string(const exactlin::BigRat& x);

nlohmann::json factorization_to_json(const exactlin::BruhatFactorization& f);

/// CSV with header "zeta,abs,re,im" (or "r,abs,re,im" for r-line samples).
std::string samples_to_csv(const poisson::SpectralSamples& s, const std::string& axis_name);
poisson::SpectralSamples samples_from_csv(const std::string& text);

nlohmann::json peak_report_to_json(const poisson::PeakReport& report);

/// Manifest describing one file output: tool version, full command echo,
/// wall time, and the tolerance set in force. Written to
/// "<output_path>.manifest.json".
void write_manifest(const std::string& output_path, const std::string& command_line,
                    double wall_seconds, const nlohmann::json& config_echo);

/// Write text to a file (PreconditionError on I/O failure).
void write_file(const std::string& path, const std::string& text);

} // namespace scatterflat::serialize
