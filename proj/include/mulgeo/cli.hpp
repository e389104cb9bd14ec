#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mulgeo/curve.hpp"

namespace mulgeo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one command line (without the program name). Results go to `out` or to
/// the --out file; diagnostics go to `err` as one line
///   mulgeo: error[<kind>]: <message>
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Per-sample analysis table ("csv" or "json") as printed by analyze and
/// construct. Throws the analysis errors of frenet.
std::string render_analysis(const MulCurve& curve, const AnalysisOptions& options, const std::string& format);

/// CSV header shared by analyze and construct.
const char* csv_header() noexcept;

}  // namespace mulgeo::cli
