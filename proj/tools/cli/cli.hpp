#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "instance.hpp"
#include "polyrank/harmonic.hpp"
#include "polyrank/rank.hpp"

namespace polyrank::cli {

inline constexpr const char* kReportSchema = "polyrank-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kInternal = 1, kBudget = 2, kInput = 3 };

using nlohmann::ordered_json;

// Exact values travel as strings; doubles only where the math is approximate.
ordered_json to_json(const Rational& r);
ordered_json to_json(const BigInt& b);
ordered_json to_json(std::complex<double> z);
ordered_json to_json_real(double x);  // "inf" / "-inf" / "nan" as strings
ordered_json to_json(const Point& p);
ordered_json to_json(const RankEstimate& e);

/// Structural check of a report: schema tag, required sections, and every
/// {num, den} pair holding integer text.
bool validate_report(const ordered_json& report, std::string* why = nullptr);

/// argv without the program name. Writes the JSON report (or an error
/// object) to `out` and diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyrank::cli
