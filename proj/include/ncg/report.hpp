#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ncg/linalg.hpp"

namespace ncg::report {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "ncg-report/1";
inline constexpr const char* kEngineVersion = "1.0.0";
// Gamma conventions of the engine: gamma5 diagonal, gamma^mu off-diagonal.
inline constexpr const char* kGammaBasis = "chiral";

// One named check with its actual and expected verdicts.  "-" as expected
// status means the run is informational and never fails the invocation.
struct CheckLine {
  std::string name;
  std::string status;    // PASS | FAIL | CONSTRAINED
  std::string expected;  // PASS | FAIL | CONSTRAINED | -
  std::vector<std::string> constraints;  // generators, for CONSTRAINED lines
};

// A full invocation result.  Serialization is canonical: fixed key order,
// matrices as row-major arrays of exact entry strings, so identical inputs
// produce byte-identical output.
struct Report {
  std::string command;
  std::string model;
  int generations = 1;
  std::vector<CheckLine> checks;
  ordered_json artifacts = ordered_json::object();
  bool expectations_met = true;
};

ordered_json mat_json(const Mat& m);
ordered_json to_json(const Report& r);
std::string render_json(const Report& r);
std::string render_markdown(const Report& r);

}  // namespace ncg::report
