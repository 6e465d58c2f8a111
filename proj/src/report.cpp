#include "ncg/report.hpp"

#include <sstream>

namespace ncg::report {

ordered_json mat_json(const Mat& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json to_json(const Report& r) {
  ordered_json j;
  j["schema"] = kSchema;
  j["engine"] = {{"version", kEngineVersion}, {"gamma-basis", kGammaBasis}};
  j["command"] = r.command;
  j["model"] = r.model;
  j["generations"] = r.generations;
  ordered_json checks = ordered_json::array();
  for (const CheckLine& c : r.checks) {
    ordered_json line;
    line["name"] = c.name;
    line["status"] = c.status;
    line["expected"] = c.expected;
    if (!c.constraints.empty()) line["constraints"] = c.constraints;
    checks.push_back(std::move(line));
  }
  j["checks"] = std::move(checks);
  j["artifacts"] = r.artifacts;
  j["expectations-met"] = r.expectations_met;
  return j;
}

std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

std::string render_markdown(const Report& r) {
  std::ostringstream out;
  out << "# ncg " << r.command;
  if (!r.model.empty()) out << ' ' << r.model;
  out << "\n\n";
  out << "engine " << kEngineVersion << ", gamma basis " << kGammaBasis << ", generations "
      << r.generations << "\n\n";
  if (!r.checks.empty()) {
    out << "| check | status | expected |\n|---|---|---|\n";
    for (const CheckLine& c : r.checks)
      out << "| " << c.name << " | " << c.status << " | " << c.expected << " |\n";
    out << '\n';
    for (const CheckLine& c : r.checks) {
      if (c.constraints.empty()) continue;
      out << "constraints of " << c.name << ":\n\n";
      for (const std::string& p : c.constraints) out << "- `" << p << " = 0`\n";
      out << '\n';
    }
  }
  if (!r.artifacts.empty()) out << "```json\n" << r.artifacts.dump(2) << "\n```\n\n";
  out << "expectations met: " << (r.expectations_met ? "yes" : "no") << '\n';
  return out.str();
}

}  // namespace ncg::report
