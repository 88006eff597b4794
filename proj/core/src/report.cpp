#include "usd/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace usd {

namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string opt4(const std::optional<double>& v) { return v ? fixed4(*v) : "-"; }

// CSV fields are quoted only when they contain a delimiter or quote.
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string emit_text(const CorpusReport& report) {
  std::ostringstream os;
  os << "case                            bound    expected  p_opt    expected  class                 gap      schmidt   povm  status\n";
  os << "------------------------------  -------  --------  -------  --------  --------------------  -------  --------  ----  ------\n";
  char line[256];
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof(line),
                  "%-30s  %7s  %8s  %7s  %8s  %-20s  %7s  %8.1e  %-4s  %s\n",
                  r.name.c_str(), fixed4(r.bound).c_str(), opt4(r.expected_bound).c_str(),
                  fixed4(r.p_opt).c_str(), opt4(r.expected_p_opt).c_str(),
                  r.solution_class.c_str(), fixed4(r.bound_gap).c_str(), r.schmidt_residual,
                  r.povm_valid ? "ok" : "BAD", r.pass ? "pass" : "FAIL");
    os << line;
    for (const auto& f : r.failures) os << "    ! " << f << "\n";
  }
  os << (report.all_pass ? "all cases passed\n" : "FAILURES present\n");
  return os.str();
}

std::string emit_json(const CorpusReport& report) {
  nlohmann::json j;
  j["seed"] = report.seed;
  j["all_pass"] = report.all_pass;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json row;
    row["name"] = r.name;
    row["provenance"] = r.provenance;
    row["bound"] = r.bound;
    row["p_opt"] = r.p_opt;
    row["bound_gap"] = r.bound_gap;
    row["schmidt_residual"] = r.schmidt_residual;
    row["solution_class"] = r.solution_class;
    row["povm_valid"] = r.povm_valid;
    if (r.expected_bound) row["expected_bound"] = *r.expected_bound;
    if (r.expected_p_opt) row["expected_p_opt"] = *r.expected_p_opt;
    if (r.expected_class) row["expected_class"] = *r.expected_class;
    nlohmann::json forms = nlohmann::json::array();
    for (const auto& f : r.closed_forms)
      forms.push_back({{"id", f.id}, {"value", f.value}, {"deviation", f.deviation}});
    row["closed_forms"] = std::move(forms);
    row["pass"] = r.pass;
    row["failures"] = r.failures;
    rows.push_back(std::move(row));
  }
  j["cases"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string emit_csv(const CorpusReport& report) {
  std::ostringstream os;
  os << "name,provenance,bound,expected_bound,p_opt,expected_p_opt,solution_class,"
        "expected_class,bound_gap,schmidt_residual,povm_valid,pass\n";
  os.precision(17);
  for (const auto& r : report.rows) {
    os << csv_escape(r.name) << ',' << csv_escape(r.provenance) << ',' << r.bound << ',';
    if (r.expected_bound) os << *r.expected_bound;
    os << ',' << r.p_opt << ',';
    if (r.expected_p_opt) os << *r.expected_p_opt;
    os << ',' << r.solution_class << ',';
    if (r.expected_class) os << *r.expected_class;
    os << ',' << r.bound_gap << ',' << r.schmidt_residual << ','
       << (r.povm_valid ? "true" : "false") << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
  if (name == "text") return ReportFormat::text;
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw std::invalid_argument("unknown report format: " + name);
}

std::string emit_report(const CorpusReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::text: return emit_text(report);
    case ReportFormat::json: return emit_json(report);
    case ReportFormat::csv: return emit_csv(report);
  }
  throw std::invalid_argument("unknown report format");
}

}  // namespace usd
