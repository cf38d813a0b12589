#include "setdist/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace setdist {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// RFC-4180 style quoting: only fields containing a comma, quote, or newline
// are wrapped, with embedded quotes doubled.
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += '"';
  return out;
}

std::string join_conditions(const BoundReport& r) {
  std::string out;
  for (const SideCondition& c : r.side_conditions) {
    if (!out.empty()) out += ';';
    out += c.name;
    out += c.satisfied ? "=ok(" : "=violated(";
    out += fmt_double(c.value);
    out += ')';
  }
  return out;
}

std::string join_notes(const BoundReport& r) {
  std::string out;
  for (const std::string& n : r.notes) {
    if (!out.empty()) out += '|';
    out += n;
  }
  return out;
}

}  // namespace

bool all_pass(const ReportDocument& doc) {
  if (!doc.errors.empty()) return false;
  for (const BoundReport& r : doc.reports)
    if (r.status() != "pass") return false;
  return true;
}

int exit_code(const ReportDocument& doc) {
  if (!doc.errors.empty()) return 2;
  for (const BoundReport& r : doc.reports)
    if (r.status() == "fail") return 1;
  return 0;
}

std::string to_csv(const ReportDocument& doc) {
  std::ostringstream out;
  out << "# suite=" << doc.suite << ",seed=" << doc.seed << '\n';
  out << "record,id,lhs,rhs,margin,tolerance,status,conditions,notes\n";
  for (const BoundReport& r : doc.reports) {
    out << "bound," << csv_escape(r.check_id) << ',' << to_string(r.lhs) << ','
        << to_string(r.rhs) << ',' << to_string(r.margin()) << ','
        << fmt_double(r.tolerance) << ',' << r.status() << ','
        << csv_escape(join_conditions(r)) << ',' << csv_escape(join_notes(r)) << '\n';
  }
  for (const NamedValue& v : doc.values)
    out << "value," << csv_escape(v.name) << ',' << to_string(v.value) << ",,,,,,\n";
  for (const auto& [id, message] : doc.errors)
    out << "error," << csv_escape(id) << ",,,,,error,," << csv_escape(message) << '\n';
  for (const SweepTable& t : doc.tables) {
    out << "\n# table " << t.name << "\nlabel";
    for (const std::string& c : t.columns) out << ',' << csv_escape(c);
    out << '\n';
    for (const SweepTable::Row& row : t.rows) {
      if (row.values.size() != t.columns.size())
        throw std::invalid_argument("sweep table '" + t.name + "' row '" + row.label +
                                    "' has the wrong number of values");
      out << csv_escape(row.label);
      for (double v : row.values) out << ',' << fmt_double(v);
      out << '\n';
    }
  }
  return out.str();
}

std::string to_json(const ReportDocument& doc) {
  nlohmann::json j;
  j["suite"] = doc.suite;
  j["seed"] = doc.seed;
  j["bounds"] = nlohmann::json::array();
  for (const BoundReport& r : doc.reports) {
    nlohmann::json b;
    b["check_id"] = r.check_id;
    b["lhs"] = to_string(r.lhs);
    b["rhs"] = to_string(r.rhs);
    b["margin"] = to_string(r.margin());
    b["tolerance"] = r.tolerance;
    b["status"] = r.status();
    b["applicable"] = r.applicable;
    b["passed"] = r.passed;
    b["conditions"] = nlohmann::json::array();
    for (const SideCondition& c : r.side_conditions)
      b["conditions"].push_back(
          {{"name", c.name}, {"satisfied", c.satisfied}, {"value", c.value}});
    b["notes"] = r.notes;
    j["bounds"].push_back(std::move(b));
  }
  j["values"] = nlohmann::json::array();
  for (const NamedValue& v : doc.values)
    j["values"].push_back({{"name", v.name}, {"value", to_string(v.value)}});
  j["errors"] = nlohmann::json::array();
  for (const auto& [id, message] : doc.errors)
    j["errors"].push_back({{"id", id}, {"status", "error"}, {"message", message}});
  j["tables"] = nlohmann::json::array();
  for (const SweepTable& t : doc.tables) {
    nlohmann::json tab;
    tab["name"] = t.name;
    tab["columns"] = t.columns;
    tab["rows"] = nlohmann::json::array();
    for (const SweepTable::Row& row : t.rows)
      tab["rows"].push_back({{"label", row.label}, {"values", row.values}});
    j["tables"].push_back(std::move(tab));
  }
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace setdist
