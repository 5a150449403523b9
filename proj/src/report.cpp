#include "rootmirror/report.hpp"

#include <algorithm>
#include <sstream>

#include "rootmirror/error.hpp"

namespace rootmirror {

using nlohmann::json;

bool RunReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

std::string report_json(const RunReport& report) {
  json out;
  out["command"] = report.command;
  out["config"] = {{"name", report.config_name}, {"digest", report.config_digest}};
  out["bounds"] = report.bounds;
  out["notes"] = report.notes;
  json tables = json::array();
  for (const auto& t : report.tables) tables.push_back({{"title", t.title}, {"columns", t.columns}, {"rows", t.rows}});
  out["tables"] = tables;
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"status", check_status_name(c.status)}, {"cases", c.cases}, {"witness", c.witness}});
  }
  out["checks"] = checks;
  return out.dump(2) + "\n";
}

Table table_from_json(const json& t) {
  try {
    return {t.at("title").get<std::string>(), t.at("columns").get<std::vector<std::string>>(),
            t.at("rows").get<std::vector<std::vector<std::string>>>()};
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("table: ") + e.what());
  }
}

namespace {

void write_table(std::ostringstream& os, const Table& t) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::string cell = cells[c];
      if (c + 1 < cells.size()) cell.resize(std::max(width[c], cell.size()), ' ');
      out += (c ? "  " : "") + cell;
    }
    os << out << "\n";
  };
  os << "\n" << t.title << "\n";
  line(t.columns);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& row : t.rows) line(row);
}

}  // namespace

std::string report_text(const RunReport& report) {
  std::ostringstream os;
  os << "command: " << report.command << "\n";
  os << "config:  " << report.config_name << " (sha256 " << report.config_digest << ")\n";
  os << "bounds:  " << report.bounds.dump() << "\n";
  for (const auto& n : report.notes) os << "note:    " << n << "\n";
  for (const auto& t : report.tables) write_table(os, t);
  if (!report.checks.empty()) {
    Table checks{"checks", {"check", "status", "cases", "witness"}, {}};
    for (const auto& c : report.checks) {
      checks.rows.push_back({c.name, check_status_name(c.status), std::to_string(c.cases), c.witness});
    }
    write_table(os, checks);
  }
  return os.str();
}

}  // namespace rootmirror
