#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rootmirror/checks.hpp"

namespace rootmirror {

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // exact values as "p/q" strings
};

struct RunReport {
  std::string command;
  std::string config_name;
  std::string config_digest;
  nlohmann::json bounds;
  std::vector<std::string> notes;
  std::vector<Table> tables;
  std::vector<CheckResult> checks;

  bool all_checks_pass() const;
};

// Keys are emitted in sorted order, so identical reports give identical bytes.
std::string report_json(const RunReport& report);
std::string report_text(const RunReport& report);

// Inverse of the JSON layout of a table, used by the round-trip tests.
Table table_from_json(const nlohmann::json& t);

}  // namespace rootmirror
