#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootmirror/config.hpp"
#include "rootmirror/ifunctions.hpp"
#include "rootmirror/report.hpp"

namespace rootmirror {

struct RunFlags {
  std::optional<std::string> theory;
  std::vector<long> r_list;  // verify runs every r; other commands use the config's r
  std::optional<long> order;
  std::optional<std::vector<long>> d;
  std::optional<std::vector<long>> k;
  std::optional<LambdaMode> lambda_mode;
};

const std::vector<std::string>& command_names();

// Theory a command uses when --theory is absent.
Theory selected_theory(const std::string& command, const RunFlags& flags);

// How S is range-checked for the theory a command will run.
ExtensionRule extension_rule(const std::string& command, const RunFlags& flags);

RunReport run(const std::string& command, const LoadedConfig& cfg, const RunFlags& flags);

}  // namespace rootmirror
