#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rootmirror/geometry.hpp"

namespace rootmirror {

// Command-line values that replace the corresponding config fields.
struct ConfigOverrides {
  std::optional<long> r;
  std::optional<long> dmax;  // applied to every Mori generator
  std::optional<long> kmax;
  std::optional<std::vector<long>> S;
};

struct LoadedConfig {
  GeometryConfig geometry;
  nlohmann::json document;  // effective document after overrides
  std::string digest;       // SHA-256 of the canonical document
};

// Built-in documents: "p2-cubic" and "p3-cubic-surface".
std::optional<nlohmann::json> builtin_document(std::string_view alias);

// Builds and validates a configuration; every error names the offending field.
GeometryConfig config_from_json(const nlohmann::json& doc, ExtensionRule rule = ExtensionRule::None);

// Reads an alias or a JSON file, applies overrides, validates.
LoadedConfig load_config(const std::string& source, const ConfigOverrides& overrides = {},
                         ExtensionRule rule = ExtensionRule::None);

std::string sha256_hex(std::string_view data);

}  // namespace rootmirror
