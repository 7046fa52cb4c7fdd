// Built-in scenario configurations for the published figure families.
#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace scan_cli {

struct Preset {
  std::string name;
  std::string description;
  Json config;  // raw document; parse_config fills in defaults
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

}  // namespace scan_cli
