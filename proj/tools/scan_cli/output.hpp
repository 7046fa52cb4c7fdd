// Result files: data.csv, legend.csv, report.json, config.json, manifest.json.
#pragma once

#include <filesystem>
#include <string>

#include "config.hpp"
#include "scenarios.hpp"

namespace scan_cli {

// Shortest text that parses back to the same double.
std::string format_double(double value);

std::string csv_text(const Table& table);
std::string legend_text(const Table& table);

std::string sha256_hex(const std::string& bytes);

// Raised when the output directory cannot be created or written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checks up front that the directory can be created and written to.
void ensure_writable(const std::filesystem::path& dir);

// Writes every file and returns the manifest. Nothing in the output depends
// on the worker count or the clock. config_sha256 covers the canonical config
// text without the output field; files maps the data, legend and report files to
// their SHA-256.
Json write_outputs(const std::filesystem::path& dir, const ScenarioConfig& cfg, const ScenarioResult& result);

}  // namespace scan_cli
