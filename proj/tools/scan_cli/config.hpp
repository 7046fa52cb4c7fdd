// Scenario configuration: a versioned JSON document, its validation, and
// command-line overrides.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace scan_cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Collected field-level problems; thrown as one exception after parsing.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct Diagnostics {
  std::vector<std::string> problems;
  void add(const std::string& path, const std::string& message) { problems.push_back(path + ": " + message); }
  void throw_if_any() const;
};

// Reads one JSON object, records a problem for every missing-but-required,
// mistyped or out-of-range field, and rebuilds a normalized copy with every
// default written out. Keys that are never read are reported as unknown.
class Fields {
 public:
  Fields(const Json& object, std::string path, Diagnostics& diag);

  double number(const std::string& key, double fallback, bool (*valid)(double) = nullptr,
                const char* requirement = nullptr);
  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string choice(const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback,
                              bool (*valid)(double) = nullptr, const char* requirement = nullptr);
  Fields object(const std::string& key);
  // Stores a nested normalized object produced by a child reader.
  void put(const std::string& key, Json value) { normalized_[key] = std::move(value); }

  // Reports unknown keys and returns the normalized object.
  Json finish();
  const std::string& path() const { return path_; }
  Diagnostics& diagnostics() { return diag_; }

 private:
  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  const Json* find(const std::string& key);

  Json source_;
  std::string path_;
  Diagnostics& diag_;
  Json normalized_ = Json::object();
  std::vector<std::string> seen_;
};

struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  bool log_spacing = false;

  std::vector<double> values() const;
};

struct ScenarioConfig {
  int schema_version = kSchemaVersion;
  std::string scenario;
  Json params = Json::object();  // normalized scenario parameters
  std::vector<SweepAxis> sweep;
  std::string output = "out";
  std::uint64_t seed = 0;

  const SweepAxis* axis(const std::string& name) const;
};

// Parses and validates; params are normalized by the scenario's reader.
ScenarioConfig parse_config(const Json& doc);
Json to_json(const ScenarioConfig& cfg);
// Canonical text form (two-space indent, trailing newline); hashed into the manifest.
std::string serialize(const ScenarioConfig& cfg);

// Applies "a.b.c=value" to a raw document. Numeric path components index
// arrays. The value is parsed as JSON when possible and kept as a string otherwise.
void apply_override(Json& doc, const std::string& assignment);

}  // namespace scan_cli
