#include "config.hpp"

#include <algorithm>
#include <cmath>

#include "scenarios.hpp"

namespace scan_cli {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::string type_name(const Json& v) { return v.type_name(); }

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error("invalid configuration: " + join(problems)), problems_(std::move(problems)) {}

void Diagnostics::throw_if_any() const {
  if (!problems.empty()) throw ValidationError(problems);
}

Fields::Fields(const Json& object, std::string path, Diagnostics& diag)
    : source_(object.is_object() ? object : Json::object()), path_(std::move(path)), diag_(diag) {
  if (!object.is_null() && !object.is_object()) diag_.add(path_, "expected an object, got " + type_name(object));
}

const Json* Fields::find(const std::string& key) {
  seen_.push_back(key);
  const auto it = source_.find(key);
  return it == source_.end() ? nullptr : &*it;
}

double Fields::number(const std::string& key, double fallback, bool (*valid)(double), const char* requirement) {
  double value = fallback;
  if (const Json* v = find(key)) {
    if (!v->is_number()) {
      diag_.add(at(key), "expected a number, got " + type_name(*v));
    } else {
      value = v->get<double>();
    }
  }
  if (!std::isfinite(value)) {
    diag_.add(at(key), "must be finite");
  } else if (valid && !valid(value)) {
    diag_.add(at(key), requirement ? requirement : "out of range");
  }
  normalized_[key] = value;
  return value;
}

std::uint64_t Fields::unsigned_integer(const std::string& key, std::uint64_t fallback) {
  std::uint64_t value = fallback;
  if (const Json* v = find(key)) {
    if (v->is_number_unsigned()) {
      value = v->get<std::uint64_t>();
    } else if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
      value = static_cast<std::uint64_t>(v->get<std::int64_t>());
    } else {
      diag_.add(at(key), "expected a non-negative integer");
    }
  }
  normalized_[key] = value;
  return value;
}

bool Fields::boolean(const std::string& key, bool fallback) {
  bool value = fallback;
  if (const Json* v = find(key)) {
    if (v->is_boolean()) {
      value = v->get<bool>();
    } else {
      diag_.add(at(key), "expected true or false, got " + type_name(*v));
    }
  }
  normalized_[key] = value;
  return value;
}

std::string Fields::choice(const std::string& key, const std::string& fallback,
                           const std::vector<std::string>& allowed) {
  std::string value = fallback;
  if (const Json* v = find(key)) {
    if (!v->is_string()) {
      diag_.add(at(key), "expected a string, got " + type_name(*v));
    } else {
      value = v->get<std::string>();
    }
  }
  if (std::find(allowed.begin(), allowed.end(), value) == allowed.end()) {
    diag_.add(at(key), "\"" + value + "\" is not one of: " + join(allowed));
  }
  normalized_[key] = value;
  return value;
}

std::vector<double> Fields::numbers(const std::string& key, const std::vector<double>& fallback,
                                    bool (*valid)(double), const char* requirement) {
  std::vector<double> values = fallback;
  if (const Json* v = find(key)) {
    if (!v->is_array()) {
      diag_.add(at(key), "expected an array of numbers, got " + type_name(*v));
    } else {
      values.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        const Json& item = (*v)[i];
        if (!item.is_number()) {
          diag_.add(at(key) + "[" + std::to_string(i) + "]", "expected a number, got " + type_name(item));
          continue;
        }
        values.push_back(item.get<double>());
      }
    }
  }
  if (values.empty()) diag_.add(at(key), "must not be empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || (valid && !valid(values[i]))) {
      diag_.add(at(key) + "[" + std::to_string(i) + "]", requirement ? requirement : "out of range");
    }
  }
  normalized_[key] = values;
  return values;
}

Fields Fields::object(const std::string& key) {
  const Json* v = find(key);
  return Fields(v ? *v : Json(), at(key), diag_);
}

Json Fields::finish() {
  for (const auto& [key, value] : source_.items()) {
    if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) diag_.add(at(key), "unknown field");
  }
  return normalized_;
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out[i] = log_spacing ? std::exp(std::log(min) + t * (std::log(max) - std::log(min))) : min + t * (max - min);
  }
  // Pin the end points so they are exact in the output.
  out.front() = min;
  out.back() = max;
  return out;
}

const SweepAxis* ScenarioConfig::axis(const std::string& name) const {
  for (const auto& a : sweep) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

ScenarioConfig parse_config(const Json& doc) {
  Diagnostics diag;
  ScenarioConfig cfg;
  if (!doc.is_object()) {
    diag.add("<root>", "expected a JSON object");
    diag.throw_if_any();
  }
  Fields root(doc, "", diag);

  const double version = root.number("schema_version", -1.0);
  if (version != kSchemaVersion) {
    diag.add("schema_version", "unsupported schema version (this tool reads version " + std::to_string(kSchemaVersion) +
                                   ")");
  }

  std::vector<std::string> names;
  for (const auto& s : scenarios()) names.push_back(s.name);
  cfg.scenario = root.choice("scenario", "", names);
  const ScenarioInfo* info = find_scenario(cfg.scenario);

  Fields params = root.object("params");
  if (info) info->read(params);
  cfg.params = params.finish();
  root.put("params", cfg.params);

  Json sweep_doc = Json::array();
  const auto sweep_it = doc.find("sweep");
  if (sweep_it != doc.end() && !sweep_it->is_array()) diag.add("sweep", "expected an array of axes");
  if (sweep_it != doc.end() && sweep_it->is_array()) {
    for (std::size_t i = 0; i < sweep_it->size(); ++i) {
      const std::string path = "sweep[" + std::to_string(i) + "]";
      Fields f((*sweep_it)[i], path, diag);
      SweepAxis axis;
      std::vector<std::string> allowed = info ? info->axes : std::vector<std::string>{};
      axis.name = f.choice("name", "", allowed);
      axis.min = f.number("min", std::nan(""));
      axis.max = f.number("max", std::nan(""));
      const double count = f.number("count", 0.0);
      if (!(count >= 2.0) || count != std::floor(count) || count > 1e7) {
        diag.add(path + ".count", "must be an integer >= 2 (an empty or single-point sweep is not a sweep)");
      }
      axis.count = count >= 2.0 && count <= 1e7 ? static_cast<int>(count) : 2;
      axis.log_spacing = f.choice("spacing", "linear", {"linear", "log"}) == "log";
      if (std::isfinite(axis.min) && std::isfinite(axis.max)) {
        if (!(axis.max > axis.min)) diag.add(path, "max must exceed min");
        if (axis.log_spacing && !(axis.min > 0.0)) diag.add(path, "log spacing needs min > 0");
      }
      for (const auto& other : cfg.sweep) {
        if (other.name == axis.name) diag.add(path + ".name", "axis \"" + axis.name + "\" appears twice");
      }
      sweep_doc.push_back(f.finish());
      cfg.sweep.push_back(axis);
    }
  }
  root.put("sweep", sweep_doc);
  if (info) {
    const int n = static_cast<int>(cfg.sweep.size());
    if (n < info->min_axes || n > info->max_axes) {
      diag.add("sweep", "scenario \"" + info->name + "\" takes " +
                            (info->min_axes == info->max_axes
                                 ? std::to_string(info->min_axes)
                                 : std::to_string(info->min_axes) + " to " + std::to_string(info->max_axes)) +
                            " sweep ax" + (info->max_axes == 1 ? "is" : "es") + " (" + join(info->axes) + "), got " +
                            std::to_string(n));
    }
  }

  if (info && info->check && diag.problems.empty()) {
    info->check(cfg, diag);
  }

  const auto out_it = doc.find("output");
  if (out_it != doc.end()) {
    if (out_it->is_string() && !out_it->get<std::string>().empty()) {
      cfg.output = out_it->get<std::string>();
    } else {
      diag.add("output", "expected a non-empty directory path");
    }
  }
  cfg.seed = root.unsigned_integer("seed", 0);

  for (const auto& [key, value] : doc.items()) {
    if (key != "schema_version" && key != "scenario" && key != "params" && key != "sweep" && key != "output" &&
        key != "seed") {
      diag.add(key, "unknown field");
    }
  }
  diag.throw_if_any();
  return cfg;
}

Json to_json(const ScenarioConfig& cfg) {
  Json doc = Json::object();
  doc["schema_version"] = cfg.schema_version;
  doc["scenario"] = cfg.scenario;
  doc["params"] = cfg.params;
  Json axes = Json::array();
  for (const auto& a : cfg.sweep) {
    Json j = Json::object();
    j["name"] = a.name;
    j["min"] = a.min;
    j["max"] = a.max;
    j["count"] = a.count;
    j["spacing"] = a.log_spacing ? "log" : "linear";
    axes.push_back(j);
  }
  doc["sweep"] = axes;
  doc["output"] = cfg.output;
  doc["seed"] = cfg.seed;
  return doc;
}

std::string serialize(const ScenarioConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

void apply_override(Json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ValidationError({"--set " + assignment + ": expected key=value"});
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value = Json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  Json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ValidationError({"--set " + key + ": empty path component"});
    const bool numeric = std::all_of(part.begin(), part.end(), [](unsigned char c) { return std::isdigit(c); });
    Json* next = nullptr;
    if (node->is_array() && numeric) {
      const std::size_t idx = std::stoul(part);
      if (idx >= node->size()) throw ValidationError({"--set " + key + ": index " + part + " is out of range"});
      next = &(*node)[idx];
    } else {
      if (node->is_null()) *node = Json::object();
      if (!node->is_object()) throw ValidationError({"--set " + key + ": \"" + part + "\" is not inside an object"});
      next = &(*node)[part];
    }
    if (dot == std::string::npos) {
      *next = value;
      return;
    }
    node = next;
    start = dot + 1;
  }
}

}  // namespace scan_cli
