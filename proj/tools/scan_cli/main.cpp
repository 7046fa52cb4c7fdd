// haloscan-scan: run a scenario config and write figure-ready tables.
//
// Exit status: 0 success, 1 invalid configuration or unwritable output,
// 2 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "config.hpp"
#include "haloscan/gaussian.hpp"
#include "haloscan/radiometry.hpp"
#include "output.hpp"
#include "pool.hpp"
#include "presets.hpp"
#include "scenarios.hpp"

namespace {

using namespace scan_cli;

constexpr int kExitInvalid = 1;
constexpr int kExitNumeric = 2;

constexpr const char* kPresetPrefix = "preset:";

Json load_document(const std::string& source) {
  if (source.rfind(kPresetPrefix, 0) == 0) {
    const std::string name = source.substr(std::string(kPresetPrefix).size());
    const Preset* p = find_preset(name);
    if (!p) throw ValidationError({"unknown preset \"" + name + "\" (see `haloscan-scan presets`)"});
    return p->config;
  }
  std::ifstream f(source);
  if (!f) throw ValidationError({source + ": cannot open config file"});
  std::stringstream text;
  text << f.rdbuf();
  Json doc = Json::parse(text.str(), nullptr, false);
  if (doc.is_discarded()) throw ValidationError({source + ": not valid JSON"});
  return doc;
}

void report_validation(const ValidationError& e) {
  std::cerr << "error: invalid configuration\n";
  for (const auto& p : e.problems()) std::cerr << "  " << p << "\n";
}

void report_integration(const haloscan::IntegrationFailure& e) {
  const auto& m = e.metadata;
  std::cerr << "error: numerical integration failed: " << e.what() << "\n"
            << "  cutoff:         " << format_double(m.cutoff) << "\n"
            << "  rel_tolerance:  " << format_double(m.rel_tolerance) << "\n"
            << "  error_estimate: " << format_double(m.error_estimate) << "\n"
            << "  tail:           " << format_double(m.tail) << "\n"
            << "  evaluations:    " << m.evaluations << "\n"
            << "  converged:      " << (m.converged ? "true" : "false") << "\n";
}

struct RunArgs {
  std::string source;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

ScenarioConfig resolve(const RunArgs& args) {
  Json doc = load_document(args.source);
  for (const auto& o : args.overrides) apply_override(doc, o);
  if (args.seed) doc["seed"] = *args.seed;
  if (args.out) doc["output"] = *args.out;
  return parse_config(doc);
}

int run_command(const RunArgs& args) {
  const ScenarioConfig cfg = resolve(args);
  ensure_writable(cfg.output);
  RunOptions opts;
  opts.workers = default_worker_count();
  const ScenarioResult result = run_scenario(cfg, opts);
  const Json manifest = write_outputs(cfg.output, cfg, result);
  std::cout << cfg.scenario << ": " << result.table.rows.size() << " rows written to " << cfg.output << "\n";
  if (!result.report.empty()) std::cout << result.report.dump(2) << "\n";
  std::cout << "config sha256 " << manifest["config_sha256"].get<std::string>() << "\n";
  return 0;
}

// Runs fn and converts the known failure types into exit codes.
template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    report_validation(e);
    return kExitInvalid;
  } catch (const OutputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const haloscan::InvalidArgument& e) {
    std::cerr << "error: invalid parameter: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const haloscan::IntegrationFailure& e) {
    report_integration(e);
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scan-rate scenarios for cavity haloscopes with squeezed, GKP and networked readout"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HALOSCAN_VERSION);

  RunArgs run_args;
  std::uint64_t seed = 0;
  std::string out;
  auto* run = app.add_subcommand("run", "Run a scenario and write data.csv, legend.csv, report.json, "
                                        "config.json and manifest.json");
  run->add_option("config", run_args.source, "Config file, or preset:NAME")->required();
  run->add_option("--set", run_args.overrides, "Override a config field, e.g. params.gains=[1,4] or sweep.0.count=5");
  auto* seed_opt = run->add_option("--seed", seed, "Random seed");
  auto* out_opt = run->add_option("--out", out, "Output directory");

  std::string check_source;
  std::vector<std::string> check_overrides;
  auto* check = app.add_subcommand("check", "Validate a config and print its normalized form");
  check->add_option("config", check_source, "Config file, or preset:NAME")->required();
  check->add_option("--set", check_overrides, "Override a config field");

  auto* list = app.add_subcommand("presets", "List the built-in presets");
  auto* kinds = app.add_subcommand("scenarios", "List scenario kinds and their sweep axes");

  std::string preset_name;
  auto* dump = app.add_subcommand("preset", "Print a preset as a normalized config file");
  dump->add_option("name", preset_name, "Preset name")->required();

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    if (*seed_opt) run_args.seed = seed;
    if (*out_opt) run_args.out = out;
    return guarded([&] { return run_command(run_args); });
  }
  if (*check) {
    return guarded([&] {
      std::cout << serialize(resolve({check_source, check_overrides, std::nullopt, std::nullopt}));
      return 0;
    });
  }
  if (*list) {
    for (const auto& p : presets()) std::printf("%-11s %s\n", p.name.c_str(), p.description.c_str());
    return 0;
  }
  if (*kinds) {
    for (const auto& s : scenarios()) {
      std::string axes;
      for (const auto& a : s.axes) axes += (axes.empty() ? "" : "|") + a;
      std::printf("%-16s %s [sweep: %s]\n", s.name.c_str(), s.summary.c_str(), axes.c_str());
    }
    return 0;
  }
  if (*dump) {
    return guarded([&] {
      const Preset* p = find_preset(preset_name);
      if (!p) throw ValidationError({"unknown preset \"" + preset_name + "\""});
      std::cout << serialize(parse_config(p->config));
      return 0;
    });
  }
  return 0;
}
