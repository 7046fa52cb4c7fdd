#include "presets.hpp"

#include <cmath>

namespace scan_cli {

namespace {

Json axis(const char* name, double min, double max, int count, bool log = false) {
  return {{"name", name}, {"min", min}, {"max", max}, {"count", count}, {"spacing", log ? "log" : "linear"}};
}

Json doc(const char* scenario, Json params, Json sweep, const char* out) {
  return {{"schema_version", kSchemaVersion},
          {"scenario", scenario},
          {"params", std::move(params)},
          {"sweep", std::move(sweep)},
          {"output", std::string("out/") + out},
          {"seed", 0}};
}

std::vector<Preset> build() {
  std::vector<Preset> out;
  out.push_back({"fig4", "visibility against detuning for G = 1 and 10 at the squeezed-optimal coupling",
                 doc("snr-curve",
                     {{"curve", "visibility"},
                      {"cavity", {{"gamma_s", 1e-6}}},
                      {"gains", {1.0, 10.0}},
                      {"coupling", "optimal"}},
                     {axis("omega", -20.0, 20.0, 401)}, "fig4")});
  out.push_back({"fig5", "two-cavity SNR^2 for uniform, near-optimal and optimized weights (G = 4, ratio 3)",
                 doc("network-scaling", {{"analysis", "two-cavity"}, {"gain", 4.0}, {"linewidth_ratio", 3.0}},
                     {axis("omega", -5.0, 5.0, 41)}, "fig5")});
  out.push_back({"fig6", "coherent and independent network scan rates for M = 2..20, G = 1 and 4",
                 doc("network-scaling", {{"analysis", "scaling"}, {"gains", {1.0, 4.0}}},
                     {axis("cavities", 2.0, 20.0, 19)}, "fig6")});
  out.push_back({"fig7", "scan-rate ratio against coupling at 10 and 13 dB of squeezing",
                 doc("scan-rate", {{"gains", {10.0, std::pow(10.0, 1.3)}}}, {axis("coupling", 0.1, 1000.0, 121, true)},
                     "fig7")});
  out.push_back({"fig8", "optimal GKP over squeezed scan rate, Gaussian and error-revised, against squeezing",
                 doc("gkp-compare", Json::object(), {axis("s_db", 0.0, 20.0, 81)}, "fig8")});
  out.push_back({"fig10", "susceptibility magnitudes and phases for under, critical and over coupling",
                 doc("snr-curve",
                     {{"curve", "susceptibility"}, {"cavity", {{"gamma_s", 1e-6}}}, {"couplings", {0.5, 1.0, 2.0}}},
                     {axis("omega", -5.0, 5.0, 401)}, "fig10")});
  out.push_back({"pump-noise", "excess two-mode squeezed noise from pump-frequency jitter (10 dB, on resonance)",
                 doc("jpa-noise", {{"samples", 100000}}, {axis("sigma_c", 1e-4, 1e-1, 13, true)}, "pump-noise")});
  out.push_back({"lab-units", "model parameters, signal powers and scan rate against fridge temperature",
                 doc("convert-units", Json::object(), {axis("temperature", 0.01, 0.1, 10)}, "lab-units")});
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace scan_cli
