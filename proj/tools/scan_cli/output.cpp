#include "output.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>

namespace scan_cli {

namespace fs = std::filesystem;

#ifndef HALOSCAN_VERSION
#define HALOSCAN_VERSION "0.0.0"
#endif

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

namespace {

// Quotes a CSV field only when it needs it.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw OutputError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw OutputError("failed writing " + path.string());
}

}  // namespace

std::string csv_text(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out += (i ? "," : "") + csv_field(table.columns[i].name);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string legend_text(const Table& table) {
  std::string out = "column,unit,description\n";
  for (const auto& c : table.columns) {
    out += csv_field(c.name) + "," + csv_field(c.unit) + "," + csv_field(c.description) + "\n";
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

void ensure_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create output directory " + dir.string() + ": " + ec.message());
  if (!fs::is_directory(dir)) throw OutputError(dir.string() + " is not a directory");
  const fs::path probe = dir / ".write-test";
  {
    std::ofstream f(probe);
    if (!f) throw OutputError("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

Json write_outputs(const fs::path& dir, const ScenarioConfig& cfg, const ScenarioResult& result) {
  ensure_writable(dir);
  const std::string config_text = serialize(cfg);
  const std::string files[][2] = {
      {"data.csv", csv_text(result.table)},
      {"legend.csv", legend_text(result.table)},
      {"report.json", result.report.dump(2) + "\n"},
      {"config.json", config_text},
  };

  Json manifest = Json::object();
  manifest["tool"] = "haloscan-scan";
  manifest["version"] = HALOSCAN_VERSION;
  manifest["schema_version"] = kSchemaVersion;
  manifest["scenario"] = cfg.scenario;
  manifest["seed"] = cfg.seed;
  // The output location does not affect any result, so it is left out of the hash.
  Json hashed = to_json(cfg);
  hashed.erase("output");
  manifest["config_sha256"] = sha256_hex(hashed.dump(2) + "\n");
  manifest["rows"] = result.table.rows.size();
  Json hashes = Json::object();
  for (const auto& [name, text] : files) {
    write_file(dir / name, text);
    // config.json is covered by config_sha256.
    if (name != "config.json") hashes[name] = sha256_hex(text);
  }
  manifest["files"] = hashes;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

}  // namespace scan_cli
