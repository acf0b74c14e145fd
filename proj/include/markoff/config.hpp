#pragma once

// Run configuration for the command-line tool. Values resolve as
// command-line flag > JSON config file > MARKOFF_WORKERS > built-in default.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "markoff/errors.hpp"
#include "markoff/word.hpp"

namespace markoff {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string command;
  u64 bound = 100'000;     // density
  int max_exp = 31;        // mersenne
  u64 pmax = 200;          // verify
  u64 p = 0;               // point, graph
  std::string triple;      // point, "a,b,c"
  std::string export_path; // graph
  OutputFormat format = OutputFormat::Csv;
  std::string out;
  std::string svg;
  unsigned workers = 1;
  bool force = false;
  u64 word_cap = kDefaultLiftCap;

  void validate() const {
    if (bound == 0 || pmax == 0 || max_exp <= 0 || word_cap == 0)
      throw InvalidArgument("bounds must be positive");
    if (workers < 1) throw InvalidArgument("worker count must be at least 1");
  }
};

/// Partial configuration: only the keys that were actually supplied.
struct ConfigLayer {
  std::optional<u64> bound, pmax, p, word_cap;
  std::optional<int> max_exp;
  std::optional<std::string> triple, export_path, out, svg;
  std::optional<OutputFormat> format;
  std::optional<unsigned> workers;
  std::optional<bool> force;

  void apply_to(RunConfig& c) const {
    if (bound) c.bound = *bound;
    if (pmax) c.pmax = *pmax;
    if (p) c.p = *p;
    if (word_cap) c.word_cap = *word_cap;
    if (max_exp) c.max_exp = *max_exp;
    if (triple) c.triple = *triple;
    if (export_path) c.export_path = *export_path;
    if (out) c.out = *out;
    if (svg) c.svg = *svg;
    if (format) c.format = *format;
    if (workers) c.workers = *workers;
    if (force) c.force = *force;
  }
};

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw InvalidArgument("format must be csv or json, got '" + s + "'");
}

inline ConfigLayer config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("config file must hold a JSON object");
  static const char* known[] = {"bound", "pmax", "p", "word_cap", "max_exp", "triple", "export",
                                "out", "svg", "format", "workers", "force"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw InvalidArgument("unknown config key '" + key + "'");
  }
  ConfigLayer c;
  try {
    if (j.contains("bound")) c.bound = j["bound"].get<u64>();
    if (j.contains("pmax")) c.pmax = j["pmax"].get<u64>();
    if (j.contains("p")) c.p = j["p"].get<u64>();
    if (j.contains("word_cap")) c.word_cap = j["word_cap"].get<u64>();
    if (j.contains("max_exp")) c.max_exp = j["max_exp"].get<int>();
    if (j.contains("triple")) c.triple = j["triple"].get<std::string>();
    if (j.contains("export")) c.export_path = j["export"].get<std::string>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("svg")) c.svg = j["svg"].get<std::string>();
    if (j.contains("format")) c.format = parse_format(j["format"].get<std::string>());
    if (j.contains("workers")) c.workers = j["workers"].get<unsigned>();
    if (j.contains("force")) c.force = j["force"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad config value: ") + e.what());
  }
  return c;
}

inline ConfigLayer load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path);
  try {
    return config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("config file " + path + " is not valid JSON: " + e.what());
  }
}

/// MARKOFF_WORKERS, if set to a positive integer.
inline std::optional<unsigned> workers_from_env(const char* value) {
  if (value == nullptr || *value == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long n = std::strtoul(value, &end, 10);
  if (*end != '\0' || n == 0) throw InvalidArgument(std::string("MARKOFF_WORKERS must be a positive integer, got '") + value + "'");
  return static_cast<unsigned>(n);
}

/// Layers defaults < environment < config file < command line.
inline RunConfig resolve_config(const std::string& command, const std::optional<unsigned>& env_workers,
                                const ConfigLayer& file, const ConfigLayer& cli) {
  RunConfig c;
  c.command = command;
  if (env_workers) c.workers = *env_workers;
  file.apply_to(c);
  cli.apply_to(c);
  c.validate();
  return c;
}

}  // namespace markoff
