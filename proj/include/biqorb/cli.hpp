#pragma once

// Configuration parsing, pipeline orchestration, and deterministic JSON
// reports. Exit codes: 0 = all properties verified, 1 = a mathematical
// property failed, 2 = configuration error, 3 = capacity exceeded.

#include "biqorb/characters.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace biqorb {

struct SessionConfig {
  std::string command;
  std::optional<std::string> tower_path;
  std::optional<int> degree;
  int r = 2;
  bool oracle = false;
  std::optional<int> window;
  std::optional<std::string> divisor_spec;
  int workers = 1;
  std::optional<std::string> out_path;
};

// Line-oriented `key = value` tower file: keys q, roots, sigma_f, sigma_inf,
// wprime. Diagnostics carry line numbers.
TowerConfig load_tower_file(const std::string& path);
TowerConfig parse_tower_text(const std::string& text, const std::string& origin);

struct RunOutcome {
  nlohmann::ordered_json report;
  bool properties_hold = true;
};

RunOutcome cmd_tower(const SessionConfig& cfg);
RunOutcome cmd_orbital(const SessionConfig& cfg);
RunOutcome cmd_local(const SessionConfig& cfg);
RunOutcome cmd_spectra(const SessionConfig& cfg);
RunOutcome cmd_lseries(const SessionConfig& cfg);

int run_cli(int argc, const char* const* argv);

}  // namespace biqorb
