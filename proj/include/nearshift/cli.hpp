#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nearshift/json_io.hpp"
#include "nearshift/suites.hpp"

namespace nearshift {

struct ScenarioConfig {
  std::string command;
  std::optional<Json> blaschke;
  std::optional<double> alpha;
  std::optional<double> s;
  std::optional<int> degree;
  int levels = 0;
  std::uint64_t seed = 0;
  int trials = 100;
  bool strict = false;
  std::string suite = "all";
  std::optional<Json> series;    // f or h
  std::optional<Json> subspace;  // M
  Complex a = 0.5;
  int m = 1;
  int guard = 1;
  bool literal_naturals = false;
  std::vector<std::string> inputs;

  Json to_json() const;
};

struct RunReport {
  Json report;
  bool pass = false;
};

constexpr int kSchemaVersion = 1;

/// Dispatches one command. Library errors propagate to the caller.
RunReport run(const ScenarioConfig& config);

/// Full command-line entry point: parses argv, runs, writes the report and
/// returns the process exit code (0 pass, 1 fail, 2 bad input or precondition,
/// 3 numeric failure).
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace nearshift
