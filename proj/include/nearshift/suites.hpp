#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nearshift/neardecomp.hpp"

namespace nearshift {

struct SuiteConfig {
  FiniteBlaschke B = FiniteBlaschke::monomial(2);
  std::optional<double> alpha;  // unset: every alpha the suite covers
  std::optional<double> s;      // unset: 0.8, or suggest_s(B) when a zero lies outside 0.8 D
  std::optional<int> degree;    // unset: suite default
  int levels = 0;
  std::uint64_t seed = 0;
  int trials = 100;
  bool strict = false;
  Complex a = 0.5;
};

std::vector<std::string> suites();

/// Runs one named suite; throws InvalidInput for an unknown name.
ScenarioReport run_suite(const std::string& name, const SuiteConfig& config);

ScenarioReport suite_wold(const SuiteConfig& c);
ScenarioReport suite_lowerbound(const SuiteConfig& c);
ScenarioReport suite_thm26(const SuiteConfig& c);
ScenarioReport suite_thm35(const SuiteConfig& c);
ScenarioReport suite_thm39(const SuiteConfig& c);
ScenarioReport suite_example(const SuiteConfig& c);

double default_radius(const FiniteBlaschke& B);

}  // namespace nearshift
