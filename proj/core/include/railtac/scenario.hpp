#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "railtac/demand.hpp"
#include "railtac/evaluation.hpp"
#include "railtac/network.hpp"
#include "railtac/pricing.hpp"
#include "railtac/simulator.hpp"

namespace railtac {

/// Load or validation failure; the message aggregates every issue found.
struct ScenarioError : std::runtime_error {
  explicit ScenarioError(const std::string& what, std::vector<std::string> issues = {})
      : std::runtime_error(what), issues(std::move(issues)) {}
  std::vector<std::string> issues;
};

struct Scenario {
  std::string name;
  Network network;
  DemandModel demand;
  SimConfig sim;
  double prototype_train_tons = 0.0;
  std::vector<Policy> policies;

  const Policy& policy(const std::string& name) const;
};

/// Parses and fully validates a scenario file. Paths missing from the file
/// are filled in with the minimum-cost route of their OD pair.
Scenario load_scenario(const std::filesystem::path& file);

TacScheme load_scheme(const std::filesystem::path& file);
void save_scheme(const TacScheme& scheme, const std::filesystem::path& file);

/// JSON serialization of a scheme (used by save_scheme and the reports).
std::string scheme_to_json(const TacScheme& scheme);

}  // namespace railtac
