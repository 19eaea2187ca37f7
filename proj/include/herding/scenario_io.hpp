#pragma once

#include "herding/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace herding {

/// Scenario files are JSON objects with the flat keys
///   r, v, sigma, T, rho, theta,
///   follower.alpha, follower.beta, follower.gamma, follower.x0,
///   leader.alpha, leader.beta, leader.gamma, leader.x0.
/// Nested "follower": {...} / "leader": {...} objects are accepted on input.
/// Values are written with round-trip precision.
std::string scenario_to_json(const HerdingScenario& s);

/// Throws ValidationError with the offending line or field on malformed input.
/// The result is not range-validated; call validate_scenario for that.
HerdingScenario scenario_from_json(std::string_view text);

HerdingScenario load_scenario(const std::filesystem::path& path);
void save_scenario(const HerdingScenario& s, const std::filesystem::path& path);

} // namespace herding
