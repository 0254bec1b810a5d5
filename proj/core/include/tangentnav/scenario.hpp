#pragma once

#include <filesystem>
#include <string>

#include "tangentnav/simulator.hpp"

namespace tnav {

/// JSON scenario schema (documented in the README): env + planner + episode
/// parameters. Identical files replay identical episodes.
EpisodeConfig parse_scenario(const std::string& text);
std::string serialize_scenario(const EpisodeConfig& cfg);

EpisodeConfig load_scenario(const std::filesystem::path& path);
void save_scenario(const EpisodeConfig& cfg, const std::filesystem::path& path);

}  // namespace tnav
