#pragma once

#include <json.hpp>

#include "tangentnav/simulator.hpp"

namespace tnav::detail {

nlohmann::json scenario_to_json(const EpisodeConfig& cfg);
EpisodeConfig scenario_from_json(const nlohmann::json& j);

}  // namespace tnav::detail
