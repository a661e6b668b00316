#pragma once

#include "iree/metrics.hpp"
#include "iree/radio.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace iree {

struct LoadedScenario {
    Scenario scenario;
    CostModel cost;
};

// Parses and fully validates a scenario config (JSON; schema documented in the
// README). Throws ConfigError with line context on parse failures, with the
// offending key on unknown keys, and with the field name on invariant
// violations.
LoadedScenario load_scenario(const std::string& path);
LoadedScenario parse_scenario(const std::string& text);

struct PresetInfo {
    std::string name;
    std::string description;
};

std::vector<PresetInfo> preset_list();

// Bundled scenarios; "random" derives a valid randomized scenario from seed.
LoadedScenario make_preset(const std::string& name, std::uint64_t seed = 0);

// Table-driven station templates shared by presets and sweep assets.
BaseStation make_terrestrial_station(const Vec3& position);
BaseStation make_uav_station(const Vec3& position);
BaseStation make_satellite_station(const Vec3& position);
RisElement make_ris_element(const Vec3& position);

} // namespace iree
