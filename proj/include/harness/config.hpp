#ifndef HARNESS_CONFIG_HPP
#define HARNESS_CONFIG_HPP

#include <map>
#include <string>

#include "drc/weights.hpp"
#include "planner/gains.hpp"

namespace harness {

// Plain-text key=value config (one pair per line, '#' comments) mirroring
// the mechanism gains and DRC shape parameters.
struct Config {
    planner::MechanismGains gains;
    drc::DrcConfig drc;
    uint64_t seed = 0x5eed;
    int ticks_per_step = 3;
    int thinking_steps = 0;
    int max_steps = 120;
    std::map<std::string, std::string> extra;
};

Config parse_config_text(const std::string& text);
Config load_config_file(const std::string& path);
std::string config_to_text(const Config& config);

}  // namespace harness

#endif  // HARNESS_CONFIG_HPP
