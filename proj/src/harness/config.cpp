#include "harness/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace harness {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Config parse_config_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": missing '='");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        auto d = [&]() { return std::stod(value); };
        auto i = [&]() { return std::stoi(value); };
        if (key == "seed_gain") cfg.gains.seed_gain = d();
        else if (key == "lpe_gain") cfg.gains.lpe_gain = d();
        else if (key == "tpe_gain") cfg.gains.tpe_gain = d();
        else if (key == "stop_gain") cfg.gains.stop_gain = d();
        else if (key == "wta_inhibit") cfg.gains.wta_inhibit = d();
        else if (key == "decay") cfg.gains.decay = d();
        else if (key == "theta") cfg.gains.theta = d();
        else if (key == "backtrack_gain") cfg.gains.backtrack_gain = d();
        else if (key == "a_max") cfg.gains.a_max = d();
        else if (key == "agent_seed") cfg.gains.agent_seed = d();
        else if (key == "copy_gain") cfg.gains.copy_gain = d();
        else if (key == "suppress_hold") cfg.gains.suppress_hold = d();
        else if (key == "drc_depth") cfg.drc.depth = i();
        else if (key == "drc_ticks") cfg.drc.ticks = i();
        else if (key == "drc_channels") cfg.drc.channels = i();
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "ticks_per_step") cfg.ticks_per_step = i();
        else if (key == "thinking_steps") cfg.thinking_steps = i();
        else if (key == "max_steps") cfg.max_steps = i();
        else cfg.extra[key] = value;
    }
    return cfg;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_to_text(const Config& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "seed_gain=" << cfg.gains.seed_gain << "\n";
    out << "lpe_gain=" << cfg.gains.lpe_gain << "\n";
    out << "tpe_gain=" << cfg.gains.tpe_gain << "\n";
    out << "stop_gain=" << cfg.gains.stop_gain << "\n";
    out << "wta_inhibit=" << cfg.gains.wta_inhibit << "\n";
    out << "decay=" << cfg.gains.decay << "\n";
    out << "theta=" << cfg.gains.theta << "\n";
    out << "backtrack_gain=" << cfg.gains.backtrack_gain << "\n";
    out << "a_max=" << cfg.gains.a_max << "\n";
    out << "agent_seed=" << cfg.gains.agent_seed << "\n";
    out << "copy_gain=" << cfg.gains.copy_gain << "\n";
    out << "suppress_hold=" << cfg.gains.suppress_hold << "\n";
    out << "drc_depth=" << cfg.drc.depth << "\n";
    out << "drc_ticks=" << cfg.drc.ticks << "\n";
    out << "drc_channels=" << cfg.drc.channels << "\n";
    out << "seed=" << cfg.seed << "\n";
    out << "ticks_per_step=" << cfg.ticks_per_step << "\n";
    out << "thinking_steps=" << cfg.thinking_steps << "\n";
    out << "max_steps=" << cfg.max_steps << "\n";
    for (const auto& [k, v] : cfg.extra) out << k << "=" << v << "\n";
    return out.str();
}

}  // namespace harness
