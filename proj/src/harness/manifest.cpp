#include "harness/manifest.hpp"

#include <sstream>

namespace harness {

uint64_t fnv1a(const std::string& data) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

RunManifest make_manifest(const Config& config, const std::string& level_set) {
    RunManifest m;
    m.config_hash = fnv1a(config_to_text(config));
    m.seed = config.seed;
    m.level_set = level_set;
    return m;
}

std::string RunManifest::to_text() const {
    std::ostringstream out;
    out << "version=" << version << "\n";
    out << "config_hash=" << config_hash << "\n";
    out << "seed=" << seed << "\n";
    out << "level_set=" << level_set << "\n";
    return out.str();
}

}  // namespace harness
