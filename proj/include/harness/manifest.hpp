#ifndef HARNESS_MANIFEST_HPP
#define HARNESS_MANIFEST_HPP

#include <cstdint>
#include <string>

#include "harness/config.hpp"

namespace harness {

// Identifies one reproducible run: identical manifests imply byte-identical
// outputs.
struct RunManifest {
    uint64_t config_hash = 0;
    uint64_t seed = 0;
    std::string level_set;
    std::string version = "drcplan-1";

    std::string to_text() const;
};

uint64_t fnv1a(const std::string& data);

RunManifest make_manifest(const Config& config, const std::string& level_set);

}  // namespace harness

#endif  // HARNESS_MANIFEST_HPP
