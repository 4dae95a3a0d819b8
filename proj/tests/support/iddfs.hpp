#ifndef TESTS_SUPPORT_IDDFS_HPP
#define TESTS_SUPPORT_IDDFS_HPP

#include <optional>
#include <vector>

#include "soko/level.hpp"

namespace testsupport {

// Independent exhaustive search used as the oracle-of-the-oracle: iterative
// deepening DFS with a per-iteration transposition table. Deliberately a
// different search paradigm from the BFS oracle it cross-checks.
std::optional<std::vector<soko::Action>> solve_iddfs(const soko::Level& level,
                                                     int max_depth);

}  // namespace testsupport

#endif  // TESTS_SUPPORT_IDDFS_HPP
