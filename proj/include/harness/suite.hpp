#ifndef HARNESS_SUITE_HPP
#define HARNESS_SUITE_HPP

#include <string>
#include <vector>

#include "soko/level.hpp"

namespace harness {

// The bundled 50-level desk-scale suite: corridors in all four directions,
// L-turns, two_paths, zigzags 8-12, backtrack 20, and two-box rows. All
// deterministic, all oracle-solvable, 1-2 boxes each.
std::vector<soko::Level> suite_levels();

// Writes the suite as numbered text files (level_00.txt ...).
void write_suite(const std::string& dir);

// The 12-level compilation validation set: straight corridors (all four
// directions), wall-stop cases, L-turns and two-direction conflicts, all
// small enough for the compiled net's chain reach.
std::vector<soko::Level> compile_validation_levels();

// Loads either a directory of level files, a single file, or a named
// built-in set ("suite", "compile", "two_paths", "zigzag:N", ...).
std::vector<soko::Level> load_level_set(const std::string& spec);

}  // namespace harness

#endif  // HARNESS_SUITE_HPP
