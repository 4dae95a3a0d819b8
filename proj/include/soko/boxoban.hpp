#ifndef SOKO_BOXOBAN_HPP
#define SOKO_BOXOBAN_HPP

#include <string>
#include <vector>

#include "soko/level.hpp"

namespace soko {

// Parses a file of "; id" headed blocks (bare grids also accepted).
// Throws parse_error with file/line context on malformed blocks.
std::vector<Level> parse_level_file(const std::string& text, const std::string& name = "");

// Loads every regular file in the directory (sorted by filename); per-file
// ordering of blocks is preserved.
std::vector<Level> load_boxoban_dir(const std::string& path);

}  // namespace soko

#endif  // SOKO_BOXOBAN_HPP
