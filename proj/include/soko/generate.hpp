#ifndef SOKO_GENERATE_HPP
#define SOKO_GENERATE_HPP

#include <vector>

#include "soko/level.hpp"

namespace soko {

enum class CaseKind { Zigzag, Backtrack, TwoPaths, Corridor };

// Deterministic case-study layouts (no randomness; byte-stable output).
//
//   corridor(n)  3 x n   agent(1,1), box(1,2), target(1,n-2); n in [5,48]
//   two_paths(n) n x n   open room, agent(1,1), box(2,2), target(n-3,n-3);
//                        exactly two minimum-length solutions
//                        (down-then-right and right-then-down); n in [7,48]
//   zigzag(n)    n x n   serpentine alleys on odd rows, one box push at the
//                        far end; n in [8,48]
//   backtrack(n) n x n   box row 2, trunk column n-3 down to the target at
//                        (n-3,n-3), plus a dead-end side corridor on the
//                        target row (cols n-9..n-4) that backward chaining
//                        explores and must abandon; n in [20,48]
//
// Throws std::out_of_range for sizes outside the documented bounds.
Level generate_case_level(CaseKind kind, int size);

// Documented coordinates used by analyses of the generated layouts.
inline Pos two_paths_junction(int /*size*/) { return {2, 2}; }
inline Pos backtrack_stop_square(int size) { return {size - 3, size - 9}; }
inline std::vector<Pos> backtrack_branch_squares(int size) {
    std::vector<Pos> v;
    for (int c = size - 9; c <= size - 4; ++c) v.push_back({size - 3, c});
    return v;
}

}  // namespace soko

#endif  // SOKO_GENERATE_HPP
