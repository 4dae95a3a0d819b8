#ifndef SOKO_SOLVE_HPP
#define SOKO_SOLVE_HPP

#include <cstdint>
#include <vector>

#include "soko/level.hpp"

namespace soko {

enum class SolveStatus { Solved, Unsolvable, BudgetExhausted };

struct OracleResult {
    SolveStatus status = SolveStatus::Unsolvable;
    std::vector<Action> actions;  // minimum-length solution when Solved
    size_t nodes_expanded = 0;
};

// Breadth-first search over (agent position, sorted box positions). Returns
// a minimum-length solution, a proof of unsolvability (state space
// exhausted), or BudgetExhausted once node_budget states were expanded.
OracleResult solve_oracle(const Level& level, size_t node_budget = 5'000'000);

// Replays actions and reports whether the final state is solved.
bool replays_to_solved(const Level& level, const std::vector<Action>& actions);

// Counts distinct minimum-length solutions (exhaustive, layered BFS DAG
// count). `cap` bounds the count to keep arithmetic small.
size_t count_min_solutions(const Level& level, size_t node_budget = 5'000'000,
                           size_t cap = 1000);

}  // namespace soko

#endif  // SOKO_SOLVE_HPP
