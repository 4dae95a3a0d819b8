#include "soko/solve.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <string>
#include <unordered_map>

namespace soko {

namespace {

// Search state key: agent cell followed by sorted box cells, 16-bit each.
std::string encode_state(int width, Pos agent, const std::vector<Pos>& boxes) {
    std::vector<uint16_t> cells;
    cells.reserve(boxes.size() + 1);
    cells.push_back(static_cast<uint16_t>(agent.row * width + agent.col));
    std::vector<uint16_t> b;
    b.reserve(boxes.size());
    for (Pos p : boxes) b.push_back(static_cast<uint16_t>(p.row * width + p.col));
    std::sort(b.begin(), b.end());
    cells.insert(cells.end(), b.begin(), b.end());
    std::string key(cells.size() * 2, '\0');
    std::memcpy(key.data(), cells.data(), key.size());
    return key;
}

// Static geometry shared by all states of one search: walls and targets.
struct Board {
    const Level* base;
    Level materialize(const std::string& key) const {
        Level lv = *base;
        for (Tile& t : lv.tiles) {
            if (t == Tile::Box) t = Tile::Floor;
            if (t == Tile::BoxOnTarget) t = Tile::Target;
            if (t == Tile::Agent) t = Tile::Floor;
            if (t == Tile::AgentOnTarget) t = Tile::Target;
        }
        size_t n = key.size() / 2;
        std::vector<uint16_t> cells(n);
        std::memcpy(cells.data(), key.data(), key.size());
        Pos agent{cells[0] / base->width, cells[0] % base->width};
        for (size_t i = 1; i < n; ++i) {
            Pos p{cells[i] / base->width, cells[i] % base->width};
            lv.at(p) = (lv.at(p) == Tile::Target) ? Tile::BoxOnTarget : Tile::Box;
        }
        lv.at(agent) = (lv.at(agent) == Tile::Target) ? Tile::AgentOnTarget : Tile::Agent;
        lv.agent_pos = agent;
        return lv;
    }
};

Level apply_actions(const Level& level, const std::vector<Action>& actions) {
    Level cur = level;
    for (Action a : actions) cur = step(cur, a).next;
    return cur;
}

}  // namespace

bool replays_to_solved(const Level& level, const std::vector<Action>& actions) {
    return apply_actions(level, actions).solved();
}

OracleResult solve_oracle(const Level& level, size_t node_budget) {
    OracleResult result;
    if (level.solved()) {
        result.status = SolveStatus::Solved;
        return result;
    }

    Board board{&level};
    struct Node {
        std::string key;
        int64_t parent;
        Action action;
    };
    std::vector<Node> nodes;
    std::unordered_map<std::string, int64_t> visited;
    std::deque<int64_t> frontier;

    std::string root = encode_state(level.width, level.agent_pos, level.box_positions());
    nodes.push_back({root, -1, Action::Up});
    visited.emplace(root, 0);
    frontier.push_back(0);

    while (!frontier.empty()) {
        if (result.nodes_expanded >= node_budget) {
            result.status = SolveStatus::BudgetExhausted;
            return result;
        }
        int64_t cur = frontier.front();
        frontier.pop_front();
        ++result.nodes_expanded;
        Level state = board.materialize(nodes[cur].key);

        for (Action a : kActions) {
            StepOutcome out = step(state, a);
            if (out.next.agent_pos == state.agent_pos) continue;  // no-op
            std::string key =
                encode_state(level.width, out.next.agent_pos, out.next.box_positions());
            if (visited.count(key)) continue;
            int64_t idx = static_cast<int64_t>(nodes.size());
            nodes.push_back({key, cur, a});
            visited.emplace(std::move(key), idx);
            if (out.solved) {
                std::vector<Action> seq;
                for (int64_t i = idx; i > 0; i = nodes[i].parent)
                    seq.push_back(nodes[i].action);
                std::reverse(seq.begin(), seq.end());
                result.status = SolveStatus::Solved;
                result.actions = std::move(seq);
                return result;
            }
            frontier.push_back(idx);
        }
    }
    result.status = SolveStatus::Unsolvable;
    return result;
}

size_t count_min_solutions(const Level& level, size_t node_budget, size_t cap) {
    OracleResult shortest = solve_oracle(level, node_budget);
    if (shortest.status != SolveStatus::Solved) return 0;
    size_t goal_depth = shortest.actions.size();

    // Layered BFS over the state DAG, accumulating per-state path counts.
    // No solved state can appear before goal_depth (BFS minimality), so every
    // path counted at goal_depth is a distinct minimum-length solution.
    Board board{&level};
    struct Entry {
        std::string key;
        size_t count;
    };
    std::vector<Entry> layer;
    layer.push_back({encode_state(level.width, level.agent_pos, level.box_positions()), 1});

    size_t solutions = 0;
    for (size_t depth = 0; depth < goal_depth; ++depth) {
        std::unordered_map<std::string, size_t> next_index;
        std::vector<Entry> next;
        for (const Entry& e : layer) {
            Level state = board.materialize(e.key);
            for (Action a : kActions) {
                StepOutcome out = step(state, a);
                if (out.next.agent_pos == state.agent_pos) continue;
                std::string key = encode_state(level.width, out.next.agent_pos,
                                               out.next.box_positions());
                if (out.solved) {
                    if (depth + 1 == goal_depth)
                        solutions = std::min(cap, solutions + e.count);
                    continue;
                }
                auto it = next_index.find(key);
                if (it == next_index.end()) {
                    next_index.emplace(std::move(key), next.size());
                    next.push_back({encode_state(level.width, out.next.agent_pos,
                                                 out.next.box_positions()),
                                    e.count});
                } else {
                    next[it->second].count = std::min(cap, next[it->second].count + e.count);
                }
            }
        }
        layer = std::move(next);
    }
    return solutions;
}

}  // namespace soko
