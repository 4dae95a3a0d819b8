#include "doctest.h"
#include "soko/generate.hpp"
#include "soko/labels.hpp"
#include "soko/solve.hpp"

using namespace soko;

TEST_CASE("labels record the agent and box move of each step") {
    Level lv = parse_level("#####\n#@$.#\n#####");
    LabelGrid grid = future_move_labels(lv, {Action::Right});
    CHECK(grid.steps == 1);
    CHECK(grid.agent_move[0][grid.cell({1, 1})] == Action::Right);
    CHECK(grid.box_move[0][grid.cell({1, 2})] == Action::Right);
    CHECK(!grid.box_move[0][grid.cell({1, 1})].has_value());
}

TEST_CASE("an empty action sequence gives an empty grid") {
    Level lv = parse_level("#####\n#@$.#\n#####");
    LabelGrid grid = future_move_labels(lv, {});
    CHECK(grid.steps == 0);
    CHECK(grid.agent_move.empty());
}

TEST_CASE("blocked moves leave no labels") {
    Level lv = parse_level("####\n#@$#\n#.##\n####");
    LabelGrid grid = future_move_labels(lv, {Action::Right});
    CHECK(!grid.agent_move[0][grid.cell({1, 1})].has_value());
    CHECK(!grid.box_move[0][grid.cell({1, 2})].has_value());
}

TEST_CASE("replaying recorded box moves solves a two-box level") {
    Level lv = parse_level("##########\n#@$  .$ .#\n##########");
    OracleResult res = solve_oracle(lv);
    REQUIRE(res.status == SolveStatus::Solved);
    LabelGrid grid = future_move_labels(lv, res.actions);

    // apply the recorded box moves in order on a box-position model
    auto boxes = lv.box_positions();
    for (int t = 0; t < grid.steps; ++t)
        for (int r = 0; r < lv.height; ++r)
            for (int c = 0; c < lv.width; ++c) {
                auto mv = grid.box_move[static_cast<size_t>(t)][grid.cell({r, c})];
                if (!mv) continue;
                bool found = false;
                for (auto& b : boxes)
                    if (b == Pos{r, c}) {
                        b = b + delta(*mv);
                        found = true;
                        break;
                    }
                CHECK(found);
            }
    auto targets = lv.target_positions();
    for (auto b : boxes) {
        bool on_target = false;
        for (auto t : targets)
            if (t == b) on_target = true;
        CHECK(on_target);
    }
}

TEST_CASE("horizon queries see moves inside the window only") {
    Level lv = parse_level("#######\n#@$  .#\n#######");
    OracleResult res = solve_oracle(lv);
    REQUIRE(res.status == SolveStatus::Solved);
    LabelGrid grid = future_move_labels(lv, res.actions);
    CHECK(grid.box_moves_within({1, 2}, Action::Right, 0, 1));
    CHECK(!grid.box_moves_within({1, 4}, Action::Right, 0, 1));
    CHECK(grid.box_moves_within({1, 4}, Action::Right, 0, 10));
}
