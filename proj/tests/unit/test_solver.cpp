#include "doctest.h"
#include "soko/generate.hpp"
#include "soko/solve.hpp"
#include "support/iddfs.hpp"

using namespace soko;

TEST_CASE("oracle finds the one-move solution") {
    OracleResult res = solve_oracle(parse_level("#####\n#@$.#\n#####"));
    REQUIRE(res.status == SolveStatus::Solved);
    REQUIRE(res.actions.size() == 1);
    CHECK(res.actions[0] == Action::Right);
}

TEST_CASE("a box in a non-target corner is proven unsolvable") {
    // box stuck in the corner: no push can ever move it
    OracleResult res = solve_oracle(parse_level("#####\n#$ @#\n# . #\n#####"));
    CHECK(res.status == SolveStatus::Unsolvable);
}

TEST_CASE("a tiny node budget reports exhaustion, not unsolvability") {
    Level lv = generate_case_level(CaseKind::TwoPaths, 9);
    OracleResult res = solve_oracle(lv, 3);
    CHECK(res.status == SolveStatus::BudgetExhausted);
}

TEST_CASE("oracle length matches independent iterative deepening on two_paths") {
    Level lv = generate_case_level(CaseKind::TwoPaths, 7);
    OracleResult bfs = solve_oracle(lv);
    REQUIRE(bfs.status == SolveStatus::Solved);
    auto ids = testsupport::solve_iddfs(lv, static_cast<int>(bfs.actions.size()) + 2);
    REQUIRE(ids.has_value());
    CHECK(ids->size() == bfs.actions.size());
    CHECK(replays_to_solved(lv, *ids));
}

TEST_CASE("oracle solutions replay to solved with the expected reward") {
    for (auto kind : {CaseKind::Corridor, CaseKind::TwoPaths}) {
        Level lv = generate_case_level(kind, kind == CaseKind::Corridor ? 8 : 7);
        OracleResult res = solve_oracle(lv);
        REQUIRE(res.status == SolveStatus::Solved);
        CHECK(replays_to_solved(lv, res.actions));
        // cumulative reward: -0.1 per step, +1 net box placement, +10 finish
        Level cur = lv;
        double total = 0.0;
        for (Action a : res.actions) {
            StepOutcome out = step(cur, a);
            total += out.reward;
            cur = out.next;
        }
        double expect = -0.1 * static_cast<double>(res.actions.size()) +
                        1.0 * lv.box_count() + 10.0;
        CHECK(total == doctest::Approx(expect));
    }
}

TEST_CASE("count_min_solutions sees exactly two optimal routes on two_paths") {
    Level lv = generate_case_level(CaseKind::TwoPaths, 7);
    CHECK(count_min_solutions(lv) == 2);
    Level corridor = generate_case_level(CaseKind::Corridor, 8);
    CHECK(count_min_solutions(corridor) == 1);
}
