#include "doctest.h"
#include "soko/generate.hpp"
#include "soko/solve.hpp"

using namespace soko;

TEST_CASE("zigzag levels have the stated size and are oracle-solvable") {
    for (int n : {8, 12, 16}) {
        Level lv = generate_case_level(CaseKind::Zigzag, n);
        CHECK(lv.height == n);
        CHECK(lv.width == n);
        OracleResult res = solve_oracle(lv);
        CHECK(res.status == SolveStatus::Solved);
    }
}

TEST_CASE("backtrack(20) is 20x20, oracle-solvable, with its dead-end corridor") {
    Level lv = generate_case_level(CaseKind::Backtrack, 20);
    CHECK(lv.height == 20);
    CHECK(lv.width == 20);
    OracleResult res = solve_oracle(lv);
    REQUIRE(res.status == SolveStatus::Solved);
    // the dead-end corridor is floor, walled at its far end
    for (Pos p : backtrack_branch_squares(20)) CHECK(!lv.is_wall(p));
    Pos stop = backtrack_stop_square(20);
    CHECK(!lv.is_wall(stop));
    CHECK(lv.is_wall({stop.row, stop.col - 1}));
    CHECK(lv.is_wall({stop.row - 1, stop.col}));
    CHECK(lv.is_wall({stop.row + 1, stop.col}));
}

TEST_CASE("two_paths has exactly two distinct minimum-length solutions") {
    for (int n : {7, 9}) {
        Level lv = generate_case_level(CaseKind::TwoPaths, n);
        CHECK(count_min_solutions(lv) == 2);
    }
}

TEST_CASE("corridor levels solve by pushing right") {
    Level lv = generate_case_level(CaseKind::Corridor, 8);
    OracleResult res = solve_oracle(lv);
    REQUIRE(res.status == SolveStatus::Solved);
    for (Action a : res.actions) CHECK(a == Action::Right);
}

TEST_CASE("generators are deterministic") {
    CHECK(to_text(generate_case_level(CaseKind::Zigzag, 10)) ==
          to_text(generate_case_level(CaseKind::Zigzag, 10)));
    CHECK(to_text(generate_case_level(CaseKind::Backtrack, 24)) ==
          to_text(generate_case_level(CaseKind::Backtrack, 24)));
}

TEST_CASE("sizes outside the documented bounds are rejected") {
    CHECK_THROWS_AS(generate_case_level(CaseKind::Zigzag, 7), std::out_of_range);
    CHECK_THROWS_AS(generate_case_level(CaseKind::Zigzag, 49), std::out_of_range);
    CHECK_THROWS_AS(generate_case_level(CaseKind::Backtrack, 19), std::out_of_range);
    CHECK_THROWS_AS(generate_case_level(CaseKind::Corridor, 4), std::out_of_range);
    CHECK_THROWS_AS(generate_case_level(CaseKind::TwoPaths, 6), std::out_of_range);
}
