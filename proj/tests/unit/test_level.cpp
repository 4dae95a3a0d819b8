#include "doctest.h"
#include "soko/level.hpp"

using namespace soko;

TEST_CASE("parse_level maps characters to tiles") {
    Level lv = parse_level("#####\n#@$.#\n#####");
    CHECK(lv.height == 3);
    CHECK(lv.width == 5);
    CHECK(lv.agent_pos == Pos{1, 1});
    CHECK(lv.at({1, 2}) == Tile::Box);
    CHECK(lv.at({1, 3}) == Tile::Target);
    CHECK(lv.at({0, 0}) == Tile::Wall);
}

TEST_CASE("parse_level rejects invariant violations") {
    CHECK_THROWS_WITH_AS(parse_level("#####\n#@@$#\n#..##"),
                         doctest::Contains("multiple agents"), parse_error);
    CHECK_THROWS_AS(parse_level("#####\n#$ .#\n#####"), parse_error);  // no agent
    CHECK_THROWS_AS(parse_level("#####\n#@$ #\n#####"), parse_error);  // no target
    CHECK_THROWS_WITH_AS(parse_level("#####\n#@$.#\n###"),
                         doctest::Contains("ragged"), parse_error);
    CHECK_THROWS_WITH_AS(parse_level("#####\n#@X.#\n#####"),
                         doctest::Contains("unknown character"), parse_error);
}

TEST_CASE("parse_level accepts a boxoban header") {
    std::string grid;
    grid += "; 42\n";
    grid += "##########\n";
    for (int r = 0; r < 8; ++r) {
        std::string row = "#        #";
        if (r == 0) row = "#@$.     #";
        grid += row + "\n";
    }
    grid += "##########\n";
    Level lv = parse_level(grid);
    CHECK(lv.id == 42);
    CHECK(lv.height == 10);
    for (int c = 0; c < 10; ++c) {
        CHECK(lv.at({0, c}) == Tile::Wall);
        CHECK(lv.at({9, c}) == Tile::Wall);
    }
}

TEST_CASE("to_text inverts parse_level") {
    std::string text = "#####\n#@$.#\n#####\n";
    CHECK(to_text(parse_level(text)) == text);
    std::string occupied = "######\n#@*.$#\n######\n";
    CHECK(to_text(parse_level(occupied)) == occupied);
}

TEST_CASE("step moves the agent and costs the step penalty") {
    Level lv = parse_level("#####\n#@ .#\n##$##\n#####");
    StepOutcome out = step(lv, Action::Right);
    CHECK(out.next.agent_pos == Pos{1, 2});
    CHECK(out.reward == doctest::Approx(-0.1));
    CHECK(!out.solved);
    CHECK(!out.moved_box);
}

TEST_CASE("step pushes a box onto a target and solves a one-box level") {
    Level lv = parse_level("#####\n#@$.#\n#####");
    StepOutcome out = step(lv, Action::Right);
    CHECK(out.solved);
    CHECK(out.reward == doctest::Approx(10.9));
    REQUIRE(out.moved_box.has_value());
    CHECK(out.moved_box->from == Pos{1, 2});
    CHECK(out.moved_box->dir == Action::Right);
    CHECK(out.next.at({1, 3}) == Tile::BoxOnTarget);
}

TEST_CASE("blocked pushes are no-ops that still cost a step") {
    Level lv = parse_level("####\n#@$#\n#.##\n####");  // box against the wall
    StepOutcome out = step(lv, Action::Right);
    CHECK(out.next.agent_pos == lv.agent_pos);
    CHECK(out.next.at({1, 2}) == Tile::Box);
    CHECK(out.reward == doctest::Approx(-0.1));
}

TEST_CASE("reward terms for boxes entering and leaving targets") {
    // off a target onto the next target: +1 and -1 cancel
    Level lv = parse_level("#######\n#@*.$ #\n#######");
    StepOutcome out = step(lv, Action::Right);
    CHECK(out.reward == doctest::Approx(-0.1));
    CHECK(out.next.at({1, 3}) == Tile::BoxOnTarget);

    // off a target onto plain floor: the removal term
    Level lv2 = parse_level("#######\n#@* $.#\n#######");
    StepOutcome out2 = step(lv2, Action::Right);
    CHECK(out2.reward == doctest::Approx(-1.1));
}

TEST_CASE("step conserves walls, boxes and targets") {
    Level lv = parse_level("#######\n#@$  .#\n# $  .#\n#######");
    Level cur = lv;
    for (Action a : {Action::Right, Action::Down, Action::Right, Action::Up, Action::Left}) {
        StepOutcome out = step(cur, a);
        CHECK(out.next.box_count() == lv.box_count());
        CHECK(out.next.target_count() == lv.target_count());
        for (int r = 0; r < lv.height; ++r)
            for (int c = 0; c < lv.width; ++c)
                CHECK((out.next.at({r, c}) == Tile::Wall) == (lv.at({r, c}) == Tile::Wall));
        cur = out.next;
    }
}

TEST_CASE("render_rgb uses the palette and round-trips through classification") {
    Level lv = parse_level("######\n#+$  #\n#*  $#\n#.   #\n######");
    drc::Tensor3 img = render_rgb(lv);
    CHECK(img.at(0, 0, 0) == 0.0);  // wall is black
    CHECK(img.at(1, 1, 0) == doctest::Approx(219.0 / 255.0));  // agent-on-target
    CHECK(img.at(1, 3, 1) == doctest::Approx(248.0 / 255.0));  // floor green
    CHECK(img.at(2, 1, 0) == doctest::Approx(254.0 / 255.0));  // box-on-target
    Level back = classify_rgb(img);
    for (int r = 0; r < lv.height; ++r)
        for (int c = 0; c < lv.width; ++c) CHECK(back.at({r, c}) == lv.at({r, c}));

    Level lv2 = parse_level("#####\n#@$.#\n#####");
    drc::Tensor3 img2 = render_rgb(lv2);
    CHECK(img2.at(1, 1, 0) == doctest::Approx(160.0 / 255.0));  // plain agent
    CHECK(img2.at(1, 3, 2) == doctest::Approx(125.0 / 255.0));  // target blue
}

TEST_CASE("solved detection matches covered targets") {
    Level lv = parse_level("#####\n#@$.#\n#####");
    CHECK(!lv.solved());
    StepOutcome out = step(lv, Action::Right);
    CHECK(out.next.solved());
}
