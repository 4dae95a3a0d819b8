#include "doctest.h"
#include "planner/engine.hpp"
#include "soko/generate.hpp"

using namespace planner;
using soko::Action;
using soko::Pos;

namespace {

const ChannelMap kMap = default_channel_map(32);
const MechanismGains kGains{};

double box_ch(const PlanGrid& g, Action d, Pos p) {
    return g.get(g.map.box_short[static_cast<size_t>(static_cast<int>(d))], p);
}

}  // namespace

TEST_CASE("a box three left of its target seeds the full backward chain") {
    // target exactly 3 right of the box: backward seeds cover the box square
    soko::Level lv = soko::parse_level("#######\n#@$  .#\n#######");
    PlanGrid g = init_plan(lv, kMap, kGains);
    CHECK(box_ch(g, Action::Right, {1, 2}) >= kGains.seed_gain);  // box square
    CHECK(box_ch(g, Action::Right, {1, 3}) >= kGains.seed_gain);  // target-2
    CHECK(box_ch(g, Action::Right, {1, 4}) >= kGains.seed_gain);  // target-1
    CHECK(box_ch(g, Action::Right, {1, 5}) == 0.0);               // the target itself
}

TEST_CASE("a fully walled box has no forward seeds") {
    soko::Level lv = soko::parse_level("#####\n#@$##\n##.##\n#####");
    // box at (1,2): right is wall, down-push needs (0,2) wall, etc.
    PlanGrid g = init_plan(lv, kMap, kGains);
    for (Action d : soko::kActions) CHECK(box_ch(g, d, {1, 2}) == 0.0);
}

TEST_CASE("backward seeds appear only near targets") {
    soko::Level lv = soko::generate_case_level(soko::CaseKind::Backtrack, 20);
    PlanGrid g = init_plan(lv, kMap, kGains);
    Pos target{17, 17};
    int seeded = 0;
    for (int r = 0; r < 20; ++r)
        for (int c = 0; c < 20; ++c)
            for (Action d : soko::kActions) {
                Pos p{r, c};
                if (box_ch(g, d, p) > 0.0 && !lv.has_box(p)) {
                    ++seeded;
                    int dist = std::abs(r - target.row) + std::abs(c - target.col);
                    CHECK(dist <= 3);
                }
            }
    CHECK(seeded > 0);
}

TEST_CASE("entity channels reflect the level exactly") {
    soko::Level lv = soko::parse_level("#####\n#@$.#\n#####");
    PlanGrid g = init_plan(lv, kMap, kGains);
    CHECK(g.get(kMap.wall, {0, 0}) == 1.0);
    CHECK(g.get(kMap.wall, {1, 1}) == 0.0);
    CHECK(g.get(kMap.agent, {1, 1}) == 1.0);
    CHECK(g.get(kMap.box, {1, 2}) == 1.0);
    CHECK(g.get(kMap.target, {1, 3}) == 1.0);
}

TEST_CASE("agent seeds cover only legal non-push floor moves") {
    soko::Level lv = soko::parse_level("#######\n#@$  .#\n#######");
    PlanGrid g = init_plan(lv, kMap, kGains);
    // right is a box (push: excluded from self-seeds), all others walls
    for (Action d : soko::kActions)
        CHECK(g.get(kMap.agent_short[static_cast<size_t>(static_cast<int>(d))], {1, 1}) ==
              0.0);

    soko::Level open = soko::generate_case_level(soko::CaseKind::TwoPaths, 9);
    PlanGrid g2 = init_plan(open, kMap, kGains);
    CHECK(g2.get(kMap.agent_short[static_cast<size_t>(static_cast<int>(Action::Right))],
                 {1, 1}) == doctest::Approx(kGains.agent_seed));
    CHECK(g2.get(kMap.agent_short[static_cast<size_t>(static_cast<int>(Action::Up))],
                 {1, 1}) == 0.0);
}
