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

TEST_CASE("chains extend one square per tick along their direction") {
    soko::Level lv = soko::parse_level(
        "####################\n"
        "#@$                #\n"
        "####################\n"
        "#.##################\n"
        "####################");
    PlanGrid g = init_plan(lv, kMap, kGains);
    for (int k = 1; k <= 8; ++k) {
        g = tick_plan(g, lv, kGains);
        // one new square per tick, no further
        CHECK(box_ch(g, Action::Right, {1, 2 + k}) >= kGains.theta);
        CHECK(box_ch(g, Action::Right, {1, 3 + k}) < kGains.theta);
    }
}

TEST_CASE("reach is bounded by the tick count from every seed") {
    soko::Level lv = soko::generate_case_level(soko::CaseKind::TwoPaths, 9);
    PlanGrid init = init_plan(lv, kMap, kGains);
    // seed set: squares with any positive activation at init
    std::vector<Pos> seeds;
    for (int r = 0; r < lv.height; ++r)
        for (int c = 0; c < lv.width; ++c)
            for (Action d : soko::kActions)
                if (box_ch(init, d, {r, c}) > 0.0 ||
                    init.get(kMap.agent_short[static_cast<size_t>(static_cast<int>(d))],
                             {r, c}) > 0.0) {
                    seeds.push_back({r, c});
                    break;
                }
    PlanGrid g = init;
    for (int k = 1; k <= 8; ++k) {
        g = tick_plan(g, lv, kGains);
        for (int r = 0; r < lv.height; ++r)
            for (int c = 0; c < lv.width; ++c) {
                bool active = false;
                for (Action d : soko::kActions) {
                    if (box_ch(g, d, {r, c}) >= kGains.theta) active = true;
                    if (g.get(kMap.agent_short[static_cast<size_t>(static_cast<int>(d))],
                              {r, c}) >= kGains.theta)
                        active = true;
                }
                if (!active) continue;
                int best = 1 << 30;
                for (Pos s : seeds)
                    best = std::min(best, std::abs(s.row - r) + std::abs(s.col - c));
                CHECK(best <= k);
            }
    }
}

TEST_CASE("a blocked straight line turns at tpe strength below lpe strength") {
    // box pushed right meets a wall two ahead; open corridor heads down
    soko::Level lv = soko::parse_level(
        "#######\n"
        "#@$  ##\n"
        "####  #\n"
        "#### .#\n"
        "#######");
    PlanGrid g = init_plan(lv, kMap, kGains);
    for (int t = 0; t < 4; ++t) g = tick_plan(g, lv, kGains);
    // the turn square (1,4): right ends there, down begins
    double straight = box_ch(g, Action::Right, {1, 3});
    double turned = box_ch(g, Action::Down, {1, 4});
    CHECK(turned >= kGains.theta);
    CHECK(turned < straight);
}

TEST_CASE("the dead-end branch is suppressed within branch length plus slack") {
    soko::Level lv = soko::generate_case_level(soko::CaseKind::Backtrack, 20);
    auto branch = soko::backtrack_branch_squares(20);
    PlanGrid g = init_plan(lv, kMap, kGains);
    std::vector<TraceEvent> trace;
    TickOptions opts;
    opts.trace = &trace;

    int stop_tick = -1;
    int clear_tick = -1;
    for (int t = 1; t <= 40; ++t) {
        g = tick_plan(g, lv, kGains, opts);
        if (stop_tick < 0)
            for (const auto& ev : trace)
                if (ev.kind == TraceKind::Stop &&
                    ev.square == soko::backtrack_stop_square(20))
                    stop_tick = ev.tick;
        if (stop_tick >= 0 && clear_tick < 0) {
            bool all_below = true;
            for (Pos p : branch)
                if (box_ch(g, Action::Right, p) >= kGains.theta) all_below = false;
            if (all_below) clear_tick = t;
        }
    }
    REQUIRE(stop_tick >= 0);
    REQUIRE(clear_tick >= 0);
    CHECK(clear_tick - stop_tick <= static_cast<int>(branch.size()) + 3);
}

TEST_CASE("abs-forcing at the stop square prevents the suppression") {
    soko::Level lv = soko::generate_case_level(soko::CaseKind::Backtrack, 20);
    auto branch = soko::backtrack_branch_squares(20);
    std::vector<PlanEdit> edits(1);
    edits[0].role = {RoleKind::BoxShort, Action::Right};
    edits[0].squares = {soko::backtrack_stop_square(20)};
    edits[0].abs_value = true;
    TickOptions opts;
    opts.edits = &edits;

    PlanGrid g = init_plan(lv, kMap, kGains);
    bool ever_cleared = false;
    for (int t = 1; t <= 30; ++t) {
        g = tick_plan(g, lv, kGains, opts);
        bool all_below = true;
        for (Pos p : branch)
            if (box_ch(g, Action::Right, p) >= kGains.theta) all_below = false;
        if (all_below && t > 8) ever_cleared = true;
    }
    CHECK(!ever_cleared);
}

TEST_CASE("reach grows with the chain factor") {
    MechanismGains weak = kGains;
    weak.lpe_gain = 0.95;
    MechanismGains strong = kGains;
    strong.lpe_gain = 1.1;
    int base = propagation_reach(kGains, 40, 60);
    CHECK(propagation_reach(weak, 40, 60) <= base);
    CHECK(propagation_reach(strong, 40, 60) >= base);
    CHECK(base > 4);
    CHECK(base < 40);
}

TEST_CASE("trace events cover every activation change above half theta") {
    soko::Level lv = soko::generate_case_level(soko::CaseKind::TwoPaths, 7);
    PlanGrid g = init_plan(lv, kMap, kGains);
    for (int t = 1; t <= 5; ++t) {
        std::vector<TraceEvent> trace;
        TickOptions opts;
        opts.trace = &trace;
        PlanGrid next = tick_plan(g, lv, kGains, opts);
        for (int r = 0; r < lv.height; ++r)
            for (int c = 0; c < lv.width; ++c)
                for (Action d : soko::kActions) {
                    double delta =
                        std::fabs(box_ch(next, d, {r, c}) - box_ch(g, d, {r, c}));
                    if (delta < kGains.theta / 2.0) continue;
                    int ch = kMap.box_short[static_cast<size_t>(static_cast<int>(d))];
                    int found = 0;
                    for (const auto& ev : trace)
                        if (ev.square == Pos{r, c} && ev.channel == ch) ++found;
                    CHECK(found == 1);
                }
        g = next;
    }
}
