#include <set>

#include "doctest.h"
#include "planner/channel_map.hpp"

using namespace planner;

TEST_CASE("the default map assigns 24 distinct roles") {
    ChannelMap m = default_channel_map(32);
    std::set<int> used;
    for (int d = 0; d < 4; ++d) {
        used.insert(m.box_short[static_cast<size_t>(d)]);
        used.insert(m.box_long[static_cast<size_t>(d)]);
        used.insert(m.agent_short[static_cast<size_t>(d)]);
        used.insert(m.gna[static_cast<size_t>(d)]);
        used.insert(m.pna[static_cast<size_t>(d)]);
    }
    used.insert({m.wall, m.target, m.box, m.agent});
    CHECK(used.size() == 24);
    CHECK(*used.rbegin() < 24);
    CHECK(m.total == 32);
}

TEST_CASE("C=24 fits exactly and C=16 is rejected") {
    ChannelMap m = default_channel_map(24);
    CHECK(m.total == 24);
    CHECK_THROWS_AS(default_channel_map(16), std::invalid_argument);
}

TEST_CASE("only the Up path channels carry the storage offset") {
    ChannelMap m = default_channel_map(32);
    CHECK(m.offset(m.box_short[0]) == std::pair<int, int>{1, 1});
    CHECK(m.offset(m.box_long[0]) == std::pair<int, int>{1, 1});
    CHECK(m.offset(m.agent_short[0]) == std::pair<int, int>{1, 1});
    CHECK(m.offset(m.box_short[1]) == std::pair<int, int>{0, 0});
    CHECK(m.offset(m.gna[0]) == std::pair<int, int>{0, 0});
    CHECK(m.offset(m.wall) == std::pair<int, int>{0, 0});
}
