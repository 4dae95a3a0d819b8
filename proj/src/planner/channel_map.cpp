#include "planner/channel_map.hpp"

namespace planner {

ChannelMap default_channel_map(int channels) {
    if (channels < ChannelMap::kRoles)
        throw std::invalid_argument("channel map needs C >= " +
                                    std::to_string(ChannelMap::kRoles) + ", got " +
                                    std::to_string(channels));
    ChannelMap m;
    int next = 0;
    for (int d = 0; d < 4; ++d) m.box_short[static_cast<size_t>(d)] = next++;
    for (int d = 0; d < 4; ++d) m.box_long[static_cast<size_t>(d)] = next++;
    for (int d = 0; d < 4; ++d) m.agent_short[static_cast<size_t>(d)] = next++;
    for (int d = 0; d < 4; ++d) m.gna[static_cast<size_t>(d)] = next++;
    for (int d = 0; d < 4; ++d) m.pna[static_cast<size_t>(d)] = next++;
    m.wall = next++;
    m.target = next++;
    m.box = next++;
    m.agent = next++;
    m.total = channels;
    return m;
}

}  // namespace planner
