#include "soko/level.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace soko {

namespace {

constexpr double kPalette[7][3] = {
    {0, 0, 0},          // Wall
    {243, 248, 238},    // Floor
    {254, 126, 125},    // Target
    {142, 121, 56},     // Box
    {254, 95, 56},      // BoxOnTarget
    {160, 212, 56},     // Agent
    {219, 212, 56},     // AgentOnTarget
};

std::optional<Tile> tile_from_char(char c) {
    switch (c) {
        case '#': return Tile::Wall;
        case ' ': return Tile::Floor;
        case '.': return Tile::Target;
        case '$': return Tile::Box;
        case '*': return Tile::BoxOnTarget;
        case '@': return Tile::Agent;
        case '+': return Tile::AgentOnTarget;
        default: return std::nullopt;
    }
}

char char_from_tile(Tile t) {
    switch (t) {
        case Tile::Wall: return '#';
        case Tile::Floor: return ' ';
        case Tile::Target: return '.';
        case Tile::Box: return '$';
        case Tile::BoxOnTarget: return '*';
        case Tile::Agent: return '@';
        case Tile::AgentOnTarget: return '+';
    }
    return '?';
}

void check_invariants(const Level& level) {
    int agents = 0;
    for (int r = 0; r < level.height; ++r)
        for (int c = 0; c < level.width; ++c) {
            Tile t = level.at({r, c});
            if (t == Tile::Agent || t == Tile::AgentOnTarget) ++agents;
        }
    if (agents == 0) throw parse_error("no agent in level");
    if (agents > 1) throw parse_error("multiple agents in level");
    int boxes = level.box_count();
    int targets = level.target_count();
    if (boxes < 1) throw parse_error("level has no boxes");
    if (boxes != targets)
        throw parse_error("box/target count mismatch: " + std::to_string(boxes) +
                          " boxes vs " + std::to_string(targets) + " targets");
}

}  // namespace

bool Level::solved() const {
    // Box count equals target count, so "no plain Box tile" means every box
    // sits on a target and every target is covered.
    bool any = false;
    for (Tile t : tiles) {
        if (t == Tile::Box) return false;
        if (t == Tile::BoxOnTarget) any = true;
    }
    return any;
}

int Level::box_count() const {
    int n = 0;
    for (Tile t : tiles)
        if (t == Tile::Box || t == Tile::BoxOnTarget) ++n;
    return n;
}

int Level::target_count() const {
    int n = 0;
    for (Tile t : tiles)
        if (t == Tile::Target || t == Tile::BoxOnTarget || t == Tile::AgentOnTarget) ++n;
    return n;
}

std::vector<Pos> Level::box_positions() const {
    std::vector<Pos> out;
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
            if (has_box({r, c})) out.push_back({r, c});
    return out;
}

std::vector<Pos> Level::target_positions() const {
    std::vector<Pos> out;
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
            if (has_target({r, c})) out.push_back({r, c});
    return out;
}

Level parse_level(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    std::optional<long> id;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && lines.empty()) continue;  // leading blank lines
        if (line.rfind(';', 0) == 0) {
            if (!lines.empty()) throw parse_error("header line inside grid");
            try {
                id = std::stol(line.substr(1));
            } catch (const std::exception&) {
                throw parse_error("malformed header: " + line);
            }
            continue;
        }
        if (line.empty()) break;  // blank line terminates the block
        lines.push_back(line);
    }
    if (lines.empty()) throw parse_error("empty level text");

    Level level;
    level.height = static_cast<int>(lines.size());
    level.width = static_cast<int>(lines[0].size());
    level.id = id;
    level.tiles.reserve(static_cast<size_t>(level.height) * level.width);
    bool agent_seen = false;
    for (int r = 0; r < level.height; ++r) {
        if (static_cast<int>(lines[r].size()) != level.width)
            throw parse_error("ragged lines: line " + std::to_string(r) + " has " +
                              std::to_string(lines[r].size()) + " chars, expected " +
                              std::to_string(level.width));
        for (int c = 0; c < level.width; ++c) {
            auto t = tile_from_char(lines[r][c]);
            if (!t)
                throw parse_error(std::string("unknown character '") + lines[r][c] +
                                  "' at line " + std::to_string(r));
            level.tiles.push_back(*t);
            if (*t == Tile::Agent || *t == Tile::AgentOnTarget) {
                level.agent_pos = {r, c};
                agent_seen = true;
            }
        }
    }
    (void)agent_seen;
    check_invariants(level);
    return level;
}

std::string to_text(const Level& level) {
    std::string out;
    if (level.id) out += "; " + std::to_string(*level.id) + "\n";
    for (int r = 0; r < level.height; ++r) {
        for (int c = 0; c < level.width; ++c) out += char_from_tile(level.at({r, c}));
        out += '\n';
    }
    return out;
}

StepOutcome step(const Level& level, Action action) {
    StepOutcome out;
    out.next = level;
    out.reward = -0.1;

    Level& nxt = out.next;
    Pos d = delta(action);
    Pos dest = level.agent_pos + d;

    auto clear_agent = [&](Pos p) {
        nxt.at(p) = (nxt.at(p) == Tile::AgentOnTarget) ? Tile::Target : Tile::Floor;
    };
    auto place_agent = [&](Pos p) {
        nxt.at(p) = (nxt.at(p) == Tile::Target) ? Tile::AgentOnTarget : Tile::Agent;
        nxt.agent_pos = p;
    };

    if (level.is_free(dest)) {
        clear_agent(level.agent_pos);
        place_agent(dest);
    } else if (level.has_box(dest)) {
        Pos beyond = dest + d;
        if (level.is_free(beyond)) {
            bool was_on_target = nxt.at(dest) == Tile::BoxOnTarget;
            bool now_on_target = nxt.at(beyond) == Tile::Target;
            nxt.at(dest) = was_on_target ? Tile::Target : Tile::Floor;
            nxt.at(beyond) = now_on_target ? Tile::BoxOnTarget : Tile::Box;
            clear_agent(level.agent_pos);
            place_agent(dest);
            if (now_on_target && !was_on_target) out.reward += 1.0;
            if (was_on_target && !now_on_target) out.reward -= 1.0;
            out.moved_box = StepOutcome::BoxMove{dest, action};
        }
        // box blocked: no-op
    }
    // wall or out of bounds: no-op

    out.solved = nxt.solved();
    if (out.solved) out.reward += 10.0;
    return out;
}

drc::Tensor3 render_rgb(const Level& level) {
    drc::Tensor3 img(level.height, level.width, 3);
    for (int r = 0; r < level.height; ++r)
        for (int c = 0; c < level.width; ++c) {
            const double* rgb = kPalette[static_cast<int>(level.at({r, c}))];
            for (int k = 0; k < 3; ++k) img.at(r, c, k) = rgb[k] / 255.0;
        }
    return img;
}

Level classify_rgb(const drc::Tensor3& image) {
    Level level;
    level.height = image.height;
    level.width = image.width;
    level.tiles.resize(static_cast<size_t>(level.height) * level.width);
    for (int r = 0; r < level.height; ++r)
        for (int c = 0; c < level.width; ++c) {
            int match = -1;
            for (int t = 0; t < 7; ++t) {
                bool ok = true;
                for (int k = 0; k < 3; ++k)
                    if (std::fabs(image.at(r, c, k) - kPalette[t][k] / 255.0) > 1e-9)
                        ok = false;
                if (ok) {
                    match = t;
                    break;
                }
            }
            if (match < 0) throw std::invalid_argument("pixel matches no palette entry");
            level.at({r, c}) = static_cast<Tile>(match);
            if (level.at({r, c}) == Tile::Agent || level.at({r, c}) == Tile::AgentOnTarget)
                level.agent_pos = {r, c};
        }
    return level;
}

}  // namespace soko
