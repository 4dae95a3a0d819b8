#ifndef PLANNER_ENGINE_HPP
#define PLANNER_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "planner/channel_map.hpp"
#include "planner/gains.hpp"
#include "soko/level.hpp"

namespace planner {

using soko::Action;
using soko::Level;
using soko::Pos;

// ---------------------------------------------------------------------------
// Plan state
//
// Each path channel (box_short, agent_short per direction) is maintained as
// two signed components: a forward chain grown from the movable entity and a
// backward chain grown from its destination (targets for boxes, planned push
// squares for the agent). The observable channel value is the clamped sum,
// so squares covered by both chains -- a connected plan -- stand out above
// seed level. Stopping, turning and backtracking waves act on the
// components; decoding, readout and interventions see the observable sum.
// ---------------------------------------------------------------------------

enum class RoleKind { BoxShort, BoxLong, AgentShort, Gna, Pna, Wall, Target, Box, Agent };

// aux component plane indices (each block is 4 planes, one per direction)
struct AuxPlane {
    static constexpr int kBoxFwd = 0;
    static constexpr int kBoxBwd = 4;
    static constexpr int kAgentFwd = 8;
    static constexpr int kAgentBwd = 12;
    static constexpr int kBoxLong = 16;
    static constexpr int kCount = 20;
};

struct ChannelRole {
    RoleKind kind = RoleKind::BoxShort;
    Action dir = Action::Up;  // meaningful for directional kinds
};

int role_channel(const ChannelMap& map, const ChannelRole& role);
std::string role_name(const ChannelRole& role);

struct PlanGrid {
    ChannelMap map;
    drc::Tensor3 acts;  // observable H x W x map.total (Up channels offset)
    drc::Tensor3 aux;   // components: box fwd 0-3, box bwd 4-7, agent fwd 8-11,
                        // agent bwd 12-15, box long 16-19 (logical coords)
    int tick_index = 0;

    int height() const { return acts.height; }
    int width() const { return acts.width; }

    // observable accessors in logical coordinates (offset-aware)
    double get(int channel, Pos p) const;
    void set(int channel, Pos p, double v);
    double get(const ChannelRole& role, Pos p) const;
};

enum class TraceKind {
    Seed,
    ExtendLinear,
    ExtendTurn,
    Stop,
    Backtrack,
    WtaSuppress,
    Transfer,
    Readout
};

const char* trace_kind_name(TraceKind k);

struct TraceEvent {
    TraceKind kind;
    Pos square;
    int channel;
    int tick;
};

// Activation edit applied inside the planner. Affine edits add c to the
// forward component (so the observable change is alpha*x + c); abs_value
// rectifies both components in place.
struct PlanEdit {
    enum class Stage { Tick, Readout };
    Stage stage = Stage::Tick;
    ChannelRole role;
    std::vector<Pos> squares;  // empty: all
    std::vector<int> ticks;    // empty: all (grid.tick_index after update)
    bool abs_value = false;
    double alpha = 1.0;
    double c = 0.0;
};

struct TickOptions {
    bool winner_takes_all = true;     // false mirrors zero-ablating WTA kernels
    bool turn_extension = true;
    const std::vector<PlanEdit>* edits = nullptr;
    std::vector<TraceEvent>* trace = nullptr;
};

// Seeds the plan channels from the level geometry: every legal push
// direction at each box (forward chains), three squares against each
// direction at every uncovered target (backward chains), and the agent's
// legal floor moves. Entity channels are filled from the tiles.
PlanGrid init_plan(const Level& level, const ChannelMap& map, const MechanismGains& gains);

void refresh_entities(PlanGrid& grid, const Level& level);

// Recomputes the observable path channels from the aux components (used
// after direct aux edits, e.g. by the ablation machinery).
void rebuild_observable(PlanGrid& grid, double a_max);

// One synchronous update from the pre-tick grid: re-seed, linear extension,
// turn extension at blocked continuations, stopping at invalid moves,
// backtracking waves from dead ends, winner-takes-all across same-square
// directions, saturation, and long->short transfer.
PlanGrid tick_plan(const PlanGrid& grid, const Level& level, const MechanismGains& gains,
                   const TickOptions& options = {});

// Long->short transfer as a standalone operation. When `executed` is given,
// that square's short channel is cleared first (the move just happened).
PlanGrid transfer_long_to_short(const PlanGrid& grid, const MechanismGains& gains,
                                std::optional<std::pair<Pos, Action>> executed = {},
                                std::vector<TraceEvent>* trace = nullptr);

struct Plan {
    struct Arrow {
        Action dir;
        bool long_term;
        double strength;
    };
    int height = 0;
    int width = 0;
    std::vector<std::optional<Arrow>> arrows;

    std::optional<Arrow> at(Pos p) const {
        return arrows[static_cast<size_t>(p.row) * width + p.col];
    }
    int count() const;
};

// Per square: the strongest short-term box direction >= theta, else the
// strongest long-term one (tagged long_term).
Plan decode_plan(const PlanGrid& grid, double theta);

struct Readout {
    Action action = Action::Up;
    bool no_plan = false;  // fallback: nothing reached theta
};

// Writes the grid-next-action channels at the agent square (agent channel
// minus overlapping box channel), max-pools them into the pooled-next-action
// channels, and returns the argmax direction (ties resolved in
// Up<Down<Left<Right order). Readout-stage edits apply between the two
// pooling steps, so both GNA- and PNA-level interventions flow through.
Readout readout_action(PlanGrid& grid, const Level& level, const MechanismGains& gains,
                       const std::vector<PlanEdit>* edits = nullptr,
                       std::vector<TraceEvent>* trace = nullptr);

// Refreshes entity channels from level_after and cancels the executed move's
// activation at its origin square (opposite-sign contribution).
PlanGrid apply_transition_update(const PlanGrid& grid, const Level& level_before,
                                 Action action, const Level& level_after,
                                 const MechanismGains& gains = {});

struct Episode {
    std::vector<Level> levels;   // levels[t] is the state before actions[t]
    std::vector<Action> actions;
    std::vector<double> rewards;
    std::vector<bool> no_plan;
    std::vector<PlanGrid> grids;  // post-tick grid per step (when recorded)
    std::vector<TraceEvent> trace;
    bool solved = false;
    int steps = 0;
    double total_reward = 0.0;
};

struct RunOptions {
    int max_steps = 120;
    int ticks_per_step = 3;
    int thinking_steps = 0;
    bool record_grids = true;
    bool record_trace = true;
    bool winner_takes_all = true;
    const std::vector<PlanEdit>* edits = nullptr;
};

Episode run_planner(const Level& level, const ChannelMap& map, const MechanismGains& gains,
                    const RunOptions& options = {});

// Longest chain distance (squares with observable activation >= theta)
// reached from a single seed on an empty corridor of the given width; the
// probe for reach/steering measurements.
int propagation_reach(const MechanismGains& gains, int corridor_length, int ticks);

}  // namespace planner

#endif  // PLANNER_ENGINE_HPP
