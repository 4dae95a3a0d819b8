#include "planner/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace planner {

namespace {

using soko::delta;
using soko::Tile;

constexpr int kBoxFwd = AuxPlane::kBoxFwd;
constexpr int kBoxBwd = AuxPlane::kBoxBwd;
constexpr int kAgentFwd = AuxPlane::kAgentFwd;
constexpr int kAgentBwd = AuxPlane::kAgentBwd;
constexpr int kBoxLong = AuxPlane::kBoxLong;
constexpr int kAuxPlanes = AuxPlane::kCount;

constexpr std::array<Action, 4> kDirs = {Action::Up, Action::Down, Action::Left,
                                         Action::Right};

int dir_index(Action a) { return static_cast<int>(a); }

std::array<Action, 2> orthogonal(Action a) {
    if (a == Action::Up || a == Action::Down) return {Action::Left, Action::Right};
    return {Action::Up, Action::Down};
}

double aux_get(const drc::Tensor3& aux, int plane, Pos p) {
    if (!aux.in_bounds(p.row, p.col)) return 0.0;
    return aux.at(p.row, p.col, plane);
}
double& aux_at(drc::Tensor3& aux, int plane, Pos p) { return aux.at(p.row, p.col, plane); }

double pos_part(double v) { return v > 0.0 ? v : 0.0; }
double neg_part(double v) { return v < 0.0 ? v : 0.0; }

// "box moves d from s" is representable: s and its push/destination squares
// are compatible with a push, and plans terminate on targets.
bool hold_box(const Level& level, Pos s, Action d) {
    if (!level.in_bounds(s) || level.is_wall(s)) return false;
    if (level.has_target(s)) return false;
    Pos dest = s + delta(d);
    Pos push = s - delta(d);
    if (level.is_wall(dest) || level.has_box(dest)) return false;
    if (level.is_wall(push) || level.has_box(push)) return false;
    return true;
}

// "agent moves d from s": moving into a box square is representable only as
// a planned push (the box channel at the destination agrees on direction).
bool hold_agent(const Level& level, const PlanGrid& pre, double theta, Pos s, Action d) {
    if (!level.in_bounds(s) || level.is_wall(s) || level.has_box(s)) return false;
    Pos dest = s + delta(d);
    if (level.is_wall(dest)) return false;
    if (level.has_box(dest))
        return pre.get(pre.map.box_short[static_cast<size_t>(dir_index(d))], dest) >= theta;
    return true;
}

struct CellWork {
    double inc_lin_f = 0.0, inc_turn_f = 0.0;
    double inc_lin_b = 0.0, inc_turn_b = 0.0;
    double neg_in_f = 0.0, neg_in_b = 0.0;
    bool wta = false;
};

}  // namespace

int role_channel(const ChannelMap& map, const ChannelRole& role) {
    int d = dir_index(role.dir);
    switch (role.kind) {
        case RoleKind::BoxShort: return map.box_short[static_cast<size_t>(d)];
        case RoleKind::BoxLong: return map.box_long[static_cast<size_t>(d)];
        case RoleKind::AgentShort: return map.agent_short[static_cast<size_t>(d)];
        case RoleKind::Gna: return map.gna[static_cast<size_t>(d)];
        case RoleKind::Pna: return map.pna[static_cast<size_t>(d)];
        case RoleKind::Wall: return map.wall;
        case RoleKind::Target: return map.target;
        case RoleKind::Box: return map.box;
        case RoleKind::Agent: return map.agent;
    }
    return -1;
}

std::string role_name(const ChannelRole& role) {
    switch (role.kind) {
        case RoleKind::BoxShort: return std::string("box_short_") + soko::action_name(role.dir);
        case RoleKind::BoxLong: return std::string("box_long_") + soko::action_name(role.dir);
        case RoleKind::AgentShort:
            return std::string("agent_short_") + soko::action_name(role.dir);
        case RoleKind::Gna: return std::string("gna_") + soko::action_name(role.dir);
        case RoleKind::Pna: return std::string("pna_") + soko::action_name(role.dir);
        case RoleKind::Wall: return "wall";
        case RoleKind::Target: return "target";
        case RoleKind::Box: return "box";
        case RoleKind::Agent: return "agent";
    }
    return "?";
}

const char* trace_kind_name(TraceKind k) {
    switch (k) {
        case TraceKind::Seed: return "seed";
        case TraceKind::ExtendLinear: return "extend_linear";
        case TraceKind::ExtendTurn: return "extend_turn";
        case TraceKind::Stop: return "stop";
        case TraceKind::Backtrack: return "backtrack";
        case TraceKind::WtaSuppress: return "wta_suppress";
        case TraceKind::Transfer: return "transfer";
        case TraceKind::Readout: return "readout";
    }
    return "?";
}

double PlanGrid::get(int channel, Pos p) const {
    auto [dr, dc] = map.offset(channel);
    int r = p.row + dr, c = p.col + dc;
    if (!acts.in_bounds(r, c)) return 0.0;
    return acts.at(r, c, channel);
}

void PlanGrid::set(int channel, Pos p, double v) {
    auto [dr, dc] = map.offset(channel);
    int r = p.row + dr, c = p.col + dc;
    if (!acts.in_bounds(r, c)) return;  // offset storage drops border writes
    acts.at(r, c, channel) = v;
}

double PlanGrid::get(const ChannelRole& role, Pos p) const {
    return get(role_channel(map, role), p);
}

void refresh_entities(PlanGrid& grid, const Level& level) {
    for (int r = 0; r < grid.height(); ++r)
        for (int c = 0; c < grid.width(); ++c) {
            Pos p{r, c};
            grid.acts.at(r, c, grid.map.wall) = level.is_wall(p) ? 1.0 : 0.0;
            grid.acts.at(r, c, grid.map.target) = (level.at(p) == Tile::Target) ? 1.0 : 0.0;
            grid.acts.at(r, c, grid.map.box) = level.has_box(p) ? 1.0 : 0.0;
            grid.acts.at(r, c, grid.map.agent) = (p == level.agent_pos) ? 1.0 : 0.0;
        }
}


void rebuild_observable(PlanGrid& grid, double a_max) {
    for (int r = 0; r < grid.height(); ++r)
        for (int c = 0; c < grid.width(); ++c) {
            Pos p{r, c};
            for (Action d : kDirs) {
                int di = dir_index(d);
                double box_v = std::clamp(
                    aux_get(grid.aux, kBoxFwd + di, p) + aux_get(grid.aux, kBoxBwd + di, p),
                    -a_max, a_max);
                double ag_v = std::clamp(aux_get(grid.aux, kAgentFwd + di, p) +
                                             aux_get(grid.aux, kAgentBwd + di, p),
                                         -a_max, a_max);
                grid.set(grid.map.box_short[static_cast<size_t>(di)], p, box_v);
                grid.set(grid.map.agent_short[static_cast<size_t>(di)], p, ag_v);
                grid.set(grid.map.box_long[static_cast<size_t>(di)], p,
                         aux_get(grid.aux, kBoxLong + di, p));
            }
        }
}

namespace {

double box_fwd_seed(const Level& level, Pos s, Action d, const MechanismGains& gains) {
    if (level.at(s) != Tile::Box) return 0.0;  // boxes already on targets stay
    if (!hold_box(level, s, d)) return 0.0;
    return gains.seed_gain;
}

double box_bwd_seed(const Level& level, Pos s, Action d, const MechanismGains& gains) {
    Pos step = delta(d);
    for (int k = 1; k <= 3; ++k) {
        Pos t{s.row + k * step.row, s.col + k * step.col};
        if (!level.in_bounds(t)) break;
        if (level.is_wall(t) || level.has_box(t)) break;  // straight line must be clear
        if (level.at(t) == Tile::Target)
            return hold_box(level, s, d) ? gains.seed_gain : 0.0;
    }
    return 0.0;
}

double agent_fwd_seed(const Level& level, Pos s, Action d, const MechanismGains& gains) {
    if (!(s == level.agent_pos)) return 0.0;
    if (!level.is_free(s + delta(d))) return 0.0;  // pushes enter via the copy rule
    return gains.agent_seed;
}

// copy rule: one square against each planned box move (the push square)
double agent_bwd_seed(const Level& level, const PlanGrid& pre, Pos s, Action d,
                      const MechanismGains& gains) {
    Pos box_sq = s + delta(d);
    if (!level.in_bounds(box_sq)) return 0.0;
    double plan = pre.get(pre.map.box_short[static_cast<size_t>(dir_index(d))], box_sq);
    if (plan < gains.theta) return 0.0;
    if (!hold_agent(level, pre, gains.theta, s, d)) return 0.0;
    return std::min(gains.copy_gain * plan, gains.a_max);
}

struct GroupContext {
    const Level& level;
    const PlanGrid& pre;
    const MechanismGains& gains;
    bool is_box;

    bool hold(Pos s, Action d) const {
        return is_box ? hold_box(level, s, d)
                      : hold_agent(level, pre, gains.theta, s, d);
    }
    // square the chain may pass through while turning
    bool enterable(Pos s) const {
        if (!level.in_bounds(s) || level.is_wall(s) || level.has_box(s)) return false;
        if (is_box && level.has_target(s)) return false;  // box plans end on targets
        return true;
    }
    double seed_fwd(Pos s, Action d) const {
        return is_box ? box_fwd_seed(level, s, d, gains)
                      : agent_fwd_seed(level, s, d, gains);
    }
    double seed_bwd(Pos s, Action d) const {
        return is_box ? box_bwd_seed(level, s, d, gains)
                      : agent_bwd_seed(level, pre, s, d, gains);
    }

    // Completion squares never raise dead-end stops: a forward chain meeting
    // a target (or another box) and a backward chain meeting its box / the
    // agent have finished searching. A square is terminal only when the
    // search has no linear continuation and no turn at either the current or
    // the entry square.
    bool fwd_terminal(Pos v, Action d) const {
        Pos u = v + delta(d);
        if (level.has_target(u) && !level.has_box(u)) return false;
        if (level.has_box(u)) return false;
        if (!is_box && u == level.agent_pos) return false;
        if (hold(u, d)) return false;
        for (Action o : orthogonal(d)) {
            if (hold(v, o)) return false;
            if (enterable(u) && hold(u, o)) return false;
        }
        return true;
    }
    bool bwd_terminal(Pos v, Action d) const {
        Pos u = v - delta(d);
        if (level.has_box(u)) return false;
        if (level.has_target(u)) return false;
        if (!is_box && u == level.agent_pos) return false;
        if (hold(u, d)) return false;
        for (Action o : orthogonal(d))
            if (hold(v - delta(o), o)) return false;
        return true;
    }
};

}  // namespace

PlanGrid init_plan(const Level& level, const ChannelMap& map, const MechanismGains& gains) {
    PlanGrid grid;
    grid.map = map;
    grid.acts = drc::Tensor3(level.height, level.width, map.total);
    grid.aux = drc::Tensor3(level.height, level.width, kAuxPlanes);
    grid.tick_index = 0;
    refresh_entities(grid, level);

    for (int r = 0; r < level.height; ++r)
        for (int c = 0; c < level.width; ++c) {
            Pos p{r, c};
            for (Action d : kDirs) {
                int di = dir_index(d);
                aux_at(grid.aux, kBoxFwd + di, p) = box_fwd_seed(level, p, d, gains);
                aux_at(grid.aux, kBoxBwd + di, p) = box_bwd_seed(level, p, d, gains);
                aux_at(grid.aux, kAgentFwd + di, p) = agent_fwd_seed(level, p, d, gains);
                // agent copy seeds need an existing box plan; none at init
            }
        }
    rebuild_observable(grid, gains.a_max);
    return grid;
}

PlanGrid tick_plan(const PlanGrid& grid, const Level& level, const MechanismGains& gains,
                   const TickOptions& options) {
    PlanGrid next = grid;
    next.tick_index = grid.tick_index + 1;
    refresh_entities(next, level);

    const int H = grid.height(), W = grid.width();
    const double m = gains.chain_factor();
    const double tf = gains.turn_factor();
    const double bt = gains.backtrack_factor();
    const double neg_cap = 0.8 * gains.a_max;
    auto cell_index = [W](Pos p) { return static_cast<size_t>(p.row) * W + p.col; };

    // long channels decay unless re-parked below
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c)
            for (int d = 0; d < 4; ++d) {
                Pos s{r, c};
                double held = gains.decay * aux_get(grid.aux, kBoxLong + d, s);
                aux_at(next.aux, kBoxLong + d, s) = level.is_wall(s) ? 0.0 : held;
            }

    for (int group = 0; group < 2; ++group) {
        const bool is_box = group == 0;
        GroupContext ctx{level, grid, gains, is_box};
        const int fwd_base = is_box ? kBoxFwd : kAgentFwd;
        const int bwd_base = is_box ? kBoxBwd : kAgentBwd;

        std::array<std::vector<CellWork>, 4> work;
        for (auto& w : work) w.assign(static_cast<size_t>(H) * W, CellWork{});

        // scatter: linear extension, turns at blocked continuations,
        // negative waves along both kernel directions
        for (int r = 0; r < H; ++r)
            for (int c = 0; c < W; ++c) {
                Pos v{r, c};
                for (Action d : kDirs) {
                    int di = dir_index(d);
                    double f = aux_get(grid.aux, fwd_base + di, v);
                    double b = aux_get(grid.aux, bwd_base + di, v);

                    if (f > 0.0) {
                        Pos u = v + delta(d);
                        bool poisoned =
                            aux_get(grid.aux, fwd_base + di, u) <= -gains.theta / 2.0;
                        if (ctx.hold(u, d) && !poisoned) {
                            auto& cw = work[static_cast<size_t>(di)][cell_index(u)];
                            cw.inc_lin_f = std::max(cw.inc_lin_f, m * f);
                        } else if (options.turn_extension) {
                            for (Action o : orthogonal(d)) {
                                // turn before the blocked square
                                if (ctx.hold(v, o)) {
                                    auto& cw =
                                        work[static_cast<size_t>(dir_index(o))][cell_index(v)];
                                    cw.inc_turn_f = std::max(cw.inc_turn_f, tf * f);
                                }
                                // or enter it and turn there
                                if (ctx.enterable(u) && ctx.hold(u, o)) {
                                    auto& cw =
                                        work[static_cast<size_t>(dir_index(o))][cell_index(u)];
                                    cw.inc_turn_f = std::max(cw.inc_turn_f, tf * f);
                                }
                            }
                        }
                    }
                    // backward chains stop at their anchor (box / agent)
                    bool at_anchor = !is_box && v == level.agent_pos;
                    if (b > 0.0 && !at_anchor) {
                        Pos u = v - delta(d);
                        bool poisoned =
                            aux_get(grid.aux, bwd_base + di, u) <= -gains.theta / 2.0;
                        if (ctx.hold(u, d) && !poisoned) {
                            auto& cw = work[static_cast<size_t>(di)][cell_index(u)];
                            cw.inc_lin_b = std::max(cw.inc_lin_b, m * b);
                        } else if (options.turn_extension) {
                            for (Action o : orthogonal(d)) {
                                Pos t = v - delta(o);
                                if (ctx.hold(t, o)) {
                                    auto& cw =
                                        work[static_cast<size_t>(dir_index(o))][cell_index(t)];
                                    cw.inc_turn_b = std::max(cw.inc_turn_b, tf * b);
                                }
                            }
                        }
                    }
                    if (f < 0.0)
                        for (Pos u : {v + delta(d), v - delta(d)})
                            if (level.in_bounds(u) && !level.is_wall(u))
                                work[static_cast<size_t>(di)][cell_index(u)].neg_in_f += bt * f;
                    if (b < 0.0)
                        for (Pos u : {v + delta(d), v - delta(d)})
                            if (level.in_bounds(u) && !level.is_wall(u))
                                work[static_cast<size_t>(di)][cell_index(u)].neg_in_b += bt * b;
                }
            }

        // gather: seeds, retention, stops, WTA, negatives
        for (int r = 0; r < H; ++r)
            for (int c = 0; c < W; ++c) {
                Pos s{r, c};
                std::array<double, 4> pos_f{}, pos_b{};
                std::array<bool, 4> stop_flag_f{}, stop_flag_b{};
                std::array<TraceKind, 4> cause{};
                cause.fill(TraceKind::ExtendLinear);

                for (Action d : kDirs) {
                    int di = dir_index(d);
                    auto& cw = work[static_cast<size_t>(di)][cell_index(s)];
                    if (!ctx.hold(s, d)) continue;  // masked square

                    double old_f = aux_get(grid.aux, fwd_base + di, s);
                    double old_b = aux_get(grid.aux, bwd_base + di, s);
                    double seed_f = old_f < -gains.suppress_hold ? 0.0 : ctx.seed_fwd(s, d);
                    double seed_b = old_b < -gains.suppress_hold ? 0.0 : ctx.seed_bwd(s, d);

                    double pf = std::max({seed_f, gains.decay * pos_part(old_f),
                                          cw.inc_lin_f, cw.inc_turn_f});
                    double pb = std::max({seed_b, gains.decay * pos_part(old_b),
                                          cw.inc_lin_b, cw.inc_turn_b});
                    pos_f[static_cast<size_t>(di)] = pf;
                    pos_b[static_cast<size_t>(di)] = pb;

                    double best = std::max(pf, pb);
                    if (best > 0.0) {
                        if (best == std::max(seed_f, seed_b))
                            cause[static_cast<size_t>(di)] = TraceKind::Seed;
                        else if (best == std::max(cw.inc_turn_f, cw.inc_turn_b))
                            cause[static_cast<size_t>(di)] = TraceKind::ExtendTurn;
                    }
                    stop_flag_f[static_cast<size_t>(di)] = pf > 0.0 && ctx.fwd_terminal(s, d);
                    stop_flag_b[static_cast<size_t>(di)] = pb > 0.0 && ctx.bwd_terminal(s, d);
                }

                int winner = -1;
                if (options.winner_takes_all) {
                    double best = 0.0;
                    for (Action d : kDirs) {
                        int di = dir_index(d);
                        double obs = pos_f[static_cast<size_t>(di)] +
                                     pos_b[static_cast<size_t>(di)];
                        double scored = obs * gains.dir_bias[static_cast<size_t>(di)];
                        if (obs > 0.0 && scored > best) {
                            best = scored;
                            winner = di;
                        }
                    }
                }

                for (Action d : kDirs) {
                    int di = dir_index(d);
                    auto& cw = work[static_cast<size_t>(di)][cell_index(s)];
                    double pf = pos_f[static_cast<size_t>(di)];
                    double pb = pos_b[static_cast<size_t>(di)];

                    if (options.winner_takes_all && winner >= 0 && di != winner &&
                        pf + pb > 0.0) {
                        double loser_obs = pf + pb;
                        pf *= 1.0 - gains.wta_inhibit;
                        pb *= 1.0 - gains.wta_inhibit;
                        cw.wta = true;
                        if (is_box && loser_obs >= gains.theta) {
                            double& lg = aux_at(next.aux, kBoxLong + di, s);
                            lg = std::max(lg, loser_obs);
                        }
                    }

                    double stop_neg = 0.0;
                    if (stop_flag_f[static_cast<size_t>(di)]) stop_neg += gains.stop_gain * pf;
                    if (stop_flag_b[static_cast<size_t>(di)]) stop_neg += gains.stop_gain * pb;

                    double old_f = aux_get(grid.aux, fwd_base + di, s);
                    double old_b = aux_get(grid.aux, bwd_base + di, s);
                    double new_f = std::clamp(
                        pf + (stop_flag_f[static_cast<size_t>(di)] ? gains.stop_gain * pf : 0.0) +
                            gains.decay * neg_part(old_f) + cw.neg_in_f,
                        -neg_cap, gains.a_max);
                    double new_b = std::clamp(
                        pb + (stop_flag_b[static_cast<size_t>(di)] ? gains.stop_gain * pb : 0.0) +
                            gains.decay * neg_part(old_b) + cw.neg_in_b,
                        -neg_cap, gains.a_max);
                    if (level.is_wall(s)) new_f = new_b = 0.0;
                    aux_at(next.aux, fwd_base + di, s) = new_f;
                    aux_at(next.aux, bwd_base + di, s) = new_b;

                    if (options.trace) {
                        double old_obs =
                            std::clamp(old_f + old_b, -gains.a_max, gains.a_max);
                        double new_obs =
                            std::clamp(new_f + new_b, -gains.a_max, gains.a_max);
                        if (std::fabs(new_obs - old_obs) >= gains.theta / 2.0) {
                            TraceKind k;
                            if (stop_neg < 0.0)
                                k = TraceKind::Stop;
                            else if (cw.neg_in_f + cw.neg_in_b <= -gains.theta / 4.0)
                                k = TraceKind::Backtrack;
                            else if (cw.wta)
                                k = TraceKind::WtaSuppress;
                            else
                                k = cause[static_cast<size_t>(di)];
                            int ch = is_box ? grid.map.box_short[static_cast<size_t>(di)]
                                            : grid.map.agent_short[static_cast<size_t>(di)];
                            options.trace->push_back({k, s, ch, next.tick_index});
                        }
                    }
                }
            }
    }

    // long -> short transfer
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c) {
            Pos s{r, c};
            for (Action d : kDirs) {
                int di = dir_index(d);
                double lg = aux_get(next.aux, kBoxLong + di, s);
                if (lg < gains.theta) continue;
                bool blocked = false;
                for (Action o : kDirs) {
                    if (o == d) continue;
                    int oi = dir_index(o);
                    double obs = std::clamp(aux_get(next.aux, kBoxFwd + oi, s) +
                                                aux_get(next.aux, kBoxBwd + oi, s),
                                            -gains.a_max, gains.a_max);
                    if (obs >= gains.theta) blocked = true;
                }
                if (blocked) continue;
                double& f = aux_at(next.aux, kBoxFwd + di, s);
                if (f < lg) {
                    f = lg;
                    if (options.trace)
                        options.trace->push_back({TraceKind::Transfer, s,
                                                  grid.map.box_short[static_cast<size_t>(di)],
                                                  next.tick_index});
                }
                aux_at(next.aux, kBoxLong + di, s) = gains.decay * lg;
            }
        }

    // gna/pna are readout products, not tick state
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c)
            for (int d = 0; d < 4; ++d) {
                next.acts.at(r, c, next.map.gna[static_cast<size_t>(d)]) = 0.0;
                next.acts.at(r, c, next.map.pna[static_cast<size_t>(d)]) = 0.0;
            }

    rebuild_observable(next, gains.a_max);

    if (options.edits) {
        bool touched = false;
        for (const auto& e : *options.edits) {
            if (e.stage != PlanEdit::Stage::Tick) continue;
            if (!e.ticks.empty() &&
                std::find(e.ticks.begin(), e.ticks.end(), next.tick_index) == e.ticks.end())
                continue;
            std::vector<Pos> squares = e.squares;
            if (squares.empty())
                for (int r = 0; r < H; ++r)
                    for (int c = 0; c < W; ++c) squares.push_back({r, c});
            int di = dir_index(e.role.dir);
            for (Pos p : squares) {
                auto edit_plane = [&](int plane, bool carries_c) {
                    double& v = aux_at(next.aux, plane, p);
                    v = e.abs_value ? std::fabs(v) : e.alpha * v + (carries_c ? e.c : 0.0);
                };
                switch (e.role.kind) {
                    case RoleKind::BoxShort:
                        edit_plane(kBoxFwd + di, true);
                        edit_plane(kBoxBwd + di, false);
                        touched = true;
                        break;
                    case RoleKind::AgentShort:
                        edit_plane(kAgentFwd + di, true);
                        edit_plane(kAgentBwd + di, false);
                        touched = true;
                        break;
                    case RoleKind::BoxLong:
                        edit_plane(kBoxLong + di, true);
                        touched = true;
                        break;
                    default: {
                        int ch = role_channel(next.map, e.role);
                        double v = next.get(ch, p);
                        next.set(ch, p, e.abs_value ? std::fabs(v) : e.alpha * v + e.c);
                        break;
                    }
                }
            }
        }
        if (touched) rebuild_observable(next, gains.a_max);
    }

    return next;
}

PlanGrid transfer_long_to_short(const PlanGrid& grid, const MechanismGains& gains,
                                std::optional<std::pair<Pos, Action>> executed,
                                std::vector<TraceEvent>* trace) {
    PlanGrid next = grid;
    if (executed) {
        int di = dir_index(executed->second);
        aux_at(next.aux, kBoxFwd + di, executed->first) = 0.0;
        aux_at(next.aux, kBoxBwd + di, executed->first) = 0.0;
    }
    for (int r = 0; r < next.height(); ++r)
        for (int c = 0; c < next.width(); ++c) {
            Pos s{r, c};
            for (Action d : kDirs) {
                int di = dir_index(d);
                double lg = aux_get(next.aux, kBoxLong + di, s);
                if (lg < gains.theta) continue;
                bool blocked = false;
                for (Action o : kDirs) {
                    if (o == d) continue;
                    int oi = dir_index(o);
                    double obs = std::clamp(aux_get(next.aux, kBoxFwd + oi, s) +
                                                aux_get(next.aux, kBoxBwd + oi, s),
                                            -gains.a_max, gains.a_max);
                    if (obs >= gains.theta) blocked = true;
                }
                if (blocked) continue;
                double& f = aux_at(next.aux, kBoxFwd + di, s);
                if (f < lg) {
                    f = lg;
                    if (trace)
                        trace->push_back({TraceKind::Transfer, s,
                                          grid.map.box_short[static_cast<size_t>(di)],
                                          grid.tick_index});
                }
                aux_at(next.aux, kBoxLong + di, s) = gains.decay * lg;
            }
        }
    rebuild_observable(next, gains.a_max);
    return next;
}

int Plan::count() const {
    int n = 0;
    for (const auto& a : arrows)
        if (a) ++n;
    return n;
}

Plan decode_plan(const PlanGrid& grid, double theta) {
    Plan plan;
    plan.height = grid.height();
    plan.width = grid.width();
    plan.arrows.assign(static_cast<size_t>(plan.height) * plan.width, std::nullopt);
    for (int r = 0; r < plan.height; ++r)
        for (int c = 0; c < plan.width; ++c) {
            Pos p{r, c};
            double best_short = theta;
            std::optional<Action> short_dir;
            double best_long = theta;
            std::optional<Action> long_dir;
            for (Action d : kDirs) {
                int di = dir_index(d);
                double s = grid.get(grid.map.box_short[static_cast<size_t>(di)], p);
                if (s >= best_short) {
                    best_short = s;
                    short_dir = d;
                }
                double l = grid.get(grid.map.box_long[static_cast<size_t>(di)], p);
                if (l >= best_long) {
                    best_long = l;
                    long_dir = d;
                }
            }
            auto& slot = plan.arrows[static_cast<size_t>(r) * plan.width + c];
            if (short_dir)
                slot = Plan::Arrow{*short_dir, false, best_short};
            else if (long_dir)
                slot = Plan::Arrow{*long_dir, true, best_long};
        }
    return plan;
}

Readout readout_action(PlanGrid& grid, const Level& level, const MechanismGains& gains,
                       const std::vector<PlanEdit>* edits,
                       std::vector<TraceEvent>* trace) {
    const int H = grid.height(), W = grid.width();
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c)
            for (int d = 0; d < 4; ++d) {
                grid.acts.at(r, c, grid.map.gna[static_cast<size_t>(d)]) = 0.0;
                grid.acts.at(r, c, grid.map.pna[static_cast<size_t>(d)]) = 0.0;
            }

    Pos a = level.agent_pos;
    for (Action d : kDirs) {
        int di = dir_index(d);
        double v = grid.get(grid.map.agent_short[static_cast<size_t>(di)], a) -
                   grid.get(grid.map.box_short[static_cast<size_t>(di)], a);
        grid.acts.at(a.row, a.col, grid.map.gna[static_cast<size_t>(di)]) = v;
    }

    auto apply_stage_edits = [&](RoleKind kind) {
        if (!edits) return;
        for (const auto& e : *edits) {
            if (e.stage != PlanEdit::Stage::Readout || e.role.kind != kind) continue;
            int ch = role_channel(grid.map, e.role);
            std::vector<Pos> squares = e.squares;
            if (squares.empty())
                for (int r = 0; r < H; ++r)
                    for (int c = 0; c < W; ++c) squares.push_back({r, c});
            for (Pos p : squares) {
                double v = grid.acts.at(p.row, p.col, ch);
                grid.acts.at(p.row, p.col, ch) =
                    e.abs_value ? std::fabs(v) : e.alpha * v + e.c;
            }
        }
    };

    apply_stage_edits(RoleKind::Gna);

    std::array<double, 4> pna{};
    for (Action d : kDirs) {
        int di = dir_index(d);
        double mx = -std::numeric_limits<double>::infinity();
        for (int r = 0; r < H; ++r)
            for (int c = 0; c < W; ++c)
                mx = std::max(mx, grid.acts.at(r, c, grid.map.gna[static_cast<size_t>(di)]));
        for (int r = 0; r < H; ++r)
            for (int c = 0; c < W; ++c)
                grid.acts.at(r, c, grid.map.pna[static_cast<size_t>(di)]) = mx;
    }

    apply_stage_edits(RoleKind::Pna);
    for (Action d : kDirs) {
        int di = dir_index(d);
        double mx = -std::numeric_limits<double>::infinity();
        for (int r = 0; r < H; ++r)
            for (int c = 0; c < W; ++c)
                mx = std::max(mx, grid.acts.at(r, c, grid.map.pna[static_cast<size_t>(di)]));
        pna[static_cast<size_t>(di)] = mx;
    }

    Readout out;
    double best = -std::numeric_limits<double>::infinity();
    for (Action d : kDirs) {  // enum order gives the Up<Down<Left<Right tie rule
        int di = dir_index(d);
        if (pna[static_cast<size_t>(di)] > best) {
            best = pna[static_cast<size_t>(di)];
            out.action = d;
        }
    }
    out.no_plan = best < gains.theta;
    if (out.no_plan) out.action = Action::Up;
    if (trace)
        trace->push_back({TraceKind::Readout, a,
                          grid.map.pna[static_cast<size_t>(dir_index(out.action))],
                          grid.tick_index});
    return out;
}

PlanGrid apply_transition_update(const PlanGrid& grid, const Level& level_before,
                                 Action action, const Level& level_after,
                                 const MechanismGains& gains) {
    PlanGrid next = grid;
    if (!(level_after.agent_pos == level_before.agent_pos)) {
        int di = dir_index(action);
        Pos from = level_before.agent_pos;
        aux_at(next.aux, kAgentFwd + di, from) = 0.0;
        aux_at(next.aux, kAgentBwd + di, from) = 0.0;
        Pos box_from = level_after.agent_pos;
        if (level_before.has_box(box_from)) {  // the move was a push
            aux_at(next.aux, kBoxFwd + di, box_from) = 0.0;
            aux_at(next.aux, kBoxBwd + di, box_from) = 0.0;
        }
    }
    refresh_entities(next, level_after);
    rebuild_observable(next, gains.a_max);
    return next;
}

Episode run_planner(const Level& level, const ChannelMap& map, const MechanismGains& gains,
                    const RunOptions& options) {
    Episode ep;
    PlanGrid grid = init_plan(level, map, gains);
    TickOptions tick_opts;
    tick_opts.winner_takes_all = options.winner_takes_all;
    tick_opts.edits = options.edits;
    tick_opts.trace = options.record_trace ? &ep.trace : nullptr;

    Level cur = level;
    for (int t = 0; t < options.thinking_steps; ++t)
        for (int k = 0; k < options.ticks_per_step; ++k)
            grid = tick_plan(grid, cur, gains, tick_opts);

    for (int step = 0; step < options.max_steps; ++step) {
        if (cur.solved()) break;
        for (int k = 0; k < options.ticks_per_step; ++k)
            grid = tick_plan(grid, cur, gains, tick_opts);
        Readout ro = readout_action(grid, cur, gains, options.edits,
                                    options.record_trace ? &ep.trace : nullptr);
        soko::StepOutcome out = soko::step(cur, ro.action);

        ep.levels.push_back(cur);
        ep.actions.push_back(ro.action);
        ep.rewards.push_back(out.reward);
        ep.no_plan.push_back(ro.no_plan);
        if (options.record_grids) ep.grids.push_back(grid);
        ep.total_reward += out.reward;
        ++ep.steps;

        grid = apply_transition_update(grid, cur, ro.action, out.next, gains);
        cur = out.next;
        if (out.solved) {
            ep.solved = true;
            break;
        }
    }
    ep.levels.push_back(cur);
    return ep;
}

int propagation_reach(const MechanismGains& gains, int corridor_length, int ticks) {
    // box + agent at the left end of an empty corridor; the only target sits
    // in a sealed pocket so no backward seeds contaminate the measurement
    int W = corridor_length + 2;
    std::string text;
    text += std::string(static_cast<size_t>(W), '#') + "\n";
    text += "#@$" + std::string(static_cast<size_t>(W - 4), ' ') + "#\n";
    text += std::string(static_cast<size_t>(W), '#') + "\n";
    text += "#.#" + std::string(static_cast<size_t>(W - 3), '#') + "\n";
    text += std::string(static_cast<size_t>(W), '#') + "\n";
    Level level = soko::parse_level(text);

    ChannelMap map = default_channel_map(32);
    PlanGrid grid = init_plan(level, map, gains);
    for (int t = 0; t < ticks; ++t) grid = tick_plan(grid, level, gains);

    int reach = 0;
    int right = role_channel(map, {RoleKind::BoxShort, Action::Right});
    for (int c = 2; c < W - 1; ++c)
        if (grid.get(right, {1, c}) >= gains.theta) reach = c - 2;
    return reach;
}

}  // namespace planner
