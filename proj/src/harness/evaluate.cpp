#include "harness/evaluate.hpp"

#include <deque>
#include <stdexcept>

#include "harness/csv.hpp"
#include "interp/intervene.hpp"
#include "planner/compile.hpp"
#include "soko/solve.hpp"

namespace harness {

namespace {

using soko::Action;
using soko::Level;
using soko::Pos;

// Evaluation adapter for headless (plan-decoded) weight sets: follow the
// decoded box plan; walk to the push square of the nearest planned box move,
// push when in position.
std::optional<Action> plan_follower_action(const planner::Plan& plan, const Level& level) {
    std::optional<Pos> goal;  // square to stand on
    std::optional<Action> push_dir;
    for (Pos b : level.box_positions()) {
        auto arrow = plan.at(b);
        if (!arrow) continue;
        Pos stand = b - soko::delta(arrow->dir);
        if (!level.is_free(stand) && !(stand == level.agent_pos)) continue;
        goal = stand;
        push_dir = arrow->dir;
        break;
    }
    if (!goal) return std::nullopt;
    if (*goal == level.agent_pos) return push_dir;

    // shortest walk (boxes block) to the stand square
    std::deque<Pos> frontier{level.agent_pos};
    std::vector<int> parent_action(static_cast<size_t>(level.height) * level.width, -1);
    std::vector<char> seen(static_cast<size_t>(level.height) * level.width, 0);
    auto idx = [&](Pos p) { return static_cast<size_t>(p.row) * level.width + p.col; };
    seen[idx(level.agent_pos)] = 1;
    while (!frontier.empty()) {
        Pos cur = frontier.front();
        frontier.pop_front();
        if (cur == *goal) break;
        for (Action a : soko::kActions) {
            Pos nxt = cur + soko::delta(a);
            if (!level.is_free(nxt) || seen[idx(nxt)]) continue;
            seen[idx(nxt)] = 1;
            parent_action[idx(nxt)] = static_cast<int>(a);
            frontier.push_back(nxt);
        }
    }
    if (!seen[idx(*goal)]) return std::nullopt;
    // walk back from the goal to find the first step
    Pos cur = *goal;
    Action first = Action::Up;
    while (!(cur == level.agent_pos)) {
        Action a = static_cast<Action>(parent_action[idx(cur)]);
        first = a;
        cur = cur - soko::delta(a);
    }
    return first;
}

LevelOutcome run_drc(const Level& level, const planner::ChannelMap& map,
                     const planner::MechanismGains& gains, const EvaluateOptions& opt) {
    LevelOutcome out;
    out.id = level.id.value_or(0);
    const drc::WeightSet& w = *opt.weights;
    auto states = drc::zero_state(w.config, level.height, level.width);
    Level cur = level;
    for (int t = 0; t < opt.thinking_steps; ++t)
        drc::drc_forward(states, soko::render_rgb(cur), w, opt.ticks_per_step);
    for (int step = 0; step < opt.max_steps; ++step) {
        if (cur.solved()) break;
        auto result = drc::drc_forward(states, soko::render_rgb(cur), w, opt.ticks_per_step);
        Action a;
        if (!result.policy_logits.empty()) {
            int best = 0;
            for (int k = 1; k < 4; ++k)
                if (result.policy_logits[static_cast<size_t>(k)] >
                    result.policy_logits[static_cast<size_t>(best)])
                    best = k;
            a = static_cast<Action>(best);
        } else {
            planner::Plan plan =
                planner::decode_hidden(states.back().h, map, gains.theta);
            auto follow = plan_follower_action(plan, cur);
            if (!follow) follow = Action::Up;
            a = *follow;
        }
        soko::StepOutcome so = soko::step(cur, a);
        out.reward += so.reward;
        ++out.steps;
        cur = so.next;
        if (so.solved) {
            out.solved = true;
            break;
        }
    }
    return out;
}

}  // namespace

SolveStats evaluate(SolverKind solver, const std::vector<Level>& levels,
                    const planner::ChannelMap& map, const planner::MechanismGains& gains,
                    const EvaluateOptions& opt) {
    if (levels.empty()) throw std::invalid_argument("evaluate: empty level set");
    if (solver == SolverKind::Drc && !opt.weights)
        throw std::invalid_argument("evaluate: drc solver needs weights");

    SolveStats stats;
    stats.n_levels = static_cast<int>(levels.size());
    double steps_sum = 0.0;

    for (const auto& level : levels) {
        LevelOutcome out;
        out.id = level.id.value_or(0);
        switch (solver) {
            case SolverKind::Oracle: {
                soko::OracleResult res = soko::solve_oracle(level, opt.oracle_budget);
                out.solved = res.status == soko::SolveStatus::Solved;
                out.steps = static_cast<int>(res.actions.size());
                break;
            }
            case SolverKind::Synthetic: {
                planner::RunOptions ro;
                ro.max_steps = opt.max_steps;
                ro.ticks_per_step = opt.ticks_per_step;
                ro.thinking_steps = opt.thinking_steps;
                ro.record_grids = false;
                ro.record_trace = false;
                planner::Episode ep = planner::run_planner(level, map, gains, ro);
                out.solved = ep.solved;
                out.steps = ep.steps;
                out.reward = ep.total_reward;
                break;
            }
            case SolverKind::Drc:
                out = run_drc(level, map, gains, opt);
                break;
        }
        if (out.solved) {
            ++stats.n_solved;
            steps_sum += out.steps;
        }
        stats.outcomes.push_back(out);
    }

    stats.solve_rate = static_cast<double>(stats.n_solved) / stats.n_levels;
    stats.mean_steps = stats.n_solved ? steps_sum / stats.n_solved : 0.0;
    std::vector<int> bern;
    for (const auto& o : stats.outcomes) bern.push_back(o.solved ? 1 : 0);
    auto [lo, hi] = interp::bootstrap_ci(bern, opt.seed);
    stats.ci_low = lo;
    stats.ci_high = hi;
    return stats;
}

std::string solve_stats_csv(const SolveStats& stats) {
    CsvWriter csv({"level", "solved", "steps", "reward"});
    for (const auto& o : stats.outcomes)
        csv.row({std::to_string(o.id), o.solved ? "1" : "0", std::to_string(o.steps),
                 format_double(o.reward)});
    CsvWriter agg({"n_levels", "n_solved", "solve_rate", "mean_steps", "ci_low", "ci_high"});
    agg.row({std::to_string(stats.n_levels), std::to_string(stats.n_solved),
             format_double(stats.solve_rate), format_double(stats.mean_steps),
             format_double(stats.ci_low), format_double(stats.ci_high)});
    return csv.text() + agg.text();
}

}  // namespace harness
