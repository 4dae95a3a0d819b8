#include "interp/ablate.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace interp {

namespace {

using planner::AuxPlane;
using planner::PlanGrid;

std::vector<int> group_planes(const std::string& name) {
    auto block = [](int base) {
        return std::vector<int>{base, base + 1, base + 2, base + 3};
    };
    if (name == "box_short") {
        auto v = block(AuxPlane::kBoxFwd);
        auto b = block(AuxPlane::kBoxBwd);
        v.insert(v.end(), b.begin(), b.end());
        return v;
    }
    if (name == "agent_short") {
        auto v = block(AuxPlane::kAgentFwd);
        auto b = block(AuxPlane::kAgentBwd);
        v.insert(v.end(), b.begin(), b.end());
        return v;
    }
    if (name == "box_long") return block(AuxPlane::kBoxLong);
    if (name == "path") {
        std::vector<int> v;
        for (int p = 0; p < AuxPlane::kCount; ++p) v.push_back(p);
        return v;
    }
    if (name == "retention") {  // the cell-state analogue: all path planes
        std::vector<int> v;
        for (int p = 0; p < AuxPlane::kCount; ++p) v.push_back(p);
        return v;
    }
    throw std::invalid_argument("unknown ablation channel group: " + name);
}

bool is_mechanism_target(const std::string& t) { return t == "wta_cross" || t == "turn"; }

}  // namespace

AblationSpec parse_ablation(const std::string& text) {
    AblationSpec spec;
    std::istringstream in(text);
    std::string token;
    bool have_mode = false;
    while (in >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("ablation token missing '=': " + token);
        std::string key = token.substr(0, eq), value = token.substr(eq + 1);
        if (key == "mode") {
            if (value == "mean_activation") spec.mode = AblationSpec::Mode::MeanActivation;
            else if (value == "zero_kernel") spec.mode = AblationSpec::Mode::ZeroKernel;
            else if (value == "cache_1step") spec.mode = AblationSpec::Mode::Cache1Step;
            else throw std::invalid_argument("unknown ablation mode: " + value);
            have_mode = true;
        } else if (key == "targets") {
            std::istringstream ts(value);
            std::string t;
            while (std::getline(ts, t, ','))
                if (!t.empty()) spec.targets.push_back(t);
        } else {
            throw std::invalid_argument("unknown ablation key: " + key);
        }
    }
    if (!have_mode) throw std::invalid_argument("ablation needs mode=");
    if (spec.targets.empty()) throw std::invalid_argument("ablation needs targets=");
    return spec;
}

void zero_kernel_slices(drc::WeightSet& weights, const planner::ChannelMap& map,
                        const std::string& target) {
    if (target == "wta_cross") {
        // cross-direction taps among the short box channels, all gates
        for (auto& layer : weights.layers)
            for (drc::Gate g : drc::kGates) {
                drc::Kernel& k = layer[g].Wh2;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        if (a == b) continue;
                        int ci = map.box_short[static_cast<size_t>(a)];
                        int co = map.box_short[static_cast<size_t>(b)];
                        for (int kr = 0; kr < k.kh; ++kr)
                            for (int kc = 0; kc < k.kw; ++kc) k.at(kr, kc, ci, co) = 0.0;
                    }
            }
        return;
    }
    if (target == "turn") {
        // same-square orthogonal box-channel taps in the i gate
        for (auto& layer : weights.layers) {
            drc::Kernel& k = layer[drc::Gate::I].Wh2;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    if (a == b) continue;
                    int ci = map.box_short[static_cast<size_t>(a)];
                    int co = map.box_short[static_cast<size_t>(b)];
                    for (int kr = 0; kr < k.kh; ++kr)
                        for (int kc = 0; kc < k.kw; ++kc) k.at(kr, kc, ci, co) = 0.0;
                }
        }
        return;
    }
    throw std::invalid_argument("unknown kernel slice: " + target);
}

namespace {

planner::Episode run_with_hooks(const soko::Level& level, const planner::ChannelMap& map,
                                const planner::MechanismGains& gains,
                                const AblationSpec& spec,
                                const planner::RunOptions& options,
                                const std::map<int, double>* plane_means) {
    planner::TickOptions topts;
    topts.winner_takes_all = options.winner_takes_all;
    topts.edits = options.edits;
    for (const auto& t : spec.targets) {
        if (spec.mode == AblationSpec::Mode::ZeroKernel && t == "wta_cross")
            topts.winner_takes_all = false;
        if (spec.mode == AblationSpec::Mode::ZeroKernel && t == "turn")
            topts.turn_extension = false;
    }

    std::vector<int> planes;
    if (spec.mode != AblationSpec::Mode::ZeroKernel)
        for (const auto& t : spec.targets)
            for (int p : group_planes(t)) planes.push_back(p);

    planner::Episode ep;
    PlanGrid grid = planner::init_plan(level, map, gains);
    soko::Level cur = level;
    std::optional<soko::Level> prev_level;

    for (int t = 0; t < options.thinking_steps; ++t)
        for (int k = 0; k < options.ticks_per_step; ++k)
            grid = planner::tick_plan(grid, cur, gains, topts);

    for (int step = 0; step < options.max_steps; ++step) {
        if (cur.solved()) break;

        if (spec.mode == AblationSpec::Mode::MeanActivation && plane_means) {
            for (int p : planes) {
                auto it = plane_means->find(p);
                double v = it == plane_means->end() ? 0.0 : it->second;
                for (int r = 0; r < grid.height(); ++r)
                    for (int c = 0; c < grid.width(); ++c) grid.aux.at(r, c, p) = v;
            }
            planner::rebuild_observable(grid, gains.a_max);
        }
        if (spec.mode == AblationSpec::Mode::Cache1Step && prev_level) {
            PlanGrid cache = planner::init_plan(*prev_level, map, gains);
            for (int k = 0; k < options.ticks_per_step; ++k)
                cache = planner::tick_plan(cache, *prev_level, gains, topts);
            for (int p : planes)
                for (int r = 0; r < grid.height(); ++r)
                    for (int c = 0; c < grid.width(); ++c)
                        grid.aux.at(r, c, p) = cache.aux.at(r, c, p);
            planner::rebuild_observable(grid, gains.a_max);
        }

        for (int k = 0; k < options.ticks_per_step; ++k)
            grid = planner::tick_plan(grid, cur, gains, topts);
        planner::Readout ro = planner::readout_action(grid, cur, gains, options.edits);
        soko::StepOutcome out = soko::step(cur, ro.action);

        ep.levels.push_back(cur);
        ep.actions.push_back(ro.action);
        ep.rewards.push_back(out.reward);
        ep.no_plan.push_back(ro.no_plan);
        if (options.record_grids) ep.grids.push_back(grid);
        ep.total_reward += out.reward;
        ++ep.steps;

        grid = planner::apply_transition_update(grid, cur, ro.action, out.next, gains);
        prev_level = cur;
        cur = out.next;
        if (out.solved) {
            ep.solved = true;
            break;
        }
    }
    ep.levels.push_back(cur);
    return ep;
}

std::map<int, double> plane_means_over(const std::vector<soko::Level>& levels,
                                       const planner::ChannelMap& map,
                                       const planner::MechanismGains& gains,
                                       const planner::RunOptions& options) {
    std::map<int, double> sums;
    std::map<int, size_t> counts;
    planner::RunOptions opts = options;
    opts.record_grids = true;
    opts.record_trace = false;
    for (const auto& level : levels) {
        planner::Episode ep = planner::run_planner(level, map, gains, opts);
        for (const auto& g : ep.grids)
            for (int p = 0; p < AuxPlane::kCount; ++p) {
                for (int r = 0; r < g.height(); ++r)
                    for (int c = 0; c < g.width(); ++c) sums[p] += g.aux.at(r, c, p);
                counts[p] += static_cast<size_t>(g.height() * g.width());
            }
    }
    std::map<int, double> means;
    for (auto& [p, s] : sums)
        means[p] = counts[p] ? s / static_cast<double>(counts[p]) : 0.0;
    return means;
}

}  // namespace

planner::Episode run_planner_ablated(const soko::Level& level, const planner::ChannelMap& map,
                                     const planner::MechanismGains& gains,
                                     const AblationSpec& spec,
                                     const planner::RunOptions& options) {
    std::map<int, double> means;
    if (spec.mode == AblationSpec::Mode::MeanActivation)
        means = plane_means_over({level}, map, gains, options);
    return run_with_hooks(level, map, gains, spec, options,
                          spec.mode == AblationSpec::Mode::MeanActivation ? &means : nullptr);
}

AblationRunResult apply_ablation(const std::vector<soko::Level>& levels,
                                 const planner::ChannelMap& map,
                                 const planner::MechanismGains& gains,
                                 const AblationSpec& spec,
                                 const planner::RunOptions& options) {
    AblationRunResult result;
    result.n_levels = static_cast<int>(levels.size());
    planner::RunOptions base_opts = options;
    base_opts.record_grids = false;
    base_opts.record_trace = false;

    std::map<int, double> means;
    if (spec.mode == AblationSpec::Mode::MeanActivation)
        means = plane_means_over(levels, map, gains, base_opts);

    for (const auto& level : levels) {
        planner::Episode base = planner::run_planner(level, map, gains, base_opts);
        if (base.solved) ++result.base_solved;
        planner::Episode abl =
            run_with_hooks(level, map, gains, spec, base_opts,
                           spec.mode == AblationSpec::Mode::MeanActivation ? &means : nullptr);
        if (abl.solved) ++result.ablated_solved;
    }
    if (result.n_levels > 0) {
        result.base_rate = static_cast<double>(result.base_solved) / result.n_levels;
        result.ablated_rate = static_cast<double>(result.ablated_solved) / result.n_levels;
        result.drop = result.base_rate - result.ablated_rate;
    }
    return result;
}

}  // namespace interp
