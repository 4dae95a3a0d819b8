#include "interp/intervene.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace interp {

namespace {

using planner::ChannelRole;
using planner::PlanEdit;
using planner::RoleKind;
using soko::Action;

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("intervention token missing '=': " + token);
        kv[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return kv;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, sep))
        if (!part.empty()) out.push_back(part);
    return out;
}

Action parse_dir(const std::string& s) {
    if (s == "up") return Action::Up;
    if (s == "down") return Action::Down;
    if (s == "left") return Action::Left;
    if (s == "right") return Action::Right;
    throw std::invalid_argument("unknown direction: " + s);
}

ChannelRole parse_role(const std::string& name) {
    auto us = name.rfind('_');
    std::string head = us == std::string::npos ? name : name.substr(0, us);
    std::string tail = us == std::string::npos ? "" : name.substr(us + 1);
    if (head == "box_short") return {RoleKind::BoxShort, parse_dir(tail)};
    if (head == "box_long") return {RoleKind::BoxLong, parse_dir(tail)};
    if (head == "agent_short") return {RoleKind::AgentShort, parse_dir(tail)};
    if (head == "gna") return {RoleKind::Gna, parse_dir(tail)};
    if (head == "pna") return {RoleKind::Pna, parse_dir(tail)};
    if (name == "wall") return {RoleKind::Wall, Action::Up};
    if (name == "target") return {RoleKind::Target, Action::Up};
    if (name == "box") return {RoleKind::Box, Action::Up};
    if (name == "agent") return {RoleKind::Agent, Action::Up};
    throw std::invalid_argument("unknown channel role: " + name);
}

drc::EditSite parse_site(const std::string& s) {
    if (s == "net:i") return drc::EditSite::GateI;
    if (s == "net:j") return drc::EditSite::GateJ;
    if (s == "net:f") return drc::EditSite::GateF;
    if (s == "net:o") return drc::EditSite::GateO;
    if (s == "net:c") return drc::EditSite::Cell;
    if (s == "net:h") return drc::EditSite::Hidden;
    throw std::invalid_argument("unknown net site: " + s);
}

}  // namespace

InterventionSpec parse_intervention(const std::string& text) {
    auto kv = parse_kv(text);
    auto it = kv.find("target");
    if (it == kv.end()) throw std::invalid_argument("intervention needs target=");
    InterventionSpec spec;

    auto squares_of = [&](const std::string& s) {
        std::vector<soko::Pos> out;
        for (const auto& pair : split(s, ';')) {
            auto rc = split(pair, ',');
            if (rc.size() != 2) throw std::invalid_argument("bad square: " + pair);
            out.push_back({std::stoi(rc[0]), std::stoi(rc[1])});
        }
        return out;
    };
    auto ints_of = [&](const std::string& s) {
        std::vector<int> out;
        for (const auto& p : split(s, ',')) out.push_back(std::stoi(p));
        return out;
    };

    if (it->second.rfind("net:", 0) == 0) {
        drc::ActivationEdit e;
        e.site = parse_site(it->second);
        if (kv.count("layer")) e.layer = std::stoi(kv["layer"]);
        if (kv.count("ticks")) e.ticks = ints_of(kv["ticks"]);
        if (kv.count("channels")) e.channels = ints_of(kv["channels"]);
        if (kv.count("squares"))
            for (auto p : squares_of(kv["squares"])) e.squares.emplace_back(p.row, p.col);
        if (kv.count("alpha")) e.alpha = std::stod(kv["alpha"]);
        if (kv.count("c")) e.c = std::stod(kv["c"]);
        if (kv.count("abs")) e.abs_value = kv["abs"] == "1" || kv["abs"] == "true";
        spec.net_edit = e;
        return spec;
    }

    PlanEdit e;
    e.role = parse_role(it->second);
    if (kv.count("stage"))
        e.stage = kv["stage"] == "readout" ? PlanEdit::Stage::Readout : PlanEdit::Stage::Tick;
    else if (e.role.kind == RoleKind::Gna || e.role.kind == RoleKind::Pna)
        e.stage = PlanEdit::Stage::Readout;
    if (kv.count("squares")) e.squares = squares_of(kv["squares"]);
    if (kv.count("ticks")) e.ticks = ints_of(kv["ticks"]);
    if (kv.count("alpha")) e.alpha = std::stod(kv["alpha"]);
    if (kv.count("c")) e.c = std::stod(kv["c"]);
    if (kv.count("abs")) e.abs_value = kv["abs"] == "1" || kv["abs"] == "true";
    spec.plan_edit = e;
    return spec;
}

std::string describe(const InterventionSpec& spec) {
    std::ostringstream out;
    if (spec.plan_edit) {
        const auto& e = *spec.plan_edit;
        out << "plan target=" << planner::role_name(e.role)
            << " stage=" << (e.stage == PlanEdit::Stage::Readout ? "readout" : "tick");
        if (e.abs_value)
            out << " abs";
        else
            out << " alpha=" << e.alpha << " c=" << e.c;
    } else if (spec.net_edit) {
        out << "net site=" << static_cast<int>(spec.net_edit->site)
            << " alpha=" << spec.net_edit->alpha << " c=" << spec.net_edit->c;
    }
    return out.str();
}

InterveneOutcome causal_intervene(const soko::Level& level, const planner::ChannelMap& map,
                                  const planner::MechanismGains& gains,
                                  const planner::PlanEdit& edit, int ticks) {
    auto run_once = [&](const std::vector<PlanEdit>* edits) {
        planner::PlanGrid grid = planner::init_plan(level, map, gains);
        planner::TickOptions topts;
        topts.edits = edits;
        for (int t = 0; t < ticks; ++t) grid = planner::tick_plan(grid, level, gains, topts);
        return planner::readout_action(grid, level, gains, edits).action;
    };
    InterveneOutcome out;
    out.baseline = run_once(nullptr);
    std::vector<PlanEdit> edits{edit};
    out.intervened = run_once(&edits);
    out.action_changed = out.baseline != out.intervened;
    return out;
}

std::pair<double, double> bootstrap_ci(const std::vector<int>& outcomes, uint64_t seed,
                                       int resamples) {
    if (outcomes.empty()) return {0.0, 0.0};
    uint64_t state = seed;
    auto next = [&state]() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::vector<double> means;
    means.reserve(static_cast<size_t>(resamples));
    size_t n = outcomes.size();
    for (int r = 0; r < resamples; ++r) {
        long sum = 0;
        for (size_t i = 0; i < n; ++i) sum += outcomes[next() % n];
        means.push_back(static_cast<double>(sum) / static_cast<double>(n));
    }
    std::sort(means.begin(), means.end());
    auto quant = [&](double q) {
        return means[static_cast<size_t>(q * (means.size() - 1))];
    };
    return {quant(0.025), quant(0.975)};
}

InterventionScore intervention_score(const std::vector<soko::Level>& transitions,
                                     const planner::ChannelMap& map,
                                     const planner::MechanismGains& gains,
                                     const Protocol& protocol, uint64_t seed, int ticks) {
    if (transitions.size() < 100)
        throw std::invalid_argument("intervention_score needs >= 100 transitions");
    std::vector<int> outcomes;
    for (const auto& level : transitions) {
        planner::PlanGrid grid = planner::init_plan(level, map, gains);
        for (int t = 0; t < ticks; ++t) grid = planner::tick_plan(grid, level, gains);
        planner::PlanGrid probe = grid;
        Action baseline = planner::readout_action(probe, level, gains).action;
        auto decision = protocol(level, grid, baseline);
        if (!decision) continue;

        planner::PlanGrid edited = grid;
        planner::TickOptions topts;
        topts.edits = &decision->edits;
        for (int t = 0; t < decision->post_ticks; ++t)
            edited = planner::tick_plan(edited, level, gains, topts);
        Action taken = planner::readout_action(edited, level, gains, &decision->edits).action;
        bool ok = decision->target_action ? taken == *decision->target_action
                                          : taken != baseline;
        outcomes.push_back(ok ? 1 : 0);
    }
    InterventionScore score;
    score.n = static_cast<int>(outcomes.size());
    if (outcomes.empty()) return score;
    long sum = 0;
    for (int v : outcomes) sum += v;
    score.success_rate = static_cast<double>(sum) / static_cast<double>(outcomes.size());
    auto [lo, hi] = bootstrap_ci(outcomes, seed);
    score.ci_low = lo;
    score.ci_high = hi;
    return score;
}

Protocol gna_override_protocol() {
    return [](const soko::Level& level, const planner::PlanGrid&,
              Action baseline) -> std::optional<ProtocolDecision> {
        for (Action a : soko::kActions) {
            if (a == baseline) continue;
            soko::StepOutcome out = soko::step(level, a);
            if (out.next.agent_pos == level.agent_pos) continue;  // blocked
            ProtocolDecision d;
            d.target_action = a;
            d.post_ticks = 0;
            for (Action g : soko::kActions) {
                PlanEdit e;
                e.stage = PlanEdit::Stage::Readout;
                e.role = {RoleKind::Gna, g};
                e.alpha = 0.0;
                e.c = g == a ? 2.0 : -2.0;
                d.edits.push_back(e);
            }
            return d;
        }
        return std::nullopt;
    };
}

Protocol box_reroute_protocol() {
    return [](const soko::Level& level, const planner::PlanGrid& grid,
              Action baseline) -> std::optional<ProtocolDecision> {
        const auto& map = grid.map;
        // planned box square nearest the agent (fixed rule, documented)
        std::optional<soko::Pos> best_sq;
        Action planned = Action::Up;
        int best_dist = 1 << 30;
        for (soko::Pos b : level.box_positions()) {
            for (Action d : soko::kActions) {
                double v =
                    grid.get(map.box_short[static_cast<size_t>(static_cast<int>(d))], b);
                if (v >= 0.3) {
                    int dist = std::abs(b.row - level.agent_pos.row) +
                               std::abs(b.col - level.agent_pos.col);
                    if (dist < best_dist) {
                        best_dist = dist;
                        best_sq = b;
                        planned = d;
                    }
                }
            }
        }
        if (!best_sq) return std::nullopt;

        auto legal_push = [&](Action d) {
            soko::Pos dest = *best_sq + soko::delta(d);
            soko::Pos push = *best_sq - soko::delta(d);
            return level.is_free(dest) &&
                   (level.is_free(push) || push == level.agent_pos);
        };
        for (Action alt : soko::kActions) {
            if (alt == planned || !legal_push(alt)) continue;
            ProtocolDecision d;
            d.post_ticks = 2;
            d.target_action = std::nullopt;  // success: action changes at all
            (void)baseline;
            PlanEdit erase;
            erase.role = {RoleKind::BoxShort, planned};
            erase.squares = {*best_sq};
            erase.alpha = 0.0;
            d.edits.push_back(erase);
            PlanEdit install;
            install.role = {RoleKind::BoxShort, alt};
            install.squares = {*best_sq};
            install.alpha = 0.0;
            install.c = 1.5;
            d.edits.push_back(install);
            return d;
        }
        return std::nullopt;
    };
}

}  // namespace interp
