// drcplan: Sokoban planning laboratory CLI
//
// Subcommands: solve, run, evaluate, generate, compile-weights,
// combine-encoder, intervene, ablate, steer, probe, dump.
// Machine-readable output (CSV / line records) goes to stdout or --out;
// human commentary goes to stderr. Exit codes: 0 ok, 1 runtime error,
// 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "harness/config.hpp"
#include "harness/csv.hpp"
#include "harness/evaluate.hpp"
#include "harness/heatmap.hpp"
#include "harness/manifest.hpp"
#include "harness/suite.hpp"
#include "interp/ablate.hpp"
#include "interp/auc.hpp"
#include "interp/action_probe.hpp"
#include "interp/combine.hpp"
#include "interp/intervene.hpp"
#include "interp/regression.hpp"
#include "interp/steer.hpp"
#include "planner/compile.hpp"
#include "soko/generate.hpp"
#include "soko/solve.hpp"

namespace fs = std::filesystem;

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string levels = "suite";
    std::string out;
    uint64_t seed = 0x5eed;
    int ticks = 3;
    int thinking_steps = 0;
    int max_steps = 120;
};

harness::Config load_config(const GlobalArgs& g) {
    harness::Config cfg;
    if (!g.config_path.empty()) cfg = harness::load_config_file(g.config_path);
    cfg.seed = g.seed;
    cfg.ticks_per_step = g.ticks;
    cfg.thinking_steps = g.thinking_steps;
    cfg.max_steps = g.max_steps;
    return cfg;
}

void add_globals(CLI::App* cmd, GlobalArgs& g) {
    cmd->add_option("--config", g.config_path, "key=value config file");
    cmd->add_option("--levels", g.levels, "level set: path, file, or builtin name");
    cmd->add_option("--out", g.out, "output directory or file");
    cmd->add_option("--seed", g.seed, "run seed");
    cmd->add_option("--ticks", g.ticks, "planner ticks per environment step");
    cmd->add_option("--thinking-steps", g.thinking_steps, "extra tick rounds before acting");
    cmd->add_option("--max-steps", g.max_steps, "episode step limit");
}

void emit(const GlobalArgs& g, const std::string& name, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    fs::path base(g.out);
    if (!base.has_extension()) {
        fs::create_directories(base);
        std::ofstream f(base / name, std::ios::binary);
        f << text;
    } else {
        std::ofstream f(base, std::ios::binary);
        f << text;
    }
}

soko::Action parse_action_flag(const std::string& s) {
    if (s == "up") return soko::Action::Up;
    if (s == "down") return soko::Action::Down;
    if (s == "left") return soko::Action::Left;
    if (s == "right") return soko::Action::Right;
    throw std::invalid_argument("unknown action: " + s);
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Sokoban synthetic-planner laboratory"};
    app.require_subcommand(1);

    // ---- generate ----
    auto* gen = app.add_subcommand("generate", "emit a case-study level");
    std::string gen_kind = "corridor";
    int gen_size = 9;
    GlobalArgs gen_args;
    gen->add_option("kind", gen_kind, "zigzag|backtrack|two_paths|corridor")->required();
    gen->add_option("--size", gen_size, "level size");
    add_globals(gen, gen_args);

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "run the brute-force oracle");
    GlobalArgs solve_args;
    size_t solve_budget = 5'000'000;
    bool solve_actions = false;
    solve->add_option("--budget", solve_budget, "node budget");
    solve->add_flag("--actions", solve_actions, "print the action sequence");
    add_globals(solve, solve_args);

    // ---- run ----
    auto* run = app.add_subcommand("run", "roll out a planner on each level");
    GlobalArgs run_args;
    std::string run_planner = "synthetic";
    std::string run_weights;
    std::string run_dump;
    run->add_option("--planner", run_planner, "synthetic|drc");
    run->add_option("--weights", run_weights, "weight file for --planner drc");
    run->add_option("--dump", run_dump, "directory for per-step heatmaps and traces");
    add_globals(run, run_args);

    // ---- evaluate ----
    auto* eval = app.add_subcommand("evaluate", "solve-rate statistics over a level set");
    GlobalArgs eval_args;
    std::string eval_planner = "synthetic";
    std::string eval_weights;
    eval->add_option("--planner", eval_planner, "oracle|synthetic|drc");
    eval->add_option("--weights", eval_weights, "weight file for --planner drc");
    add_globals(eval, eval_args);

    // ---- compile-weights ----
    auto* comp = app.add_subcommand("compile-weights",
                                    "compile the planner mechanisms into DRC(1,1) weights");
    GlobalArgs comp_args;
    std::string comp_out = "compiled.drcw";
    comp->add_option("--weights-out", comp_out, "output weight file");
    add_globals(comp, comp_args);

    // ---- combine-encoder ----
    auto* comb = app.add_subcommand("combine-encoder",
                                    "compose encoder and gate kernels into one kernel");
    GlobalArgs comb_args;
    std::string comb_weights;
    int comb_layer = 0;
    std::string comb_gate = "o";
    comb->add_option("--weights", comb_weights, "weight file")->required();
    comb->add_option("--layer", comb_layer, "layer index");
    comb->add_option("--gate", comb_gate, "i|j|f|o");
    add_globals(comb, comb_args);

    // ---- intervene ----
    auto* inter = app.add_subcommand("intervene", "apply an activation edit");
    GlobalArgs inter_args;
    std::string inter_spec;
    std::string inter_protocol;
    int inter_n = 0;
    inter->add_option("--spec", inter_spec, "key=value edit description");
    inter->add_option("--protocol", inter_protocol, "gna|reroute (scored protocol)");
    inter->add_option("--n", inter_n, "max transitions for protocol scoring");
    add_globals(inter, inter_args);

    // ---- ablate ----
    auto* abl = app.add_subcommand("ablate", "measure an ablation's solve-rate drop");
    GlobalArgs abl_args;
    std::string abl_spec;
    abl->add_option("--spec", abl_spec, "mode=... targets=...")->required();
    add_globals(abl, abl_args);

    // ---- steer ----
    auto* steer = app.add_subcommand("steer", "scale recurrent kernels / measure reach");
    GlobalArgs steer_args;
    std::string steer_weights_in, steer_weights_out;
    double steer_factor = 1.2;
    int steer_corridor = 30;
    bool steer_reach = false;
    steer->add_option("--weights", steer_weights_in, "weight file to steer");
    steer->add_option("--weights-out", steer_weights_out, "steered output file");
    steer->add_option("--factor", steer_factor, "kernel multiplier");
    steer->add_flag("--reach", steer_reach, "report propagation reach per factor");
    steer->add_option("--corridor", steer_corridor, "reach probe corridor length");
    add_globals(steer, steer_args);

    // ---- probe ----
    auto* probe = app.add_subcommand("probe", "offset|label|auc|action analyses");
    GlobalArgs probe_args;
    std::string probe_kind = "auc";
    int probe_episodes = 20;
    probe->add_option("kind", probe_kind, "offset|label|auc|action")->required();
    probe->add_option("--episodes", probe_episodes, "recorded episodes to use");
    add_globals(probe, probe_args);

    // ---- dump ----
    auto* dump = app.add_subcommand("dump", "plan-grid heatmaps and traces");
    GlobalArgs dump_args;
    std::string dump_channel = "box_short_right";
    int dump_ticks = 6;
    dump->add_option("--channel", dump_channel, "channel role name");
    dump->add_option("--plan-ticks", dump_ticks, "ticks before dumping");
    add_globals(dump, dump_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    planner::ChannelMap map = planner::default_channel_map(32);

    if (gen->parsed()) {
        soko::CaseKind kind;
        if (gen_kind == "zigzag") kind = soko::CaseKind::Zigzag;
        else if (gen_kind == "backtrack") kind = soko::CaseKind::Backtrack;
        else if (gen_kind == "two_paths") kind = soko::CaseKind::TwoPaths;
        else if (gen_kind == "corridor") kind = soko::CaseKind::Corridor;
        else throw CLI::ValidationError("kind", "unknown case kind " + gen_kind);
        soko::Level lv = soko::generate_case_level(kind, gen_size);
        emit(gen_args, gen_kind + ".txt", soko::to_text(lv));
        return 0;
    }

    if (solve->parsed()) {
        auto levels = harness::load_level_set(solve_args.levels);
        harness::CsvWriter csv({"level", "status", "length", "nodes"});
        std::string actions_text;
        for (size_t i = 0; i < levels.size(); ++i) {
            soko::OracleResult res = soko::solve_oracle(levels[i], solve_budget);
            const char* status = res.status == soko::SolveStatus::Solved ? "solved"
                                 : res.status == soko::SolveStatus::Unsolvable
                                     ? "unsolvable"
                                     : "budget_exhausted";
            csv.row({std::to_string(levels[i].id.value_or(static_cast<long>(i))), status,
                     std::to_string(res.actions.size()), std::to_string(res.nodes_expanded)});
            if (solve_actions) {
                for (auto a : res.actions) actions_text += std::string(soko::action_name(a)) + " ";
                actions_text += "\n";
            }
        }
        emit(solve_args, "solve.csv", csv.text() + actions_text);
        return 0;
    }

    if (run->parsed()) {
        harness::Config cfg = load_config(run_args);
        auto levels = harness::load_level_set(run_args.levels);
        harness::CsvWriter csv({"level", "step", "action", "reward", "no_plan"});
        for (size_t i = 0; i < levels.size(); ++i) {
            planner::RunOptions ro;
            ro.max_steps = cfg.max_steps;
            ro.ticks_per_step = cfg.ticks_per_step;
            ro.thinking_steps = cfg.thinking_steps;
            ro.record_grids = !run_dump.empty();
            planner::Episode ep = planner::run_planner(levels[i], map, cfg.gains, ro);
            for (int t = 0; t < ep.steps; ++t)
                csv.row({std::to_string(i), std::to_string(t),
                         soko::action_name(ep.actions[static_cast<size_t>(t)]),
                         harness::format_double(ep.rewards[static_cast<size_t>(t)]),
                         ep.no_plan[static_cast<size_t>(t)] ? "1" : "0"});
            if (!run_dump.empty()) {
                fs::create_directories(run_dump);
                for (size_t t = 0; t < ep.grids.size(); ++t) {
                    for (int d = 0; d < 4; ++d) {
                        char stem[128];
                        std::snprintf(stem, sizeof stem, "%s/lvl%02zu_step%03zu_box_%s",
                                      run_dump.c_str(), i, t,
                                      soko::action_name(static_cast<soko::Action>(d)));
                        harness::dump_heatmap(
                            ep.grids[t].acts,
                            map.box_short[static_cast<size_t>(d)], stem);
                    }
                }
                std::ofstream trace(fs::path(run_dump) / ("trace_" + std::to_string(i) + ".txt"));
                for (const auto& ev : ep.trace)
                    trace << planner::trace_kind_name(ev.kind) << " " << ev.square.row << " "
                          << ev.square.col << " " << ev.channel << " " << ev.tick << "\n";
            }
        }
        emit(run_args, "run.csv", csv.text());
        return 0;
    }

    if (eval->parsed()) {
        harness::Config cfg = load_config(eval_args);
        auto levels = harness::load_level_set(eval_args.levels);
        harness::EvaluateOptions opts;
        opts.max_steps = cfg.max_steps;
        opts.ticks_per_step = cfg.ticks_per_step;
        opts.thinking_steps = cfg.thinking_steps;
        opts.seed = cfg.seed;
        harness::SolverKind kind = harness::SolverKind::Synthetic;
        drc::WeightSet w;
        if (eval_planner == "oracle") kind = harness::SolverKind::Oracle;
        else if (eval_planner == "drc") {
            kind = harness::SolverKind::Drc;
            w = drc::load_weights_file(eval_weights);
            opts.weights = &w;
        } else if (eval_planner != "synthetic")
            throw CLI::ValidationError("--planner", "unknown planner " + eval_planner);
        harness::SolveStats stats = harness::evaluate(kind, levels, map, cfg.gains, opts);
        harness::RunManifest manifest = harness::make_manifest(cfg, eval_args.levels);
        emit(eval_args, "evaluate.csv", harness::solve_stats_csv(stats));
        if (!eval_args.out.empty()) emit(eval_args, "manifest.txt", manifest.to_text());
        std::cerr << "solved " << stats.n_solved << "/" << stats.n_levels << "\n";
        return 0;
    }

    if (comp->parsed()) {
        harness::Config cfg = load_config(comp_args);
        drc::WeightSet w = planner::compile_to_weights(map, cfg.gains);
        drc::save_weights_file(w, comp_out);
        std::cerr << "wrote " << comp_out << "\n";
        return 0;
    }

    if (comb->parsed()) {
        drc::WeightSet w = drc::load_weights_file(comb_weights);
        drc::Gate gate = drc::Gate::O;
        if (comb_gate == "i") gate = drc::Gate::I;
        else if (comb_gate == "j") gate = drc::Gate::J;
        else if (comb_gate == "f") gate = drc::Gate::F;
        else if (comb_gate != "o")
            throw CLI::ValidationError("--gate", "unknown gate " + comb_gate);
        interp::CombinedKernel ck = interp::combine_encoder(w, comb_layer, gate);
        harness::CsvWriter csv({"orow", "ocol", "in", "out", "weight"});
        for (int orow = ck.off_lo; orow <= ck.off_hi; ++orow)
            for (int ocol = ck.off_lo; ocol <= ck.off_hi; ++ocol)
                for (int ci = 0; ci < ck.c_in; ++ci)
                    for (int co = 0; co < ck.c_out; ++co) {
                        double v = ck.at(orow, ocol, ci, co);
                        if (v == 0.0) continue;
                        csv.row({std::to_string(orow), std::to_string(ocol),
                                 std::to_string(ci), std::to_string(co),
                                 harness::format_double(v)});
                    }
        emit(comb_args, "combined_kernel.csv", csv.text());
        return 0;
    }

    if (inter->parsed()) {
        harness::Config cfg = load_config(inter_args);
        auto levels = harness::load_level_set(inter_args.levels);
        if (!inter_protocol.empty()) {
            interp::Protocol protocol = inter_protocol == "gna"
                                            ? interp::gna_override_protocol()
                                            : interp::box_reroute_protocol();
            std::vector<soko::Level> transitions = levels;
            if (inter_n > 0 && static_cast<int>(transitions.size()) > inter_n)
                transitions.resize(static_cast<size_t>(inter_n));
            interp::InterventionScore score = interp::intervention_score(
                transitions, map, cfg.gains, protocol, cfg.seed, cfg.ticks_per_step);
            harness::CsvWriter csv({"protocol", "n", "success_rate", "ci_low", "ci_high"});
            csv.row({inter_protocol, std::to_string(score.n),
                     harness::format_double(score.success_rate),
                     harness::format_double(score.ci_low),
                     harness::format_double(score.ci_high)});
            emit(inter_args, "intervention_score.csv", csv.text());
            return 0;
        }
        interp::InterventionSpec spec = interp::parse_intervention(inter_spec);
        if (!spec.plan_edit) throw CLI::ValidationError("--spec", "net edits need `run`");
        harness::CsvWriter csv({"level", "baseline", "intervened", "changed"});
        for (size_t i = 0; i < levels.size(); ++i) {
            interp::InterveneOutcome out = interp::causal_intervene(
                levels[i], map, cfg.gains, *spec.plan_edit, cfg.ticks_per_step);
            csv.row({std::to_string(i), soko::action_name(out.baseline),
                     soko::action_name(out.intervened), out.action_changed ? "1" : "0"});
        }
        emit(inter_args, "intervene.csv", csv.text());
        return 0;
    }

    if (abl->parsed()) {
        harness::Config cfg = load_config(abl_args);
        auto levels = harness::load_level_set(abl_args.levels);
        interp::AblationSpec spec = interp::parse_ablation(abl_spec);
        planner::RunOptions ro;
        ro.max_steps = cfg.max_steps;
        ro.ticks_per_step = cfg.ticks_per_step;
        interp::AblationRunResult res =
            interp::apply_ablation(levels, map, cfg.gains, spec, ro);
        harness::CsvWriter csv(
            {"n_levels", "base_solved", "ablated_solved", "base_rate", "ablated_rate", "drop"});
        csv.row({std::to_string(res.n_levels), std::to_string(res.base_solved),
                 std::to_string(res.ablated_solved), harness::format_double(res.base_rate),
                 harness::format_double(res.ablated_rate), harness::format_double(res.drop)});
        emit(abl_args, "ablation.csv", csv.text());
        return 0;
    }

    if (steer->parsed()) {
        harness::Config cfg = load_config(steer_args);
        if (steer_reach) {
            harness::CsvWriter csv({"factor", "reach"});
            for (double f : {1.0, 1.1, 1.2, 1.3, 1.4}) {
                int reach = planner::propagation_reach(cfg.gains.steered(f), steer_corridor,
                                                       2 * steer_corridor);
                csv.row({harness::format_double(f), std::to_string(reach)});
            }
            emit(steer_args, "reach.csv", csv.text());
            return 0;
        }
        drc::WeightSet w = drc::load_weights_file(steer_weights_in);
        drc::WeightSet out = interp::steer_weights(w, steer_factor);
        drc::save_weights_file(out, steer_weights_out.empty() ? "steered.drcw"
                                                              : steer_weights_out);
        return 0;
    }

    if (probe->parsed()) {
        harness::Config cfg = load_config(probe_args);
        auto levels = harness::load_level_set(probe_args.levels);
        if (static_cast<int>(levels.size()) > probe_episodes)
            levels.resize(static_cast<size_t>(probe_episodes));
        planner::RunOptions ro;
        ro.max_steps = cfg.max_steps;
        ro.ticks_per_step = cfg.ticks_per_step;
        interp::Recordings rec = interp::record_planner_episodes(levels, map, cfg.gains, ro);

        if (probe_kind == "offset" || probe_kind == "label") {
            std::vector<int> channels;
            for (int d = 0; d < 4; ++d) channels.push_back(map.box_short[static_cast<size_t>(d)]);
            for (int d = 0; d < 4; ++d)
                channels.push_back(map.agent_short[static_cast<size_t>(d)]);
            if (probe_kind == "offset") {
                interp::OffsetReport rep = interp::offset_regression(rec, channels);
                harness::CsvWriter csv({"channel", "dr", "dc", "correlation", "degenerate"});
                for (const auto& row : rep.rows)
                    csv.row({std::to_string(row.channel), std::to_string(row.dr),
                             std::to_string(row.dc), harness::format_double(row.correlation),
                             row.degenerate ? "1" : "0"});
                emit(probe_args, "offsets.csv", csv.text());
            } else {
                interp::CorrelationReport rep = interp::label_regression(rec, channels);
                harness::CsvWriter csv({"channel", "full_corr", "base_corr", "degenerate"});
                for (const auto& row : rep.rows)
                    csv.row({std::to_string(row.channel),
                             harness::format_double(row.full_correlation),
                             harness::format_double(row.base_correlation),
                             row.degenerate ? "1" : "0"});
                emit(probe_args, "label_regression.csv", csv.text());
            }
            return 0;
        }
        if (probe_kind == "auc") {
            interp::AucReport rep = interp::auc_probe(rec, {1, 5, 10});
            harness::CsvWriter csv(
                {"channel", "direction", "horizon", "auc", "polarity", "defined"});
            for (const auto& row : rep.rows)
                csv.row({std::to_string(row.channel), std::to_string(row.direction),
                         std::to_string(row.horizon), harness::format_double(row.auc),
                         harness::format_double(row.polarity), row.defined ? "1" : "0"});
            emit(probe_args, "auc.csv", csv.text());
            return 0;
        }
        if (probe_kind == "action") {
            std::vector<interp::ProbeSample> samples;
            for (const auto& ep : rec.episodes)
                for (size_t t = 0; t < ep.grids.size(); ++t)
                    samples.push_back(
                        interp::probe_sample_from_grid(ep.grids[t], ep.actions[t]));
            interp::ProbeTraining training = interp::train_action_probe(samples);
            harness::CsvWriter csv({"samples", "iterations", "train_acc", "heldout_acc"});
            csv.row({std::to_string(samples.size()), std::to_string(training.iterations),
                     harness::format_double(training.train_accuracy),
                     harness::format_double(training.heldout_accuracy)});
            emit(probe_args, "action_probe.csv", csv.text());
            return 0;
        }
        throw CLI::ValidationError("kind", "unknown probe kind " + probe_kind);
    }

    if (dump->parsed()) {
        harness::Config cfg = load_config(dump_args);
        auto levels = harness::load_level_set(dump_args.levels);
        interp::InterventionSpec role_spec =
            interp::parse_intervention("target=" + dump_channel + " alpha=1 c=0");
        int channel = planner::role_channel(map, role_spec.plan_edit->role);
        planner::PlanGrid grid = planner::init_plan(levels.front(), map, cfg.gains);
        for (int t = 0; t < dump_ticks; ++t)
            grid = planner::tick_plan(grid, levels.front(), cfg.gains);
        std::string stem = dump_args.out.empty() ? dump_channel : dump_args.out;
        harness::dump_heatmap(grid.acts, channel, stem);
        std::cerr << "wrote " << stem << ".ppm/.csv\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
