#include "planner/compile.hpp"

#include <cmath>
#include <stdexcept>

namespace planner {

namespace {

using drc::Gate;
using drc::Kernel;
using drc::WeightSet;
using soko::delta;

constexpr std::array<Action, 4> kDirs = {Action::Up, Action::Down, Action::Left,
                                         Action::Right};

// spare-channel layout used by the compiled net
struct Spares {
    int dark, blue, green;  // saturated color-basis channels
    int seed[4];            // rectified seed predicates per direction
    int stop_up;            // rectified stop pressure for the offset Up channel
};

Spares spare_layout(const ChannelMap& map) {
    if (map.total < 32)
        throw std::domain_error("compile_to_weights needs C >= 32 for its working channels");
    Spares s{};
    s.dark = 24;
    s.blue = 25;
    s.green = 26;
    for (int d = 0; d < 4; ++d) s.seed[d] = 27 + d;
    s.stop_up = 31;
    return s;
}

struct Programmer {
    WeightSet& w;
    const ChannelMap& map;

    std::pair<int, int> storage_offset(int ch) const { return map.offset(ch); }

    // tap on the encoder-side conv (input channel = e channel index)
    void tap_e(Gate g, int out_ch, int e_ch, int dr, int dc, double weight) {
        auto [odr, odc] = storage_offset(out_ch);
        int kr = dr - odr + 1, kc = dc - odc + 1;
        if (kr < 0 || kr > 2 || kc < 0 || kc > 2)
            throw std::logic_error("compile: e tap out of 3x3 range");
        w.layers[0][g].We.at(kr, kc, e_ch, out_ch) += weight;
    }
    // tap on the recurrent conv reading the previous hidden state
    void tap_h(Gate g, int out_ch, int in_ch, int dr, int dc, double weight) {
        auto [idr, idc] = storage_offset(in_ch);
        auto [odr, odc] = storage_offset(out_ch);
        int kr = dr + idr - odr + 1, kc = dc + idc - odc + 1;
        if (kr < 0 || kr > 2 || kc < 0 || kc > 2)
            throw std::logic_error("compile: h tap out of 3x3 range");
        w.layers[0][g].Wh2.at(kr, kc, in_ch, out_ch) += weight;
    }
    void bias(Gate g, int ch, double v) { w.layers[0][g].bias[static_cast<size_t>(ch)] = v; }
};

// affine "square is free for a push path" score over the saturated basis
// (+0.75 floor/target/agent, negative for wall/box); blocked = -free
struct BasisAffine {
    double blue, green, dark, bias;
};
constexpr BasisAffine kFree{1.0, 1.0, -1.0, 0.35};
// positive exactly on (uncovered) targets
constexpr BasisAffine kTargetish{1.0, -1.0, 0.0, -0.35};
// positive exactly on boxes
constexpr BasisAffine kBoxish{-1.0, -1.0, -1.0, -1.40};
// positive exactly on the agent
constexpr BasisAffine kAgentish{-1.0, 1.0, 0.0, -0.35};

// basis saturation level reached by the sharpened color channels
constexpr double kBasisLevel = 0.75;

}  // namespace

drc::WeightSet compile_to_weights(const ChannelMap& map, const MechanismGains& gains,
                                  CompileScope scope) {
    (void)scope;
    double chain = gains.chain_factor();
    if (chain <= 0.5 || chain > 1.02)
        throw std::domain_error("compile_to_weights: chain factor " + std::to_string(chain) +
                                " outside (0.5, 1.02]");
    if (gains.wta_inhibit < 0.3 || gains.wta_inhibit > 0.99)
        throw std::domain_error("compile_to_weights: wta_inhibit outside [0.3, 0.99]");
    if (gains.tpe_gain >= gains.lpe_gain)
        throw std::domain_error("compile_to_weights: turn gain must stay below linear gain");

    WeightSet w;
    w.config.depth = 1;
    w.config.ticks = 1;
    w.config.channels = map.total;
    w.config.height = 0;
    w.config.width = 0;
    int C = map.total;
    w.enc1 = Kernel(4, 4, 3, C);
    w.enc1_bias.assign(static_cast<size_t>(C), 0.0);
    w.enc2 = Kernel(4, 4, C, C);
    w.enc2_bias.assign(static_cast<size_t>(C), 0.0);
    w.layers.resize(1);
    for (Gate g : drc::kGates) {
        w.layers[0][g].We = Kernel(3, 3, 2 * C + 1, C);
        w.layers[0][g].Wh1 = Kernel(3, 3, C, C);
        w.layers[0][g].Wh2 = Kernel(3, 3, C, C);
        w.layers[0][g].bias.assign(static_cast<size_t>(C), 0.0);
    }
    w.layers[0].pool_mean.assign(static_cast<size_t>(C), 0.0);
    w.layers[0].pool_max.assign(static_cast<size_t>(C), 0.0);
    w.head.reset();

    Spares sp = spare_layout(map);
    Programmer P{w, map};

    // ---- default gate biases: inert channels stay silent ----
    for (int ch = 0; ch < C; ++ch) {
        P.bias(Gate::I, ch, 0.0);
        P.bias(Gate::J, ch, -8.0);
        P.bias(Gate::F, ch, -8.0);  // memoryless: chains re-derive every tick
        P.bias(Gate::O, ch, 0.0);
    }

    // ---- encoder: conv1 copies rgb, conv2 emits affine color scores ----
    for (int ch = 0; ch < 3; ++ch) P.w.enc1.at(1, 1, ch, ch) = 1.0;
    // e[dark] = 0.6 - (r+g+b), e[blue] = b - 0.35, e[green] = g - 0.65
    for (int ch = 0; ch < 3; ++ch) w.enc2.at(1, 1, ch, sp.dark) = -1.0;
    w.enc2_bias[static_cast<size_t>(sp.dark)] = 0.6;
    w.enc2.at(1, 1, 2, sp.blue) = 1.0;
    w.enc2_bias[static_cast<size_t>(sp.blue)] = -0.35;
    w.enc2.at(1, 1, 1, sp.green) = 1.0;
    w.enc2_bias[static_cast<size_t>(sp.green)] = -0.65;

    // ---- basis channels: sharpen the scores, signed output ----
    auto signed_channel = [&](int ch) {
        P.bias(Gate::J, ch, 8.0);
        P.bias(Gate::O, ch, 8.0);
    };
    signed_channel(sp.dark);
    P.tap_e(Gate::I, sp.dark, sp.dark, 0, 0, 5.0);
    signed_channel(sp.blue);
    P.tap_e(Gate::I, sp.blue, sp.blue, 0, 0, 15.0);
    signed_channel(sp.green);
    P.tap_e(Gate::I, sp.green, sp.green, 0, 0, 15.0);

    // helper: add an affine-over-basis term at logical offset (dr,dc)
    auto basis_term = [&](Gate g, int out_ch, const BasisAffine& a, int dr, int dc,
                          double scale, double& bias_acc) {
        P.tap_h(g, out_ch, sp.blue, dr, dc, scale * a.blue / kBasisLevel);
        P.tap_h(g, out_ch, sp.green, dr, dc, scale * a.green / kBasisLevel);
        P.tap_h(g, out_ch, sp.dark, dr, dc, scale * a.dark / kBasisLevel);
        bias_acc += scale * a.bias / kBasisLevel;
    };

    // ---- entity channels (display / ablation targets): rectified ----
    auto entity_channel = [&](int ch, const BasisAffine& a) {
        double ib = 0.0, jb = 0.0;
        basis_term(Gate::I, ch, a, 0, 0, 3.0, ib);
        basis_term(Gate::J, ch, a, 0, 0, 6.0, jb);
        P.bias(Gate::I, ch, ib);
        P.bias(Gate::J, ch, jb);
        P.bias(Gate::O, ch, 8.0);
    };
    entity_channel(map.wall, BasisAffine{0.0, 0.0, 1.0, -0.35});
    entity_channel(map.target, kTargetish);
    entity_channel(map.box, kBoxish);
    entity_channel(map.agent, kAgentish);

    // ---- seed channels: rectified (fwd AND) + (bwd AND), one per dir ----
    // Each AND is an affine over basis terms with +-2 margins; summing two
    // ANDs plus a +1 shift keeps the channel high when either predicate holds.
    for (Action d : kDirs) {
        int di = static_cast<int>(d);
        int ch = sp.seed[di];
        soko::Pos dd = delta(d);
        double ib = 1.0;  // the +1 shift

        // forward AND: box(s), free(s+d), free(s-d), not target(s)
        // conditions scaled so each true term ~+1, false ~-1
        double and_bias = -3.0 + 1.0;  // n-1 = 3 conditions beyond the +1 margin trick
        basis_term(Gate::I, ch, kBoxish, 0, 0, 1.0, and_bias);
        basis_term(Gate::I, ch, kFree, dd.row, dd.col, 1.0, and_bias);
        basis_term(Gate::I, ch, kFree, -dd.row, -dd.col, 1.0, and_bias);
        ib += and_bias;

        // backward AND (k=1): target(s+d), free(s-d), box-channel-holdable(s)
        double and2_bias = -2.0 + 1.0;
        basis_term(Gate::I, ch, kTargetish, dd.row, dd.col, 2.0, and2_bias);
        basis_term(Gate::I, ch, kFree, -dd.row, -dd.col, 1.0, and2_bias);
        ib += and2_bias;

        P.bias(Gate::I, ch, ib);
        // j mirrors i at double gain: the i*j product rectifies the sum
        for (int kr = 0; kr < 3; ++kr)
            for (int kc = 0; kc < 3; ++kc)
                for (int ci = 0; ci < C; ++ci)
                    w.layers[0][Gate::J].Wh2.at(kr, kc, ci, ch) =
                        2.0 * w.layers[0][Gate::I].Wh2.at(kr, kc, ci, ch);
        P.bias(Gate::J, ch, 2.0 * ib);
        P.bias(Gate::O, ch, 8.0);
    }

    // ---- stop-pressure channel for the offset Up path channel ----
    {
        int ch = sp.stop_up;
        soko::Pos dd = delta(Action::Up);
        double ib = -0.5;
        BasisAffine blocked{-kFree.blue, -kFree.green, -kFree.dark, -kFree.bias};
        basis_term(Gate::I, ch, blocked, dd.row, dd.col, 1.0, ib);
        basis_term(Gate::I, ch, blocked, -dd.row, -dd.col, 1.0, ib);
        basis_term(Gate::I, ch, kTargetish, 0, 0, 1.0, ib);
        P.bias(Gate::I, ch, ib);
        for (int kr = 0; kr < 3; ++kr)
            for (int kc = 0; kc < 3; ++kc)
                for (int ci = 0; ci < C; ++ci)
                    w.layers[0][Gate::J].Wh2.at(kr, kc, ci, ch) =
                        2.0 * w.layers[0][Gate::I].Wh2.at(kr, kc, ci, ch);
        P.bias(Gate::J, ch, 2.0 * ib);
        P.bias(Gate::O, ch, 8.0);
    }

    // ---- path channels: chains + seeds in i, WTA in j, stops in o ----
    // tanh(w_lpe * v) < v for w_lpe <= 1 gives chains that decay with
    // distance; the steering experiments scale these kernels.
    double w_lpe = 0.98 * chain;
    double w_turn = w_lpe * (gains.tpe_gain / gains.lpe_gain);
    double w_seed = 1.3;
    double w_wta = 2.2 * gains.wta_inhibit;
    double w_stop = 2.5;

    for (Action d : kDirs) {
        int di = static_cast<int>(d);
        int ch = map.box_short[static_cast<size_t>(di)];
        soko::Pos dd = delta(d);

        // i: seeds + linear extension from both chain directions + turns
        P.tap_h(Gate::I, ch, sp.seed[di], 0, 0, w_seed);
        P.bias(Gate::I, ch, -0.45 * w_seed);  // seed channel's "off" level is ~0
        P.tap_h(Gate::I, ch, ch, -dd.row, -dd.col, w_lpe);
        P.tap_h(Gate::I, ch, ch, dd.row, dd.col, w_lpe);
        for (Action o : (d == Action::Up || d == Action::Down)
                            ? std::array<Action, 2>{Action::Left, Action::Right}
                            : std::array<Action, 2>{Action::Up, Action::Down})
            P.tap_h(Gate::I, ch, map.box_short[static_cast<size_t>(static_cast<int>(o))], 0,
                    0, w_turn);

        // j: rectifier plus cross-direction inhibition (the WTA kernels) and
        // a per-direction bias that breaks symmetric ties
        for (int kr = 0; kr < 3; ++kr)
            for (int kc = 0; kc < 3; ++kc)
                for (int ci = 0; ci < C; ++ci)
                    w.layers[0][Gate::J].Wh2.at(kr, kc, ci, ch) +=
                        2.0 * w.layers[0][Gate::I].Wh2.at(kr, kc, ci, ch);
        double dir_edge = 4.0 * (gains.dir_bias[static_cast<size_t>(di)] - 1.0);
        P.bias(Gate::J, ch, 2.0 * w.layers[0][Gate::I].bias[static_cast<size_t>(ch)] +
                                dir_edge + 1.2);
        for (Action o : kDirs) {
            if (o == d) continue;
            P.tap_h(Gate::J, ch, map.box_short[static_cast<size_t>(static_cast<int>(o))], 0,
                    0, -w_wta);
        }

        // o: open by default, strongly negative where the move is invalid
        P.bias(Gate::O, ch, 1.6);
        if (d == Action::Up) {
            P.tap_h(Gate::O, ch, sp.stop_up, 0, 0, -w_stop * 1.4);
        } else {
            double ob = 0.0;
            BasisAffine blocked{-kFree.blue, -kFree.green, -kFree.dark, -kFree.bias};
            basis_term(Gate::O, ch, blocked, dd.row, dd.col, w_stop, ob);
            basis_term(Gate::O, ch, blocked, -dd.row, -dd.col, w_stop, ob);
            basis_term(Gate::O, ch, kTargetish, 0, 0, w_stop, ob);
            P.bias(Gate::O, ch, 1.6 + ob);
        }
    }

    drc::quantize_f32(w);
    return w;
}

Plan decode_hidden(const drc::Tensor3& h, const ChannelMap& map, double theta) {
    Plan plan;
    plan.height = h.height;
    plan.width = h.width;
    plan.arrows.assign(static_cast<size_t>(h.height) * h.width, std::nullopt);
    auto get = [&](int ch, int r, int c) {
        auto [dr, dc] = map.offset(ch);
        int rr = r + dr, cc = c + dc;
        if (rr < 0 || rr >= h.height || cc < 0 || cc >= h.width) return 0.0;
        return h.at(rr, cc, ch);
    };
    for (int r = 0; r < h.height; ++r)
        for (int c = 0; c < h.width; ++c) {
            double best = theta;
            std::optional<Action> dir;
            for (Action d : kDirs) {
                double v = get(map.box_short[static_cast<size_t>(static_cast<int>(d))], r, c);
                if (v >= best) {
                    best = v;
                    dir = d;
                }
            }
            if (dir)
                plan.arrows[static_cast<size_t>(r) * plan.width + c] =
                    Plan::Arrow{*dir, false, best};
        }
    return plan;
}

drc::Tensor3 run_compiled(const drc::WeightSet& weights, const Level& level, int ticks) {
    drc::Tensor3 obs = soko::render_rgb(level);
    auto states = drc::zero_state(weights.config, level.height, level.width);
    drc::drc_forward(states, obs, weights, ticks);
    return states.back().h;
}

}  // namespace planner
