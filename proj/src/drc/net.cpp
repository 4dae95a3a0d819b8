#include "drc/net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace drc {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void apply_edit_tensor(Tensor3& t, const ActivationEdit& e) {
    auto edit_value = [&](double& v) {
        v = e.abs_value ? std::fabs(v) : e.alpha * v + e.c;
    };
    if (e.channels.empty() && e.squares.empty()) {
        for (double& v : t.data) edit_value(v);
        return;
    }
    std::vector<int> chs = e.channels;
    if (chs.empty())
        for (int c = 0; c < t.channels; ++c) chs.push_back(c);
    for (int ch : chs) {
        if (ch < 0 || ch >= t.channels)
            throw std::out_of_range("activation edit channel " + std::to_string(ch) +
                                    " out of range (C=" + std::to_string(t.channels) + ")");
        if (e.squares.empty()) {
            for (int r = 0; r < t.height; ++r)
                for (int c = 0; c < t.width; ++c) edit_value(t.at(r, c, ch));
        } else {
            for (auto [r, c] : e.squares) {
                if (r < 0 || r >= t.height || c < 0 || c >= t.width)
                    throw std::out_of_range("activation edit square out of range");
                edit_value(t.at(r, c, ch));
            }
        }
    }
}

bool edit_matches(const ActivationEdit& e, int layer, int tick, EditSite site) {
    if (e.site != site) return false;
    if (e.layer >= 0 && e.layer != layer) return false;
    if (!e.ticks.empty() &&
        std::find(e.ticks.begin(), e.ticks.end(), tick) == e.ticks.end())
        return false;
    return true;
}

void apply_edits(Tensor3& t, const std::vector<ActivationEdit>* edits, int layer,
                 int tick, EditSite site) {
    if (!edits) return;
    for (const auto& e : *edits)
        if (edit_matches(e, layer, tick, site)) apply_edit_tensor(t, e);
}

}  // namespace

Tensor3 encode(const Tensor3& obs, const WeightSet& weights) {
    Tensor3 mid = conv2d(obs, weights.enc1, weights.enc1_bias);
    return conv2d(mid, weights.enc2, weights.enc2_bias);
}

Tensor3 boundary_channel(int height, int width) {
    Tensor3 b(height, width, 1);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
            b.at(r, c, 0) = (r == 0 || c == 0 || r == height - 1 || c == width - 1) ? 1.0 : 0.0;
    return b;
}

std::vector<double> pool_inject(const Tensor3& h_prev, const GateWeights& weights) {
    int C = h_prev.channels;
    std::vector<double> pooled(static_cast<size_t>(C), 0.0);
    double cells = static_cast<double>(h_prev.height) * h_prev.width;
    for (int ch = 0; ch < C; ++ch) {
        double sum = 0.0, mx = -std::numeric_limits<double>::infinity();
        for (int r = 0; r < h_prev.height; ++r)
            for (int c = 0; c < h_prev.width; ++c) {
                double v = h_prev.at(r, c, ch);
                sum += v;
                mx = std::max(mx, v);
            }
        pooled[static_cast<size_t>(ch)] =
            weights.pool_mean[static_cast<size_t>(ch)] * (sum / cells) +
            weights.pool_max[static_cast<size_t>(ch)] * mx;
    }
    return pooled;
}

LayerState convlstm_tick(const LayerState& state, const Tensor3& e_t,
                         const Tensor3& h_below, const std::vector<double>& pooled,
                         const GateWeights& weights, TickRecord* record) {
    int H = e_t.height, W = e_t.width, C = e_t.channels;
    if (state.h.channels != C || h_below.channels != C)
        throw std::invalid_argument("convlstm_tick: channel mismatch");
    if (static_cast<int>(pooled.size()) != C)
        throw std::invalid_argument("convlstm_tick: pooled size mismatch");

    // encoder-side input: e_t, pooled broadcast, boundary channel
    Tensor3 aug(H, W, 2 * C + 1);
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c) {
            for (int ch = 0; ch < C; ++ch) aug.at(r, c, ch) = e_t.at(r, c, ch);
            for (int ch = 0; ch < C; ++ch)
                aug.at(r, c, C + ch) = pooled[static_cast<size_t>(ch)];
            aug.at(r, c, 2 * C) =
                (r == 0 || c == 0 || r == H - 1 || c == W - 1) ? 1.0 : 0.0;
        }

    auto gate_pre = [&](Gate g) {
        const GateConvs& gc = weights[g];
        Tensor3 pre = conv2d(aug, gc.We, gc.bias);
        Tensor3 below = conv2d(h_below, gc.Wh1);
        Tensor3 own = conv2d(state.h, gc.Wh2);
        for (size_t k = 0; k < pre.data.size(); ++k)
            pre.data[k] += below.data[k] + own.data[k];
        return pre;
    };

    Tensor3 gi = gate_pre(Gate::I);
    Tensor3 gj = gate_pre(Gate::J);
    Tensor3 gf = gate_pre(Gate::F);
    Tensor3 go = gate_pre(Gate::O);
    for (double& v : gi.data) v = std::tanh(v);
    for (double& v : gj.data) v = sigmoid(v);
    for (double& v : gf.data) v = sigmoid(v);
    for (double& v : go.data) v = std::tanh(v);

    if (record) {
        record->aug_e = aug;
        record->h_below = h_below;
        record->h_prev = state.h;
    }

    LayerState out;
    out.c = Tensor3(H, W, C);
    out.h = Tensor3(H, W, C);
    for (size_t k = 0; k < out.c.data.size(); ++k)
        out.c.data[k] = gf.data[k] * state.c.data[k] + gi.data[k] * gj.data[k];
    for (size_t k = 0; k < out.h.data.size(); ++k)
        out.h.data[k] = go.data[k] * std::tanh(out.c.data[k]);

    if (record) {
        record->i = std::move(gi);
        record->j = std::move(gj);
        record->f = std::move(gf);
        record->o = std::move(go);
        record->c = out.c;
        record->h = out.h;
    }
    return out;
}

std::vector<LayerState> zero_state(const DrcConfig& config, int height, int width) {
    std::vector<LayerState> states(static_cast<size_t>(config.depth));
    for (auto& s : states) {
        s.h = Tensor3(height, width, config.channels);
        s.c = Tensor3(height, width, config.channels);
    }
    return states;
}

ForwardResult drc_forward(std::vector<LayerState>& states, const Tensor3& obs,
                          const WeightSet& weights, int ticks,
                          const std::vector<ActivationEdit>* edits,
                          std::vector<TickRecord>* recorder) {
    if (ticks < 1) throw std::invalid_argument("drc_forward: ticks must be >= 1");
    int D = weights.config.depth;
    if (static_cast<int>(states.size()) != D)
        throw std::invalid_argument("drc_forward: state depth mismatch");
    int C = weights.config.channels;

    Tensor3 e_t = encode(obs, weights);
    if (e_t.channels != C) throw std::invalid_argument("drc_forward: channel mismatch");

    for (int n = 0; n < ticks; ++n) {
        Tensor3 top_h = states[static_cast<size_t>(D - 1)].h;  // previous tick's top
        for (int d = 0; d < D; ++d) {
            const Tensor3& h_below = (d == 0) ? top_h : states[static_cast<size_t>(d - 1)].h;
            const GateWeights& gw = weights.layers[static_cast<size_t>(d)];
            std::vector<double> pooled = pool_inject(states[static_cast<size_t>(d)].h, gw);

            TickRecord rec;
            bool recording = recorder != nullptr;
            bool gate_edits = false;
            if (edits)
                for (const auto& e : *edits)
                    if (e.site != EditSite::Cell && e.site != EditSite::Hidden)
                        gate_edits = true;

            if (!gate_edits) {
                LayerState next =
                    convlstm_tick(states[static_cast<size_t>(d)], e_t, h_below, pooled,
                                  gw, recording ? &rec : nullptr);
                apply_edits(next.c, edits, d, n, EditSite::Cell);
                apply_edits(next.h, edits, d, n, EditSite::Hidden);
                states[static_cast<size_t>(d)] = std::move(next);
            } else {
                // Gate-site edits need the gates exposed: rebuild the update here.
                TickRecord full;
                convlstm_tick(states[static_cast<size_t>(d)], e_t, h_below, pooled, gw,
                              &full);
                apply_edits(full.i, edits, d, n, EditSite::GateI);
                apply_edits(full.j, edits, d, n, EditSite::GateJ);
                apply_edits(full.f, edits, d, n, EditSite::GateF);
                apply_edits(full.o, edits, d, n, EditSite::GateO);
                LayerState next;
                next.c = Tensor3(e_t.height, e_t.width, C);
                next.h = Tensor3(e_t.height, e_t.width, C);
                const Tensor3& c_prev = states[static_cast<size_t>(d)].c;
                for (size_t k = 0; k < next.c.data.size(); ++k)
                    next.c.data[k] =
                        full.f.data[k] * c_prev.data[k] + full.i.data[k] * full.j.data[k];
                apply_edits(next.c, edits, d, n, EditSite::Cell);
                for (size_t k = 0; k < next.h.data.size(); ++k)
                    next.h.data[k] = full.o.data[k] * std::tanh(next.c.data[k]);
                apply_edits(next.h, edits, d, n, EditSite::Hidden);
                full.c = next.c;
                full.h = next.h;
                rec = std::move(full);
                states[static_cast<size_t>(d)] = std::move(next);
            }

            if (recording) {
                rec.tick = n;
                rec.layer = d;
                recorder->push_back(std::move(rec));
            }
        }
    }

    ForwardResult result;
    if (weights.head) {
        const Tensor3& h_top = states[static_cast<size_t>(D - 1)].h;
        const MlpHead& head = *weights.head;
        size_t in_dim = h_top.data.size();
        if (head.fc1_w.size() != 256 * in_dim)
            throw std::invalid_argument("drc_forward: head shape mismatch vs grid");
        std::vector<double> hidden(256, 0.0);
        for (size_t u = 0; u < 256; ++u) {
            double acc = head.fc1_b[u];
            const double* row = head.fc1_w.data() + u * in_dim;
            for (size_t k = 0; k < in_dim; ++k) acc += row[k] * h_top.data[k];
            hidden[u] = std::max(0.0, acc);  // ReLU
        }
        result.policy_logits.assign(4, 0.0);
        for (int a = 0; a < 4; ++a) {
            double acc = head.policy_b[static_cast<size_t>(a)];
            for (size_t u = 0; u < 256; ++u)
                acc += head.policy_w[static_cast<size_t>(a) * 256 + u] * hidden[u];
            result.policy_logits[static_cast<size_t>(a)] = acc;
        }
        double v = head.value_b[0];
        for (size_t u = 0; u < 256; ++u) v += head.value_w[u] * hidden[u];
        result.value = v;
    }
    return result;
}

std::vector<double> probe_readout(const Tensor3& h_final, const Probe& probe) {
    if (probe.channels != h_final.channels)
        throw std::invalid_argument("probe_readout: channel mismatch");
    std::vector<double> logits(4, 0.0);
    double cells = static_cast<double>(h_final.height) * h_final.width;
    for (int a = 0; a < 4; ++a) {
        double acc = 0.0;
        for (int r = 0; r < h_final.height; ++r)
            for (int c = 0; c < h_final.width; ++c) {
                double dot = probe.bias[static_cast<size_t>(a)];
                for (int ch = 0; ch < probe.channels; ++ch)
                    dot += probe.weight[static_cast<size_t>(a) * probe.channels + ch] *
                           h_final.at(r, c, ch);
                acc += dot;
            }
        logits[static_cast<size_t>(a)] = acc / cells;
    }
    return logits;
}

}  // namespace drc
