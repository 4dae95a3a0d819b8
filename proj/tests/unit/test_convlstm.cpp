#include <cmath>

#include "doctest.h"
#include "drc/net.hpp"

using namespace drc;

namespace {

WeightSet small_weights(uint64_t seed, double scale = 0.2) {
    DrcConfig cfg;
    cfg.depth = 1;
    cfg.channels = 3;
    cfg.height = 4;
    cfg.width = 4;
    return random_weights(cfg, seed, scale);
}

Tensor3 random_tensor(int h, int w, int c, uint64_t seed) {
    Tensor3 t(h, w, c);
    uint64_t s = seed;
    for (double& v : t.data) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        v = static_cast<double>(s >> 11) / 9007199254740992.0 - 0.5;
    }
    return t;
}

// independent scalar reimplementation of one ConvLSTM update
LayerState tick_reference(const LayerState& state, const Tensor3& e, const Tensor3& h_below,
                          const std::vector<double>& pooled, const GateWeights& w) {
    int H = e.height, W = e.width, C = e.channels;
    auto conv_at = [&](const Tensor3& in, const Kernel& k, int r, int c, int co) {
        double acc = 0.0;
        for (int kr = 0; kr < k.kh; ++kr)
            for (int kc = 0; kc < k.kw; ++kc)
                for (int ci = 0; ci < k.c_in; ++ci) {
                    int rr = r + kr - k.anchor_r(), cc = c + kc - k.anchor_c();
                    if (rr < 0 || rr >= H || cc < 0 || cc >= W) continue;
                    double v;
                    if (&k == &w[Gate::I].We || &k == &w[Gate::J].We ||
                        &k == &w[Gate::F].We || &k == &w[Gate::O].We) {
                        if (ci < C) v = e.at(rr, cc, ci);
                        else if (ci < 2 * C) v = pooled[static_cast<size_t>(ci - C)];
                        else
                            v = (rr == 0 || cc == 0 || rr == H - 1 || cc == W - 1) ? 1.0 : 0.0;
                    } else {
                        v = in.at(rr, cc, ci);
                    }
                    acc += v * k.at(kr, kc, ci, co);
                }
        return acc;
    };
    auto sigmoid = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    LayerState out;
    out.c = Tensor3(H, W, C);
    out.h = Tensor3(H, W, C);
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c)
            for (int ch = 0; ch < C; ++ch) {
                auto pre = [&](Gate g) {
                    return conv_at(e, w[g].We, r, c, ch) +
                           conv_at(h_below, w[g].Wh1, r, c, ch) +
                           conv_at(state.h, w[g].Wh2, r, c, ch) +
                           w[g].bias[static_cast<size_t>(ch)];
                };
                double i = std::tanh(pre(Gate::I));
                double j = sigmoid(pre(Gate::J));
                double f = sigmoid(pre(Gate::F));
                double o = std::tanh(pre(Gate::O));
                double cc = f * state.c.at(r, c, ch) + i * j;
                out.c.at(r, c, ch) = cc;
                out.h.at(r, c, ch) = o * std::tanh(cc);
            }
    return out;
}

}  // namespace

TEST_CASE("all-zero weights give the nonlinearity fixed points") {
    WeightSet w = small_weights(1, 0.0);
    int C = w.config.channels;
    Tensor3 e(4, 4, C);
    LayerState state{Tensor3(4, 4, C), Tensor3(4, 4, C, 0.8)};
    TickRecord rec;
    LayerState next = convlstm_tick(state, e, state.h,
                                    pool_inject(state.h, w.layers[0]), w.layers[0], &rec);
    for (double v : rec.j.data) CHECK(v == doctest::Approx(0.5));
    for (double v : rec.f.data) CHECK(v == doctest::Approx(0.5));
    for (double v : rec.i.data) CHECK(v == doctest::Approx(0.0));
    for (double v : rec.o.data) CHECK(v == doctest::Approx(0.0));
    for (double v : next.c.data) CHECK(v == doctest::Approx(0.4));  // 0.5 * 0.8
    for (double v : next.h.data) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("a saturated forget bias carries the cell state through") {
    WeightSet w = small_weights(2, 0.0);
    for (auto& b : w.layers[0][Gate::F].bias) b = 10.0;
    int C = w.config.channels;
    Tensor3 e(4, 4, C);
    LayerState state{Tensor3(4, 4, C), random_tensor(4, 4, C, 9)};
    LayerState next = convlstm_tick(state, e, state.h,
                                    pool_inject(state.h, w.layers[0]), w.layers[0]);
    for (size_t k = 0; k < next.c.data.size(); ++k)
        CHECK(next.c.data[k] == doctest::Approx(state.c.data[k]).epsilon(1e-4));
}

TEST_CASE("convlstm_tick matches an independent scalar reimplementation") {
    WeightSet w = small_weights(3);
    int C = w.config.channels;
    Tensor3 e = random_tensor(4, 4, C, 10);
    Tensor3 h_below = random_tensor(4, 4, C, 11);
    LayerState state{random_tensor(4, 4, C, 12), random_tensor(4, 4, C, 13)};
    auto pooled = pool_inject(state.h, w.layers[0]);
    LayerState got = convlstm_tick(state, e, h_below, pooled, w.layers[0]);
    LayerState want = tick_reference(state, e, h_below, pooled, w.layers[0]);
    for (size_t k = 0; k < got.h.data.size(); ++k) {
        CHECK(got.c.data[k] == doctest::Approx(want.c.data[k]).epsilon(1e-6));
        CHECK(got.h.data[k] == doctest::Approx(want.h.data[k]).epsilon(1e-6));
    }
}

TEST_CASE("gate ranges and the h identity hold after any tick") {
    WeightSet w = small_weights(4, 0.8);
    int C = w.config.channels;
    Tensor3 e = random_tensor(4, 4, C, 20);
    LayerState state{random_tensor(4, 4, C, 21), random_tensor(4, 4, C, 22)};
    TickRecord rec;
    LayerState next = convlstm_tick(state, e, state.h,
                                    pool_inject(state.h, w.layers[0]), w.layers[0], &rec);
    for (double v : rec.j.data) CHECK((v > 0.0 && v < 1.0));
    for (double v : rec.f.data) CHECK((v > 0.0 && v < 1.0));
    for (double v : rec.i.data) CHECK((v > -1.0 && v < 1.0));
    for (double v : rec.o.data) CHECK((v > -1.0 && v < 1.0));
    for (size_t k = 0; k < next.h.data.size(); ++k)
        CHECK(next.h.data[k] ==
              doctest::Approx(rec.o.data[k] * std::tanh(next.c.data[k])).epsilon(1e-12));
}
