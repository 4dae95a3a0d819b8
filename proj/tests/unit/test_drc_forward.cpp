#include "doctest.h"
#include "drc/net.hpp"

using namespace drc;

namespace {

Tensor3 random_obs(int h, int w, uint64_t seed) {
    Tensor3 t(h, w, 3);
    uint64_t s = seed;
    for (double& v : t.data) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        v = static_cast<double>(s >> 11) / 9007199254740992.0;  // in [0,1]
    }
    return t;
}

}  // namespace

TEST_CASE("a D=N=1 forward pass is one tick plus the head") {
    DrcConfig cfg;
    cfg.depth = 1;
    cfg.channels = 4;
    cfg.height = 5;
    cfg.width = 5;
    WeightSet w = random_weights(cfg, 11);
    Tensor3 obs = random_obs(5, 5, 1);

    auto states = zero_state(cfg, 5, 5);
    ForwardResult r = drc_forward(states, obs, w, 1);
    REQUIRE(r.policy_logits.size() == 4);

    // manual: encode + single tick with zero below/prev state
    auto manual = zero_state(cfg, 5, 5);
    Tensor3 e = encode(obs, w);
    LayerState next = convlstm_tick(manual[0], e, manual[0].h,
                                    pool_inject(manual[0].h, w.layers[0]), w.layers[0]);
    for (size_t k = 0; k < next.h.data.size(); ++k)
        CHECK(states[0].h.data[k] == next.h.data[k]);
}

TEST_CASE("identical calls are bit-identical") {
    DrcConfig cfg;
    cfg.depth = 3;
    cfg.channels = 6;
    cfg.height = 6;
    cfg.width = 6;
    WeightSet w = random_weights(cfg, 12);
    Tensor3 obs = random_obs(6, 6, 2);
    auto s1 = zero_state(cfg, 6, 6);
    auto s2 = zero_state(cfg, 6, 6);
    ForwardResult r1 = drc_forward(s1, obs, w, 3);
    ForwardResult r2 = drc_forward(s2, obs, w, 3);
    for (int a = 0; a < 4; ++a)
        CHECK(r1.policy_logits[static_cast<size_t>(a)] ==
              r2.policy_logits[static_cast<size_t>(a)]);
    for (int d = 0; d < 3; ++d)
        for (size_t k = 0; k < s1[static_cast<size_t>(d)].h.data.size(); ++k)
            CHECK(s1[static_cast<size_t>(d)].h.data[k] ==
                  s2[static_cast<size_t>(d)].h.data[k]);
}

TEST_CASE("the identity intervention changes nothing") {
    DrcConfig cfg;
    cfg.depth = 2;
    cfg.channels = 5;
    cfg.height = 5;
    cfg.width = 5;
    WeightSet w = random_weights(cfg, 13);
    Tensor3 obs = random_obs(5, 5, 3);

    std::vector<ActivationEdit> edits(1);
    edits[0].site = EditSite::Hidden;
    edits[0].alpha = 1.0;
    edits[0].c = 0.0;

    auto s1 = zero_state(cfg, 5, 5);
    auto s2 = zero_state(cfg, 5, 5);
    ForwardResult r1 = drc_forward(s1, obs, w, 2);
    ForwardResult r2 = drc_forward(s2, obs, w, 2, &edits);
    for (int a = 0; a < 4; ++a)
        CHECK(r1.policy_logits[static_cast<size_t>(a)] ==
              r2.policy_logits[static_cast<size_t>(a)]);
    for (size_t k = 0; k < s1[1].h.data.size(); ++k)
        CHECK(s1[1].h.data[k] == s2[1].h.data[k]);
}

TEST_CASE("top-down skip feeds layer 0 from the last layer's previous tick") {
    DrcConfig cfg;
    cfg.depth = 2;
    cfg.channels = 3;
    cfg.height = 4;
    cfg.width = 4;
    WeightSet w = random_weights(cfg, 14);
    Tensor3 obs = random_obs(4, 4, 4);

    // zero the top layer's state edits: forcing h of layer 1 to a constant
    // after tick 1 must change layer 0's tick-2 output
    auto base = zero_state(cfg, 4, 4);
    drc_forward(base, obs, w, 2);

    std::vector<ActivationEdit> edits(1);
    edits[0].site = EditSite::Hidden;
    edits[0].layer = 1;
    edits[0].ticks = {0};
    edits[0].alpha = 0.0;
    edits[0].c = 0.7;
    auto forced = zero_state(cfg, 4, 4);
    drc_forward(forced, obs, w, 2, &edits);

    double diff = 0.0;
    for (size_t k = 0; k < base[0].h.data.size(); ++k)
        diff += std::fabs(base[0].h.data[k] - forced[0].h.data[k]);
    CHECK(diff > 1e-6);
}

TEST_CASE("edits on bad addresses are rejected") {
    DrcConfig cfg;
    cfg.depth = 1;
    cfg.channels = 3;
    cfg.height = 4;
    cfg.width = 4;
    WeightSet w = random_weights(cfg, 15);
    Tensor3 obs = random_obs(4, 4, 5);
    std::vector<ActivationEdit> edits(1);
    edits[0].site = EditSite::Hidden;
    edits[0].channels = {7};  // out of range
    auto s = zero_state(cfg, 4, 4);
    CHECK_THROWS_AS(drc_forward(s, obs, w, 1, &edits), std::out_of_range);
}

TEST_CASE("probe readout reduces to the bias argmax on zero weights") {
    Probe probe;
    probe.channels = 3;
    probe.weight.assign(4 * 3, 0.0);
    probe.bias = {0.1, 0.7, 0.3, -0.2};
    Tensor3 h(4, 4, 3, 0.5);
    auto logits = probe_readout(h, probe);
    int best = 0;
    for (int a = 1; a < 4; ++a)
        if (logits[static_cast<size_t>(a)] > logits[static_cast<size_t>(best)]) best = a;
    CHECK(best == 1);
}

TEST_CASE("probe readout on constant h equals single-square evaluation") {
    Probe probe;
    probe.channels = 2;
    probe.weight = {0.3, -0.1, 0.2, 0.4, -0.5, 0.1, 0.0, 0.2};
    probe.bias = {0.0, 0.1, -0.1, 0.05};
    Tensor3 h(3, 7, 2);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 7; ++c) {
            h.at(r, c, 0) = 0.4;
            h.at(r, c, 1) = -0.6;
        }
    auto logits = probe_readout(h, probe);
    for (int a = 0; a < 4; ++a) {
        double want = probe.bias[static_cast<size_t>(a)] +
                      probe.weight[static_cast<size_t>(a) * 2] * 0.4 +
                      probe.weight[static_cast<size_t>(a) * 2 + 1] * -0.6;
        CHECK(logits[static_cast<size_t>(a)] == doctest::Approx(want));
    }
}
