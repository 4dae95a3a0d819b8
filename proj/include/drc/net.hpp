#ifndef DRC_NET_HPP
#define DRC_NET_HPP

#include <functional>
#include <optional>
#include <vector>

#include "drc/weights.hpp"

namespace drc {

struct LayerState {
    Tensor3 h;
    Tensor3 c;
};

// Edit site inside one ConvLSTM tick. Gates are edited after their
// nonlinearity and before the cell/hidden update; Cell and Hidden after the
// update. Empty channel/square lists mean "all".
enum class EditSite { GateI, GateJ, GateF, GateO, Cell, Hidden };

struct ActivationEdit {
    int layer = -1;               // -1: every layer
    std::vector<int> ticks;      // empty: every tick (tick index within the call)
    EditSite site = EditSite::Hidden;
    std::vector<int> channels;   // empty: all channels
    std::vector<std::pair<int, int>> squares;  // empty: all squares
    bool abs_value = false;      // x' <- |x| (when set, alpha/c are ignored)
    double alpha = 1.0;          // x' <- alpha*x + c
    double c = 0.0;
};

// Captured activations for one (tick, layer) evaluation, including the gate
// convolution inputs so per-channel contributions can be recomputed.
struct TickRecord {
    int tick = 0;
    int layer = 0;
    Tensor3 aug_e;    // encoder output + pooled channels + boundary (2C+1)
    Tensor3 h_below;
    Tensor3 h_prev;
    Tensor3 i, j, f, o;
    Tensor3 c, h;
};

struct ForwardResult {
    std::vector<double> policy_logits;  // empty when the weight set has no head
    double value = 0.0;
};

// e_t = W_E2 * (W_E1 * x + b_E1) + b_E2; no nonlinearity, zero padding.
Tensor3 encode(const Tensor3& obs, const WeightSet& weights);

// One ConvLSTM update. pooled is the per-channel pool-and-inject vector
// (computed from the layer's previous hidden state by pool_inject below).
LayerState convlstm_tick(const LayerState& state, const Tensor3& e_t,
                         const Tensor3& h_below, const std::vector<double>& pooled,
                         const GateWeights& weights,
                         TickRecord* record = nullptr);

std::vector<double> pool_inject(const Tensor3& h_prev, const GateWeights& weights);

// Ones at the outer border, zeros inside.
Tensor3 boundary_channel(int height, int width);

std::vector<LayerState> zero_state(const DrcConfig& config, int height, int width);

// Runs `ticks` passes over all D layers. Layer 0 receives the last layer's
// hidden state from the previous tick (top-down skip). Records, when a
// recorder vector is supplied, capture every (tick, layer). Edits are applied
// at their declared sites. Returns head outputs from the final hidden state.
ForwardResult drc_forward(std::vector<LayerState>& states, const Tensor3& obs,
                          const WeightSet& weights, int ticks,
                          const std::vector<ActivationEdit>* edits = nullptr,
                          std::vector<TickRecord>* recorder = nullptr);

// Per-action probe: logits_a = mean over squares of (w_a . h[square] + b_a).
struct Probe {
    int channels = 0;
    std::vector<double> weight;  // 4 x channels
    std::vector<double> bias;    // 4
};

std::vector<double> probe_readout(const Tensor3& h_final, const Probe& probe);

}  // namespace drc

#endif  // DRC_NET_HPP
