#ifndef INTERP_DIRECT_EFFECT_HPP
#define INTERP_DIRECT_EFFECT_HPP

#include <string>

#include "drc/net.hpp"

namespace interp {

struct EffectEntry {
    std::string source;  // "e", "h_below", "h_prev"
    int channel = 0;
    double max_abs = 0.0;  // largest magnitude added to the gate, over squares
};

// Per-input-channel contributions to one gate's pre-activation, ranked by
// maximum magnitude over squares. The record must carry the conv inputs.
std::vector<EffectEntry> direct_effect(const drc::TickRecord& record,
                                       const drc::WeightSet& weights, drc::Gate gate,
                                       int out_channel);

// Full pre-activation of the gate (sum of all contributions plus bias);
// used to check additivity of the decomposition.
drc::Tensor3 gate_preactivation(const drc::TickRecord& record, const drc::WeightSet& weights,
                                drc::Gate gate);

// Contribution of one named input channel alone.
drc::Tensor3 single_contribution(const drc::TickRecord& record, const drc::WeightSet& weights,
                                 drc::Gate gate, const std::string& source, int channel);

}  // namespace interp

#endif  // INTERP_DIRECT_EFFECT_HPP
