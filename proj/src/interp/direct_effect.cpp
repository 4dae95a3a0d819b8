#include "interp/direct_effect.hpp"

#include <algorithm>
#include <stdexcept>

namespace interp {

namespace {

const drc::GateConvs& gate_convs(const drc::WeightSet& w, int layer, drc::Gate g) {
    return w.layers[static_cast<size_t>(layer)][g];
}

}  // namespace

std::vector<EffectEntry> direct_effect(const drc::TickRecord& record,
                                       const drc::WeightSet& weights, drc::Gate gate,
                                       int out_channel) {
    if (record.aug_e.data.empty())
        throw std::invalid_argument("direct_effect: record carries no conv inputs");
    const drc::GateConvs& gc = gate_convs(weights, record.layer, gate);
    std::vector<EffectEntry> entries;

    auto add_source = [&](const char* name, const drc::Tensor3& input, const drc::Kernel& k) {
        for (int ci = 0; ci < k.c_in; ++ci) {
            drc::Tensor3 contrib = drc::conv2d_single_channel(input, k, ci);
            double mx = 0.0;
            for (int r = 0; r < contrib.height; ++r)
                for (int c = 0; c < contrib.width; ++c)
                    mx = std::max(mx, std::fabs(contrib.at(r, c, out_channel)));
            entries.push_back({name, ci, mx});
        }
    };
    add_source("e", record.aug_e, gc.We);
    add_source("h_below", record.h_below, gc.Wh1);
    add_source("h_prev", record.h_prev, gc.Wh2);

    std::stable_sort(entries.begin(), entries.end(),
                     [](const EffectEntry& a, const EffectEntry& b) {
                         return a.max_abs > b.max_abs;
                     });
    return entries;
}

drc::Tensor3 gate_preactivation(const drc::TickRecord& record, const drc::WeightSet& weights,
                                drc::Gate gate) {
    const drc::GateConvs& gc = gate_convs(weights, record.layer, gate);
    drc::Tensor3 pre = drc::conv2d(record.aug_e, gc.We, gc.bias);
    drc::Tensor3 below = drc::conv2d(record.h_below, gc.Wh1);
    drc::Tensor3 own = drc::conv2d(record.h_prev, gc.Wh2);
    for (size_t i = 0; i < pre.data.size(); ++i) pre.data[i] += below.data[i] + own.data[i];
    return pre;
}

drc::Tensor3 single_contribution(const drc::TickRecord& record, const drc::WeightSet& weights,
                                 drc::Gate gate, const std::string& source, int channel) {
    const drc::GateConvs& gc = gate_convs(weights, record.layer, gate);
    if (source == "e") return drc::conv2d_single_channel(record.aug_e, gc.We, channel);
    if (source == "h_below") return drc::conv2d_single_channel(record.h_below, gc.Wh1, channel);
    if (source == "h_prev") return drc::conv2d_single_channel(record.h_prev, gc.Wh2, channel);
    throw std::invalid_argument("single_contribution: unknown source " + source);
}

}  // namespace interp
