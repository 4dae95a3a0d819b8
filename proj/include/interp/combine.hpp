#ifndef INTERP_COMBINE_HPP
#define INTERP_COMBINE_HPP

#include "drc/weights.hpp"

namespace interp {

// Encoder simplification: the two 4x4 encoder convolutions composed with one
// 3x3 gate kernel give a single observation-to-gate kernel with offsets in
// [-3, 5] per axis (9 taps) plus a per-channel bias. Equality with the
// two-stage path holds away from the borders.
struct CombinedKernel {
    int off_lo = -3, off_hi = 5;
    int c_in = 3, c_out = 0;
    std::vector<double> weights;  // indexed (or, oc, ci, co), offsets shifted by -off_lo
    std::vector<double> bias;

    int extent() const { return off_hi - off_lo + 1; }
    size_t index(int orow, int ocol, int ci, int co) const {
        return ((static_cast<size_t>(orow - off_lo) * extent() + (ocol - off_lo)) * c_in +
                ci) * c_out + co;
    }
    double& at(int orow, int ocol, int ci, int co) { return weights[index(orow, ocol, ci, co)]; }
    double at(int orow, int ocol, int ci, int co) const {
        return weights[index(orow, ocol, ci, co)];
    }
};

// W = W_gate * W_e2 * W_e1 over the encoder slice of the gate's input, and
// b = W_gate * (b_e2 + W_e2 * b_e1).
CombinedKernel combine_encoder(const drc::WeightSet& weights, int layer, drc::Gate gate);

// Applies the combined kernel to an observation (zero padding).
drc::Tensor3 apply_combined(const CombinedKernel& kernel, const drc::Tensor3& obs);

// Reference two-stage path: encode, then the gate's encoder-slice conv.
drc::Tensor3 encoder_gate_two_stage(const drc::WeightSet& weights, int layer,
                                    drc::Gate gate, const drc::Tensor3& obs);

}  // namespace interp

#endif  // INTERP_COMBINE_HPP
