#include "interp/combine.hpp"

#include <stdexcept>

#include "drc/net.hpp"

namespace interp {

namespace {

// offset-indexed kernel for composition, offsets in [lo, hi]
struct OffKernel {
    int lo, hi, c_in, c_out;
    std::vector<double> w;
    OffKernel(int lo_, int hi_, int cin, int cout)
        : lo(lo_), hi(hi_), c_in(cin), c_out(cout),
          w(static_cast<size_t>(hi_ - lo_ + 1) * (hi_ - lo_ + 1) * cin * cout, 0.0) {}
    int extent() const { return hi - lo + 1; }
    size_t idx(int orow, int ocol, int ci, int co) const {
        return ((static_cast<size_t>(orow - lo) * extent() + (ocol - lo)) * c_in + ci) *
                   c_out + co;
    }
    double& at(int orow, int ocol, int ci, int co) { return w[idx(orow, ocol, ci, co)]; }
    double get(int orow, int ocol, int ci, int co) const { return w[idx(orow, ocol, ci, co)]; }
};

OffKernel from_kernel(const drc::Kernel& k, int c_in_limit = -1) {
    int cin = c_in_limit < 0 ? k.c_in : c_in_limit;
    OffKernel ok(0 - k.anchor_r(), k.kh - 1 - k.anchor_r(), cin, k.c_out);
    for (int kr = 0; kr < k.kh; ++kr)
        for (int kc = 0; kc < k.kw; ++kc)
            for (int ci = 0; ci < cin; ++ci)
                for (int co = 0; co < k.c_out; ++co)
                    ok.at(kr - k.anchor_r(), kc - k.anchor_c(), ci, co) = k.at(kr, kc, ci, co);
    return ok;
}

// outer(inner(x)): offsets add, channels contract over inner.c_out
OffKernel compose(const OffKernel& outer, const OffKernel& inner) {
    if (outer.c_in != inner.c_out)
        throw std::invalid_argument("compose: channel mismatch");
    OffKernel out(outer.lo + inner.lo, outer.hi + inner.hi, inner.c_in, outer.c_out);
    for (int ro = outer.lo; ro <= outer.hi; ++ro)
        for (int co_ = outer.lo; co_ <= outer.hi; ++co_)
            for (int ri = inner.lo; ri <= inner.hi; ++ri)
                for (int ci_ = inner.lo; ci_ <= inner.hi; ++ci_)
                    for (int mid = 0; mid < outer.c_in; ++mid)
                        for (int cin = 0; cin < inner.c_in; ++cin)
                            for (int cout = 0; cout < outer.c_out; ++cout)
                                out.at(ro + ri, co_ + ci_, cin, cout) +=
                                    outer.get(ro, co_, mid, cout) *
                                    inner.get(ri, ci_, cin, mid);
    return out;
}

}  // namespace

CombinedKernel combine_encoder(const drc::WeightSet& weights, int layer, drc::Gate gate) {
    if (layer < 0 || layer >= static_cast<int>(weights.layers.size()))
        throw std::invalid_argument("combine_encoder: layer out of range");
    int C = weights.config.channels;
    const drc::Kernel& gk = weights.layers[static_cast<size_t>(layer)][gate].We;
    if (gk.c_in != 2 * C + 1)
        throw std::invalid_argument("combine_encoder: unexpected gate input channels");

    OffKernel e1 = from_kernel(weights.enc1);
    OffKernel e2 = from_kernel(weights.enc2);
    // encoder slice of the gate kernel: first C input channels
    OffKernel g(0 - gk.anchor_r(), gk.kh - 1 - gk.anchor_r(), C, gk.c_out);
    for (int kr = 0; kr < gk.kh; ++kr)
        for (int kc = 0; kc < gk.kw; ++kc)
            for (int ci = 0; ci < C; ++ci)
                for (int co = 0; co < gk.c_out; ++co)
                    g.at(kr - gk.anchor_r(), kc - gk.anchor_c(), ci, co) =
                        gk.at(kr, kc, ci, co);

    OffKernel enc = compose(e2, e1);   // offsets [-2, 4]
    OffKernel full = compose(g, enc);  // offsets [-3, 5]

    CombinedKernel out;
    out.off_lo = full.lo;
    out.off_hi = full.hi;
    out.c_in = 3;
    out.c_out = C;
    out.weights = full.w;

    // bias: gate conv applied to the constant (b_e2 + W_e2 * b_e1)
    std::vector<double> b_mid(static_cast<size_t>(C), 0.0);
    for (int c2 = 0; c2 < C; ++c2) {
        double acc = weights.enc2_bias[static_cast<size_t>(c2)];
        for (int kr = 0; kr < weights.enc2.kh; ++kr)
            for (int kc = 0; kc < weights.enc2.kw; ++kc)
                for (int c1 = 0; c1 < C; ++c1)
                    acc += weights.enc2.at(kr, kc, c1, c2) *
                           weights.enc1_bias[static_cast<size_t>(c1)];
        b_mid[static_cast<size_t>(c2)] = acc;
    }
    out.bias.assign(static_cast<size_t>(C), 0.0);
    for (int co = 0; co < C; ++co) {
        double acc = 0.0;
        for (int kr = 0; kr < gk.kh; ++kr)
            for (int kc = 0; kc < gk.kw; ++kc)
                for (int c2 = 0; c2 < C; ++c2)
                    acc += gk.at(kr, kc, c2, co) * b_mid[static_cast<size_t>(c2)];
        out.bias[static_cast<size_t>(co)] = acc;
    }
    return out;
}

drc::Tensor3 apply_combined(const CombinedKernel& k, const drc::Tensor3& obs) {
    if (obs.channels != k.c_in) throw std::invalid_argument("apply_combined: channels");
    drc::Tensor3 out(obs.height, obs.width, k.c_out);
    for (int r = 0; r < obs.height; ++r)
        for (int c = 0; c < obs.width; ++c)
            for (int co = 0; co < k.c_out; ++co) {
                double acc = k.bias[static_cast<size_t>(co)];
                for (int orow = k.off_lo; orow <= k.off_hi; ++orow) {
                    int rr = r + orow;
                    if (rr < 0 || rr >= obs.height) continue;
                    for (int ocol = k.off_lo; ocol <= k.off_hi; ++ocol) {
                        int cc = c + ocol;
                        if (cc < 0 || cc >= obs.width) continue;
                        for (int ci = 0; ci < k.c_in; ++ci)
                            acc += obs.at(rr, cc, ci) * k.at(orow, ocol, ci, co);
                    }
                }
                out.at(r, c, co) = acc;
            }
    return out;
}

drc::Tensor3 encoder_gate_two_stage(const drc::WeightSet& weights, int layer,
                                    drc::Gate gate, const drc::Tensor3& obs) {
    drc::Tensor3 e = drc::encode(obs, weights);
    int C = weights.config.channels;
    // zero-extended to the gate's full input: pooled and boundary silent
    drc::Tensor3 aug(e.height, e.width, 2 * C + 1);
    for (int r = 0; r < e.height; ++r)
        for (int c = 0; c < e.width; ++c)
            for (int ch = 0; ch < C; ++ch) aug.at(r, c, ch) = e.at(r, c, ch);
    return drc::conv2d(aug, weights.layers[static_cast<size_t>(layer)][gate].We);
}

}  // namespace interp
