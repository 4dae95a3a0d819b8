#ifndef DRC_CONV_HPP
#define DRC_CONV_HPP

#include <stdexcept>
#include <vector>

#include "drc/tensor.hpp"

namespace drc {

// Convolution kernel, weights indexed (kr, kc, c_in, c_out). Odd extents are
// centered; even extents anchor the extra tap on the lower-right side, i.e.
// a 4x4 kernel covers offsets {-1,0,1,2} in each axis.
struct Kernel {
    int kh = 0, kw = 0;
    int c_in = 0, c_out = 0;
    std::vector<double> weights;

    Kernel() = default;
    Kernel(int kh_, int kw_, int cin, int cout)
        : kh(kh_), kw(kw_), c_in(cin), c_out(cout),
          weights(static_cast<size_t>(kh_) * kw_ * cin * cout, 0.0) {}

    size_t index(int kr, int kc, int ci, int co) const {
        return ((static_cast<size_t>(kr) * kw + kc) * c_in + ci) * c_out + co;
    }
    double& at(int kr, int kc, int ci, int co) { return weights[index(kr, kc, ci, co)]; }
    double at(int kr, int kc, int ci, int co) const { return weights[index(kr, kc, ci, co)]; }

    int anchor_r() const { return (kh - 1) / 2; }
    int anchor_c() const { return (kw - 1) / 2; }
};

// Same-size cross-correlation with zero padding. Accumulation order is fixed
// (kernel row, kernel col, in-channel) so outputs are bit-stable.
Tensor3 conv2d(const Tensor3& input, const Kernel& kernel,
               const std::vector<double>& bias = {});

// Contribution of a single input channel (no bias); used for direct-effect
// decompositions.
Tensor3 conv2d_single_channel(const Tensor3& input, const Kernel& kernel, int in_channel);

}  // namespace drc

#endif  // DRC_CONV_HPP
