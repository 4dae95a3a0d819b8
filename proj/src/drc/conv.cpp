#include "drc/conv.hpp"

namespace drc {

Tensor3 conv2d(const Tensor3& input, const Kernel& kernel, const std::vector<double>& bias) {
    if (input.channels != kernel.c_in)
        throw std::invalid_argument("conv2d: input has " + std::to_string(input.channels) +
                                    " channels, kernel expects " +
                                    std::to_string(kernel.c_in));
    if (!bias.empty() && static_cast<int>(bias.size()) != kernel.c_out)
        throw std::invalid_argument("conv2d: bias size mismatch");

    Tensor3 out(input.height, input.width, kernel.c_out);
    int ar = kernel.anchor_r(), ac = kernel.anchor_c();
    for (int r = 0; r < input.height; ++r)
        for (int c = 0; c < input.width; ++c)
            for (int co = 0; co < kernel.c_out; ++co) {
                double acc = bias.empty() ? 0.0 : bias[co];
                for (int kr = 0; kr < kernel.kh; ++kr) {
                    int rr = r + kr - ar;
                    if (rr < 0 || rr >= input.height) continue;
                    for (int kc = 0; kc < kernel.kw; ++kc) {
                        int cc = c + kc - ac;
                        if (cc < 0 || cc >= input.width) continue;
                        for (int ci = 0; ci < kernel.c_in; ++ci)
                            acc += input.at(rr, cc, ci) * kernel.at(kr, kc, ci, co);
                    }
                }
                out.at(r, c, co) = acc;
            }
    return out;
}

Tensor3 conv2d_single_channel(const Tensor3& input, const Kernel& kernel, int in_channel) {
    if (in_channel < 0 || in_channel >= kernel.c_in)
        throw std::invalid_argument("conv2d_single_channel: channel out of range");
    Tensor3 out(input.height, input.width, kernel.c_out);
    int ar = kernel.anchor_r(), ac = kernel.anchor_c();
    for (int r = 0; r < input.height; ++r)
        for (int c = 0; c < input.width; ++c)
            for (int co = 0; co < kernel.c_out; ++co) {
                double acc = 0.0;
                for (int kr = 0; kr < kernel.kh; ++kr) {
                    int rr = r + kr - ar;
                    if (rr < 0 || rr >= input.height) continue;
                    for (int kc = 0; kc < kernel.kw; ++kc) {
                        int cc = c + kc - ac;
                        if (cc < 0 || cc >= input.width) continue;
                        acc += input.at(rr, cc, in_channel) * kernel.at(kr, kc, in_channel, co);
                    }
                }
                out.at(r, c, co) = acc;
            }
    return out;
}

}  // namespace drc
