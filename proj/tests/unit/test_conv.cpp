#include "doctest.h"
#include "drc/conv.hpp"

using drc::Kernel;
using drc::Tensor3;

namespace {

// scalar reference: plain quadruple loop, independent of conv2d's structure
Tensor3 conv_reference(const Tensor3& in, const Kernel& k, const std::vector<double>& bias) {
    Tensor3 out(in.height, in.width, k.c_out);
    for (int r = 0; r < in.height; ++r)
        for (int c = 0; c < in.width; ++c)
            for (int co = 0; co < k.c_out; ++co) {
                double acc = bias.empty() ? 0.0 : bias[static_cast<size_t>(co)];
                for (int ci = 0; ci < k.c_in; ++ci)
                    for (int kr = 0; kr < k.kh; ++kr)
                        for (int kc = 0; kc < k.kw; ++kc) {
                            int rr = r + kr - k.anchor_r();
                            int cc = c + kc - k.anchor_c();
                            if (rr < 0 || rr >= in.height || cc < 0 || cc >= in.width)
                                continue;
                            acc += in.at(rr, cc, ci) * k.at(kr, kc, ci, co);
                        }
                out.at(r, c, co) = acc;
            }
    return out;
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

}  // namespace

TEST_CASE("a 1x1 identity kernel reproduces the input") {
    Tensor3 in = random_tensor(4, 5, 2, 1);
    Kernel k(1, 1, 2, 2);
    k.at(0, 0, 0, 0) = 1.0;
    k.at(0, 0, 1, 1) = 1.0;
    Tensor3 out = drc::conv2d(in, k);
    for (size_t i = 0; i < in.data.size(); ++i) CHECK(out.data[i] == in.data[i]);
}

TEST_CASE("a shift kernel moves the input left with zero fill") {
    Tensor3 in = random_tensor(3, 4, 1, 2);
    Kernel k(3, 3, 1, 1);
    k.at(1, 2, 0, 0) = 1.0;  // tap at offset (0, +1)
    Tensor3 out = drc::conv2d(in, k);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) CHECK(out.at(r, c, 0) == in.at(r, c + 1, 0));
        CHECK(out.at(r, 3, 0) == 0.0);
    }
}

TEST_CASE("conv2d matches the scalar reference on random input") {
    Tensor3 in = random_tensor(5, 5, 2, 3);
    Kernel k(3, 3, 2, 4);
    Tensor3 kw = random_tensor(3, 3, 2 * 4, 4);
    k.weights = kw.data;
    std::vector<double> bias = {0.1, -0.2, 0.3, 0.0};
    Tensor3 got = drc::conv2d(in, k, bias);
    Tensor3 want = conv_reference(in, k, bias);
    for (size_t i = 0; i < got.data.size(); ++i)
        CHECK(got.data[i] == doctest::Approx(want.data[i]).epsilon(1e-6));
}

TEST_CASE("even 4x4 kernels anchor the extra taps low-right") {
    Tensor3 in(6, 6, 1);
    in.at(3, 3, 0) = 1.0;
    Kernel k(4, 4, 1, 1);
    k.at(0, 0, 0, 0) = 1.0;  // offset (-1,-1)
    Tensor3 a = drc::conv2d(in, k);
    CHECK(a.at(4, 4, 0) == 1.0);  // output at p reads input p-1 => impulse shows at p+1
    Kernel k2(4, 4, 1, 1);
    k2.at(3, 3, 0, 0) = 1.0;  // offset (+2,+2)
    Tensor3 b = drc::conv2d(in, k2);
    CHECK(b.at(1, 1, 0) == 1.0);
}

TEST_CASE("conv2d is linear") {
    Tensor3 x = random_tensor(5, 4, 3, 7);
    Tensor3 y = random_tensor(5, 4, 3, 8);
    Kernel k(3, 3, 3, 2);
    Tensor3 kw = random_tensor(3, 3, 3 * 2, 2);
    k.weights = kw.data;
    double alpha = 0.7, beta = -1.3;
    Tensor3 mix(5, 4, 3);
    for (size_t i = 0; i < mix.data.size(); ++i)
        mix.data[i] = alpha * x.data[i] + beta * y.data[i];
    Tensor3 lhs = drc::conv2d(mix, k);
    Tensor3 cx = drc::conv2d(x, k);
    Tensor3 cy = drc::conv2d(y, k);
    for (size_t i = 0; i < lhs.data.size(); ++i)
        CHECK(lhs.data[i] ==
              doctest::Approx(alpha * cx.data[i] + beta * cy.data[i]).epsilon(1e-6));
}

TEST_CASE("shape mismatches are rejected") {
    Tensor3 in(3, 3, 2);
    Kernel k(3, 3, 3, 1);
    CHECK_THROWS_AS(drc::conv2d(in, k), std::invalid_argument);
}
