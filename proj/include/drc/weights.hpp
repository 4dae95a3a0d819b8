#ifndef DRC_WEIGHTS_HPP
#define DRC_WEIGHTS_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "drc/conv.hpp"

namespace drc {

enum class Gate : int { I = 0, J = 1, F = 2, O = 3 };
constexpr std::array<Gate, 4> kGates = {Gate::I, Gate::J, Gate::F, Gate::O};
inline const char* gate_name(Gate g) {
    static const char* names[] = {"i", "j", "f", "o"};
    return names[static_cast<int>(g)];
}

// One gate's convolutions. The gate input from the encoder side is the
// encoder output with the pool-and-inject channels and one boundary channel
// appended, so We has 2C+1 input channels; Wh1 reads the layer below's
// hidden state; Wh2 the layer's own previous hidden state.
struct GateConvs {
    Kernel We;   // 3x3 x (2C+1) x C
    Kernel Wh1;  // 3x3 x C x C
    Kernel Wh2;  // 3x3 x C x C
    std::vector<double> bias;  // C
};

struct GateWeights {
    std::array<GateConvs, 4> gate;  // indexed by Gate
    // pool-and-inject mix: pooled_c = mean_w[c]*mean(h_c) + max_w[c]*max(h_c)
    std::vector<double> pool_mean;
    std::vector<double> pool_max;

    GateConvs& operator[](Gate g) { return gate[static_cast<int>(g)]; }
    const GateConvs& operator[](Gate g) const { return gate[static_cast<int>(g)]; }
};

struct MlpHead {
    // hidden width 256, ReLU; policy logits (4) and scalar value
    std::vector<double> fc1_w;  // 256 x (H*W*C), row-major
    std::vector<double> fc1_b;
    std::vector<double> policy_w;  // 4 x 256
    std::vector<double> policy_b;
    std::vector<double> value_w;  // 1 x 256
    std::vector<double> value_b;
};

struct DrcConfig {
    int depth = 3;     // D stacked ConvLSTM layers
    int ticks = 3;     // N ticks per environment step
    int channels = 32; // C
    int height = 10;   // only the MLP head depends on H, W
    int width = 10;
};

// Full parameter set for DRC(D,N) inference. The head is optional: weight
// files for headless (probe- or plan-decoded) nets simply omit the head.*
// tensors. The file format carries no D/N/C/H/W record; depth and channels
// are recovered from tensor names/shapes, ticks defaults to 3 unless the
// caller overrides it.
struct WeightSet {
    DrcConfig config;
    Kernel enc1;  // 4x4 x 3 x C
    std::vector<double> enc1_bias;
    Kernel enc2;  // 4x4 x C x C
    std::vector<double> enc2_bias;
    std::vector<GateWeights> layers;  // size D
    std::optional<MlpHead> head;
};

class weight_io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Binary format: magic "DRCW", one version byte (=1), u32le tensor count;
// per tensor: u16le name length, UTF-8 name, u8 ndim, ndim x u32le dims,
// then dims-product f32le values, row-major.
void save_weights(const WeightSet& weights, std::ostream& sink);
void save_weights_file(const WeightSet& weights, const std::string& path);
WeightSet load_weights(std::istream& source);
WeightSet load_weights_file(const std::string& path);

// Casts every parameter through f32 so that save/load round-trips are
// element-wise exact.
void quantize_f32(WeightSet& weights);

// Deterministic random weights for tests/benchmarks (uniform in [-s, s]).
WeightSet random_weights(const DrcConfig& config, uint64_t seed, double scale = 0.2);

}  // namespace drc

#endif  // DRC_WEIGHTS_HPP
