#include "interp/steer.hpp"

#include <stdexcept>

namespace interp {

drc::WeightSet steer_weights(const drc::WeightSet& weights, double factor) {
    if (factor <= 0.0) throw std::invalid_argument("steer_weights: factor must be > 0");
    drc::WeightSet out = weights;
    for (auto& layer : out.layers)
        for (drc::Gate g : drc::kGates) {
            for (double& w : layer[g].Wh1.weights) w *= factor;
            for (double& w : layer[g].Wh2.weights) w *= factor;
        }
    drc::quantize_f32(out);
    return out;
}

}  // namespace interp
