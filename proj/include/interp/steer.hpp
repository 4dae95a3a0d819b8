#ifndef INTERP_STEER_HPP
#define INTERP_STEER_HPP

#include "drc/weights.hpp"

namespace interp {

// Multiplies the recurrent hidden-to-hidden kernels (Wh1 and Wh2, all gates,
// all layers) by `factor`; everything else untouched.
drc::WeightSet steer_weights(const drc::WeightSet& weights, double factor);

}  // namespace interp

#endif  // INTERP_STEER_HPP
