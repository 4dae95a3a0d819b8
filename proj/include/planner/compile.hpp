#ifndef PLANNER_COMPILE_HPP
#define PLANNER_COMPILE_HPP

#include "drc/net.hpp"
#include "planner/engine.hpp"

namespace planner {

enum class CompileScope { ExtensionStoppingWta };

// Compiles the plan extension, stopping and winner-takes-all mechanisms into
// a DRC(1,1) weight set over the channel map's layout:
//   - the encoder emits affine color scores (dark / blue / green) that the
//     first tick sharpens into +-0.75 basis channels,
//   - dedicated spare channels rectify seed predicates (legal pushes at
//     boxes, squares one against each direction from uncovered targets),
//   - path channels extend chains through tanh(i)*sigma(j) with the j-gate
//     carrying cross-direction inhibition and o carrying stop masks.
// Up path channels are stored one square down-right; their kernels carry the
// compensating tap shifts.
//
// Throws std::domain_error when the gains cannot be realized inside the
// saturating nonlinearities (documented bounds: chain factor in (0.5, 1.02],
// wta_inhibit in [0.3, 0.99], tpe < lpe).
drc::WeightSet compile_to_weights(const ChannelMap& map, const MechanismGains& gains,
                                  CompileScope scope = CompileScope::ExtensionStoppingWta);

// decode_plan semantics applied to a hidden-state tensor (offset-aware).
Plan decode_hidden(const drc::Tensor3& h, const ChannelMap& map, double theta);

// Convenience: run the compiled net on a level for `ticks` ticks from a zero
// state and return the final hidden state.
drc::Tensor3 run_compiled(const drc::WeightSet& weights, const Level& level, int ticks);

}  // namespace planner

#endif  // PLANNER_COMPILE_HPP
