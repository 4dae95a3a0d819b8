#ifndef INTERP_ACTION_PROBE_HPP
#define INTERP_ACTION_PROBE_HPP

#include "drc/net.hpp"
#include "interp/features.hpp"

namespace interp {

struct ProbeSample {
    std::vector<double> features;  // mean-pooled channel activations
    int action = 0;
};

struct ProbeTraining {
    drc::Probe probe;
    double train_accuracy = 0.0;
    double heldout_accuracy = 0.0;
    int iterations = 0;
};

// Multinomial logistic regression by gradient descent; stops when the
// relative loss change drops below 1e-6 or after 10000 iterations. The last
// `heldout_fraction` of the samples is kept out of training.
ProbeTraining train_action_probe(const std::vector<ProbeSample>& samples,
                                 double heldout_fraction = 0.2, double lr = 0.5,
                                 int max_iters = 10000);

// Mean-pooled plan-grid features matching probe_readout's aggregation.
ProbeSample probe_sample_from_grid(const planner::PlanGrid& grid, soko::Action action);

int probe_predict(const drc::Probe& probe, const std::vector<double>& features);

}  // namespace interp

#endif  // INTERP_ACTION_PROBE_HPP
