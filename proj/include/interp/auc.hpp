#ifndef INTERP_AUC_HPP
#define INTERP_AUC_HPP

#include "interp/features.hpp"

namespace interp {

struct AucRow {
    int channel = 0;
    int direction = 0;  // Action index the channel predicts
    int horizon = 0;
    double auc = 0.0;
    double polarity = 1.0;  // sign correction estimated on the first half
    bool defined = true;    // false when a horizon has single-class labels
    size_t positives = 0;
    size_t negatives = 0;
};

struct AucReport {
    std::vector<AucRow> rows;
};

// AUC of sign-corrected channel activation at (step, square) predicting
// "a box moves in the channel's direction from that square within the next
// k steps" (short-term variant) or "after k steps" (long-term variant).
AucReport auc_probe(const Recordings& recordings, const std::vector<int>& horizons,
                    bool long_term = false);

// Rank-based AUC with tie handling; exposed for the statistical tests.
double auc_score(const std::vector<double>& scores, const std::vector<int>& labels);

}  // namespace interp

#endif  // INTERP_AUC_HPP
