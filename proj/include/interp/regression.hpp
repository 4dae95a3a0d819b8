#ifndef INTERP_REGRESSION_HPP
#define INTERP_REGRESSION_HPP

#include <functional>
#include <optional>

#include "interp/features.hpp"

namespace interp {

// Target extractor: activation value of one channel at (episode, step,
// square). Used so planted synthetic channels and recorded planner channels
// share the regression machinery.
using ChannelReader = std::function<double(const planner::Episode&, int step, soko::Pos)>;

ChannelReader grid_channel_reader(int channel);

struct OffsetRow {
    int channel = 0;
    int dr = 0, dc = 0;
    double correlation = 0.0;
    bool degenerate = false;  // constant channel: offset (0,0), correlation 0
};
struct OffsetReport {
    std::vector<OffsetRow> rows;
};

struct CorrelationRow {
    int channel = 0;
    double full_correlation = 0.0;
    double base_correlation = 0.0;
    bool degenerate = false;
};
struct CorrelationReport {
    std::vector<CorrelationRow> rows;
};

// Least squares of channel activation on the 17 features shifted over
// {-2..2}^2, ridge 1e-8; reports the argmin-loss offset per channel.
OffsetReport offset_regression(const Recordings& recordings,
                               const std::vector<int>& channels);
OffsetRow offset_regression_channel(const Recordings& recordings, int channel,
                                    const ChannelReader& reader);

// Unshifted regression: full 17-feature correlation and base-only (5
// features) correlation per channel.
CorrelationReport label_regression(const Recordings& recordings,
                                   const std::vector<int>& channels);
CorrelationRow label_regression_channel(const Recordings& recordings, int channel,
                                        const ChannelReader& reader);

// Solves (X'X + ridge*I) beta = X'y; exposed for reuse and testing.
std::vector<double> solve_normal_equations(std::vector<double> xtx,
                                           std::vector<double> xty, int dim,
                                           double ridge = 1e-8);

}  // namespace interp

#endif  // INTERP_REGRESSION_HPP
