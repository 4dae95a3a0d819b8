#include "interp/regression.hpp"

#include <cmath>
#include <stdexcept>

namespace interp {

namespace {

constexpr int kDim = kFeatures + 1;  // + intercept

struct Accumulator {
    std::vector<double> xtx;
    std::vector<double> xty;
    double yty = 0.0;
    double ysum = 0.0;
    size_t n = 0;

    Accumulator() : xtx(kDim * kDim, 0.0), xty(kDim, 0.0) {}

    void add(const FeatureVec& f, double y) {
        std::array<double, kDim> x;
        for (int i = 0; i < kFeatures; ++i) x[static_cast<size_t>(i)] = f[static_cast<size_t>(i)];
        x[kFeatures] = 1.0;
        for (int i = 0; i < kDim; ++i) {
            for (int j = i; j < kDim; ++j)
                xtx[static_cast<size_t>(i) * kDim + j] +=
                    x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)];
            xty[static_cast<size_t>(i)] += x[static_cast<size_t>(i)] * y;
        }
        yty += y * y;
        ysum += y;
        ++n;
    }

    void symmetrize() {
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < i; ++j)
                xtx[static_cast<size_t>(i) * kDim + j] =
                    xtx[static_cast<size_t>(j) * kDim + i];
    }

    // Pearson correlation between fitted values and y (sqrt of R^2)
    double correlation(const std::vector<double>& beta) const {
        double ybar = ysum / static_cast<double>(n);
        double ss_tot = yty - static_cast<double>(n) * ybar * ybar;
        if (ss_tot <= 1e-12) return 0.0;
        // SSE = y'y - 2 b'X'y + b'X'X b
        double bxy = 0.0;
        for (int i = 0; i < kDim; ++i) bxy += beta[static_cast<size_t>(i)] * xty[static_cast<size_t>(i)];
        double bxxb = 0.0;
        for (int i = 0; i < kDim; ++i) {
            double acc = 0.0;
            for (int j = 0; j < kDim; ++j)
                acc += xtx[static_cast<size_t>(i) * kDim + j] * beta[static_cast<size_t>(j)];
            bxxb += beta[static_cast<size_t>(i)] * acc;
        }
        double sse = yty - 2.0 * bxy + bxxb;
        double r2 = 1.0 - sse / ss_tot;
        return std::sqrt(std::max(0.0, r2));
    }

    bool degenerate() const {
        if (n == 0) return true;
        double ybar = ysum / static_cast<double>(n);
        return yty - static_cast<double>(n) * ybar * ybar <= 1e-12;
    }
};

}  // namespace

std::vector<double> solve_normal_equations(std::vector<double> a, std::vector<double> b,
                                           int dim, double ridge) {
    for (int i = 0; i < dim; ++i) a[static_cast<size_t>(i) * dim + i] += ridge;
    // Gaussian elimination with partial pivoting
    for (int col = 0; col < dim; ++col) {
        int pivot = col;
        for (int r = col + 1; r < dim; ++r)
            if (std::fabs(a[static_cast<size_t>(r) * dim + col]) >
                std::fabs(a[static_cast<size_t>(pivot) * dim + col]))
                pivot = r;
        if (pivot != col) {
            for (int k = 0; k < dim; ++k)
                std::swap(a[static_cast<size_t>(col) * dim + k],
                          a[static_cast<size_t>(pivot) * dim + k]);
            std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(pivot)]);
        }
        double diag = a[static_cast<size_t>(col) * dim + col];
        if (std::fabs(diag) < 1e-14) continue;
        for (int r = col + 1; r < dim; ++r) {
            double factor = a[static_cast<size_t>(r) * dim + col] / diag;
            if (factor == 0.0) continue;
            for (int k = col; k < dim; ++k)
                a[static_cast<size_t>(r) * dim + k] -=
                    factor * a[static_cast<size_t>(col) * dim + k];
            b[static_cast<size_t>(r)] -= factor * b[static_cast<size_t>(col)];
        }
    }
    std::vector<double> x(static_cast<size_t>(dim), 0.0);
    for (int r = dim - 1; r >= 0; --r) {
        double acc = b[static_cast<size_t>(r)];
        for (int k = r + 1; k < dim; ++k)
            acc -= a[static_cast<size_t>(r) * dim + k] * x[static_cast<size_t>(k)];
        double diag = a[static_cast<size_t>(r) * dim + r];
        x[static_cast<size_t>(r)] = std::fabs(diag) < 1e-14 ? 0.0 : acc / diag;
    }
    return x;
}

ChannelReader grid_channel_reader(int channel) {
    return [channel](const planner::Episode& ep, int step, soko::Pos p) {
        return ep.grids[static_cast<size_t>(step)].get(channel, p);
    };
}

namespace {

Accumulator accumulate(const Recordings& rec, const ChannelReader& reader, soko::Pos shift) {
    Accumulator acc;
    for (size_t e = 0; e < rec.episodes.size(); ++e) {
        const auto& ep = rec.episodes[e];
        const auto& labels = rec.labels[e];
        int steps = static_cast<int>(ep.grids.size());
        for (int t = 0; t < steps; ++t) {
            const soko::Level& level = ep.levels[static_cast<size_t>(t)];
            for (int r = 0; r < level.height; ++r)
                for (int c = 0; c < level.width; ++c) {
                    soko::Pos p{r, c};
                    acc.add(features_at(ep, labels, t, p, shift), reader(ep, t, p));
                }
        }
    }
    acc.symmetrize();
    return acc;
}

}  // namespace

OffsetRow offset_regression_channel(const Recordings& rec, int channel,
                                    const ChannelReader& reader) {
    OffsetRow row;
    row.channel = channel;
    double best_sse = std::numeric_limits<double>::infinity();
    bool any = false;
    for (int dr = -2; dr <= 2; ++dr)
        for (int dc = -2; dc <= 2; ++dc) {
            Accumulator acc = accumulate(rec, reader, {dr, dc});
            if (acc.degenerate()) {
                if (!any) {
                    row.degenerate = true;
                    row.dr = 0;
                    row.dc = 0;
                    row.correlation = 0.0;
                }
                continue;
            }
            auto beta = solve_normal_equations(acc.xtx, acc.xty, kDim);
            double corr = acc.correlation(beta);
            // loss = SSE; equivalently maximize R^2 given shared y
            double sse_proxy = -corr;
            if (sse_proxy < best_sse) {
                best_sse = sse_proxy;
                row.dr = dr;
                row.dc = dc;
                row.correlation = corr;
                row.degenerate = false;
                any = true;
            }
        }
    return row;
}

OffsetReport offset_regression(const Recordings& rec, const std::vector<int>& channels) {
    if (rec.episodes.size() < 1)
        throw std::invalid_argument("offset_regression needs recorded episodes");
    OffsetReport report;
    for (int ch : channels)
        report.rows.push_back(offset_regression_channel(rec, ch, grid_channel_reader(ch)));
    return report;
}

CorrelationRow label_regression_channel(const Recordings& rec, int channel,
                                        const ChannelReader& reader) {
    CorrelationRow row;
    row.channel = channel;
    Accumulator acc = accumulate(rec, reader, {0, 0});
    if (acc.degenerate()) {
        row.degenerate = true;
        return row;
    }
    auto beta = solve_normal_equations(acc.xtx, acc.xty, kDim);
    row.full_correlation = acc.correlation(beta);

    // base-only: zero out the future-feature rows/columns
    std::vector<double> xtx = acc.xtx;
    std::vector<double> xty = acc.xty;
    for (int i = kBaseFeatures; i < kFeatures; ++i) {
        for (int j = 0; j < kDim; ++j) {
            xtx[static_cast<size_t>(i) * kDim + j] = 0.0;
            xtx[static_cast<size_t>(j) * kDim + i] = 0.0;
        }
        xtx[static_cast<size_t>(i) * kDim + i] = 1.0;
        xty[static_cast<size_t>(i)] = 0.0;
    }
    auto beta_base = solve_normal_equations(xtx, xty, kDim);
    row.base_correlation = acc.correlation(beta_base);
    return row;
}

CorrelationReport label_regression(const Recordings& rec, const std::vector<int>& channels) {
    if (rec.episodes.size() < 1)
        throw std::invalid_argument("label_regression needs recorded episodes");
    CorrelationReport report;
    for (int ch : channels)
        report.rows.push_back(label_regression_channel(rec, ch, grid_channel_reader(ch)));
    return report;
}

}  // namespace interp
