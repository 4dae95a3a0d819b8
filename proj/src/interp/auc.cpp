#include "interp/auc.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace interp {

double auc_score(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size() || scores.empty())
        throw std::invalid_argument("auc_score: bad inputs");
    std::vector<size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return scores[a] < scores[b]; });

    // average ranks over ties
    std::vector<double> rank(scores.size(), 0.0);
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (size_t k = i; k <= j; ++k) rank[order[k]] = avg;
        i = j + 1;
    }
    double pos_rank_sum = 0.0;
    size_t n_pos = 0;
    for (size_t k = 0; k < labels.size(); ++k)
        if (labels[k]) {
            pos_rank_sum += rank[k];
            ++n_pos;
        }
    size_t n_neg = labels.size() - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw std::invalid_argument("auc_score: single-class labels");
    double u = pos_rank_sum - static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

AucReport auc_probe(const Recordings& rec, const std::vector<int>& horizons,
                    bool long_term) {
    if (rec.episodes.empty()) throw std::invalid_argument("auc_probe: no recordings");
    AucReport report;
    const auto& map = rec.episodes.front().grids.front().map;

    for (int d = 0; d < 4; ++d) {
        int channel = long_term ? map.box_long[static_cast<size_t>(d)]
                                : map.box_short[static_cast<size_t>(d)];
        soko::Action dir = static_cast<soko::Action>(d);
        for (int k : horizons) {
            std::vector<double> scores;
            std::vector<int> labels;
            // polarity from the first half of the episodes
            double dot = 0.0;
            size_t half = std::max<size_t>(1, rec.episodes.size() / 2);
            for (size_t e = 0; e < rec.episodes.size(); ++e) {
                const auto& ep = rec.episodes[e];
                const auto& lab = rec.labels[e];
                int steps = static_cast<int>(ep.grids.size());
                for (int t = 0; t < steps; ++t) {
                    const soko::Level& level = ep.levels[static_cast<size_t>(t)];
                    for (int r = 0; r < level.height; ++r)
                        for (int c = 0; c < level.width; ++c) {
                            soko::Pos p{r, c};
                            if (level.is_wall(p)) continue;
                            double a = ep.grids[static_cast<size_t>(t)].get(channel, p);
                            bool y;
                            if (long_term) {
                                bool later = false;
                                for (int tt = t + k; tt < lab.steps; ++tt)
                                    if (lab.box_move[static_cast<size_t>(tt)][lab.cell(p)] == dir)
                                        later = true;
                                y = later;
                            } else {
                                y = lab.box_moves_within(p, dir, t, k);
                            }
                            if (e < half) dot += (y ? 1.0 : -1.0) * a;
                            scores.push_back(a);
                            labels.push_back(y ? 1 : 0);
                        }
                }
            }
            AucRow row;
            row.channel = channel;
            row.direction = d;
            row.horizon = k;
            row.polarity = dot >= 0.0 ? 1.0 : -1.0;
            size_t n_pos = 0;
            for (int y : labels) n_pos += static_cast<size_t>(y);
            row.positives = n_pos;
            row.negatives = labels.size() - n_pos;
            if (n_pos == 0 || n_pos == labels.size()) {
                row.defined = false;
            } else {
                if (row.polarity < 0)
                    for (double& s : scores) s = -s;
                row.auc = auc_score(scores, labels);
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

}  // namespace interp
