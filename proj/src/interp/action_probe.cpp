#include "interp/action_probe.hpp"

#include <cmath>
#include <stdexcept>

namespace interp {

namespace {

std::vector<double> softmax(const std::vector<double>& z) {
    double mx = z[0];
    for (double v : z) mx = std::max(mx, v);
    std::vector<double> p(z.size());
    double sum = 0.0;
    for (size_t i = 0; i < z.size(); ++i) {
        p[i] = std::exp(z[i] - mx);
        sum += p[i];
    }
    for (double& v : p) v /= sum;
    return p;
}

std::vector<double> logits_of(const drc::Probe& probe, const std::vector<double>& x) {
    std::vector<double> z(4, 0.0);
    for (int a = 0; a < 4; ++a) {
        double acc = probe.bias[static_cast<size_t>(a)];
        for (int k = 0; k < probe.channels; ++k)
            acc += probe.weight[static_cast<size_t>(a) * probe.channels + k] *
                   x[static_cast<size_t>(k)];
        z[static_cast<size_t>(a)] = acc;
    }
    return z;
}

}  // namespace

int probe_predict(const drc::Probe& probe, const std::vector<double>& features) {
    auto z = logits_of(probe, features);
    int best = 0;
    for (int a = 1; a < 4; ++a)
        if (z[static_cast<size_t>(a)] > z[static_cast<size_t>(best)]) best = a;
    return best;
}

ProbeSample probe_sample_from_grid(const planner::PlanGrid& grid, soko::Action action) {
    ProbeSample s;
    int C = grid.acts.channels;
    s.features.assign(static_cast<size_t>(C), 0.0);
    double cells = static_cast<double>(grid.height() * grid.width());
    for (int r = 0; r < grid.height(); ++r)
        for (int c = 0; c < grid.width(); ++c)
            for (int ch = 0; ch < C; ++ch)
                s.features[static_cast<size_t>(ch)] += grid.acts.at(r, c, ch) / cells;
    s.action = static_cast<int>(action);
    return s;
}

ProbeTraining train_action_probe(const std::vector<ProbeSample>& samples,
                                 double heldout_fraction, double lr, int max_iters) {
    if (samples.size() < 10)
        throw std::invalid_argument("train_action_probe: too few samples");
    size_t dim = samples.front().features.size();
    for (const auto& s : samples) {
        if (s.features.size() != dim)
            throw std::invalid_argument("train_action_probe: inconsistent feature size");
        for (double v : s.features)
            if (!std::isfinite(v))
                throw std::invalid_argument("train_action_probe: non-finite feature");
    }

    size_t n_train = samples.size() -
                     static_cast<size_t>(heldout_fraction * static_cast<double>(samples.size()));
    n_train = std::max<size_t>(1, std::min(samples.size(), n_train));

    ProbeTraining result;
    result.probe.channels = static_cast<int>(dim);
    result.probe.weight.assign(4 * dim, 0.0);
    result.probe.bias.assign(4, 0.0);

    double prev_loss = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iters; ++it) {
        std::vector<double> grad_w(4 * dim, 0.0), grad_b(4, 0.0);
        double loss = 0.0;
        for (size_t s = 0; s < n_train; ++s) {
            auto z = logits_of(result.probe, samples[s].features);
            auto p = softmax(z);
            loss -= std::log(std::max(p[static_cast<size_t>(samples[s].action)], 1e-12));
            for (int a = 0; a < 4; ++a) {
                double err = p[static_cast<size_t>(a)] -
                             (a == samples[s].action ? 1.0 : 0.0);
                grad_b[static_cast<size_t>(a)] += err;
                for (size_t k = 0; k < dim; ++k)
                    grad_w[static_cast<size_t>(a) * dim + k] += err * samples[s].features[k];
            }
        }
        loss /= static_cast<double>(n_train);
        double scale = lr / static_cast<double>(n_train);
        for (size_t k = 0; k < grad_w.size(); ++k) result.probe.weight[k] -= scale * grad_w[k];
        for (size_t a = 0; a < 4; ++a) result.probe.bias[a] -= scale * grad_b[a];
        result.iterations = it + 1;
        if (std::fabs(prev_loss - loss) < 1e-6 * std::max(1.0, std::fabs(prev_loss))) break;
        prev_loss = loss;
    }

    size_t correct = 0;
    for (size_t s = 0; s < n_train; ++s)
        if (probe_predict(result.probe, samples[s].features) == samples[s].action) ++correct;
    result.train_accuracy = static_cast<double>(correct) / static_cast<double>(n_train);

    size_t held = samples.size() - n_train;
    if (held > 0) {
        correct = 0;
        for (size_t s = n_train; s < samples.size(); ++s)
            if (probe_predict(result.probe, samples[s].features) == samples[s].action)
                ++correct;
        result.heldout_accuracy = static_cast<double>(correct) / static_cast<double>(held);
    } else {
        result.heldout_accuracy = result.train_accuracy;
    }
    return result;
}

}  // namespace interp
