#include "ianet/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ianet/errors.hpp"

namespace ianet {

std::vector<double> anomaly_score(const Tensor& features, const Tensor& reference,
                                  DistanceMetric metric) {
    if (features.shape != reference.shape)
        throw DimensionMismatch("anomaly_score: feature and reference shapes differ");

    const std::int64_t rows = features.shape.channels;
    const std::int64_t cols = features.shape.frames;
    std::vector<double> scores;
    scores.reserve(static_cast<std::size_t>(rows));
    for (std::int64_t r = 0; r < rows; ++r) {
        if (metric == DistanceMetric::Euclidean) {
            double acc = 0.0;
            for (std::int64_t c = 0; c < cols; ++c) {
                const double d = static_cast<double>(features.at(r, c)) - reference.at(r, c);
                acc += d * d;
            }
            scores.push_back(std::sqrt(acc));
        } else {
            double dot = 0.0, na = 0.0, nb = 0.0;
            for (std::int64_t c = 0; c < cols; ++c) {
                const double a = features.at(r, c);
                const double b = reference.at(r, c);
                dot += a * b;
                na += a * a;
                nb += b * b;
            }
            const double denom = std::sqrt(na) * std::sqrt(nb);
            scores.push_back(denom == 0.0 ? 0.0 : 1.0 - dot / denom);
        }
    }
    return scores;
}

std::vector<bool> threshold_decision(const std::vector<double>& scores, double threshold) {
    std::vector<bool> decisions;
    decisions.reserve(scores.size());
    for (double s : scores) decisions.push_back(s > threshold);
    return decisions;
}

double auc(std::span<const LabeledScore> samples) {
    std::size_t n_pos = 0, n_neg = 0;
    for (const LabeledScore& s : samples) (s.anomalous ? n_pos : n_neg) += 1;
    if (n_pos == 0 || n_neg == 0)
        throw DegenerateLabels("auc: need at least one sample of each label");

    // Midrank formulation: AUC = (rank-sum of anomalous - n_pos(n_pos+1)/2) / (n_pos*n_neg).
    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples[a].score < samples[b].score;
    });

    double rank_sum = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && samples[order[j + 1]].score == samples[order[i]].score) ++j;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k)
            if (samples[order[k]].anomalous) rank_sum += midrank;
        i = j + 1;
    }
    const double np = static_cast<double>(n_pos);
    return (rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

double mauc(const std::vector<std::vector<LabeledScore>>& per_machine) {
    if (per_machine.empty()) throw DegenerateLabels("mauc: no machine lists");
    double sum = 0.0;
    for (const auto& machine : per_machine)
        sum += auc(std::span<const LabeledScore>(machine.data(), machine.size()));
    return sum / static_cast<double>(per_machine.size());
}

namespace {

class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; } // [0, 1)
    double symmetric() { return 2.0 * unit() - 1.0; }                          // [-1, 1)
    /// Standard normal via Box-Muller on the portable unit stream.
    double gaussian() {
        double u1 = unit();
        while (u1 <= 0.0) u1 = unit();
        const double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace

Mixture synth_mixture(int n_sources, std::int64_t m, std::uint64_t seed,
                      const std::vector<double>* weights) {
    if (n_sources < 1 || m < 1)
        throw ConfigError("synth_mixture: need n_sources >= 1 and m >= 1");
    if (weights && static_cast<int>(weights->size()) != n_sources)
        throw DimensionMismatch("synth_mixture: weight override size differs from n_sources");

    SeededUniform rng(seed);
    Mixture mix;
    mix.sources = Tensor(n_sources, m);

    // Each source: a small bank of seeded sinusoids, band-limited by construction.
    constexpr int kTones = 4;
    constexpr double kSampleRate = 16000.0;
    for (int s = 0; s < n_sources; ++s) {
        double freq[kTones], phase[kTones], amp[kTones];
        for (int t = 0; t < kTones; ++t) {
            freq[t] = 50.0 + rng.unit() * 1950.0;
            phase[t] = rng.unit() * 2.0 * std::numbers::pi;
            amp[t] = 0.25 + 0.75 * rng.unit();
        }
        for (std::int64_t i = 0; i < m; ++i) {
            double v = 0.0;
            for (int t = 0; t < kTones; ++t)
                v += amp[t] * std::sin(2.0 * std::numbers::pi * freq[t] *
                                           (static_cast<double>(i) / kSampleRate) +
                                       phase[t]);
            mix.sources.at(s, i) = static_cast<float>(v / kTones);
        }
    }

    mix.weights.resize(n_sources);
    for (int s = 0; s < n_sources; ++s) mix.weights[s] = rng.gaussian();
    if (weights) mix.weights = *weights;

    mix.observation = Tensor(1, m);
    for (std::int64_t i = 0; i < m; ++i) {
        double v = 0.0;
        for (int s = 0; s < n_sources; ++s) v += mix.weights[s] * mix.sources.at(s, i);
        mix.observation.at(0, i) = static_cast<float>(v);
    }
    return mix;
}

} // namespace ianet
