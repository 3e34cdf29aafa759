#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ianet/tensor.hpp"

namespace ianet {

enum class DistanceMetric { Euclidean, Cosine };

/**
 * Per-machine anomaly score: distance between each feature row and the
 * corresponding reference row. Throws DimensionMismatch when shapes differ.
 */
std::vector<double> anomaly_score(const Tensor& features, const Tensor& reference,
                                  DistanceMetric metric = DistanceMetric::Euclidean);

/// true = anomalous; an object is anomalous iff its score strictly exceeds the threshold.
std::vector<bool> threshold_decision(const std::vector<double>& scores, double threshold);

struct LabeledScore {
    double score = 0.0;
    bool anomalous = false;
};

/**
 * Rank-based AUC: probability that a random anomalous score exceeds a random
 * normal one, ties counted 1/2. Throws DegenerateLabels unless both labels
 * are present.
 */
double auc(std::span<const LabeledScore> samples);

/// Unweighted mean AUC over per-machine sample lists.
double mauc(const std::vector<std::vector<LabeledScore>>& per_machine);

/// Synthetic band-limited sources mixed into a single observation.
struct Mixture {
    Tensor sources;     ///< n x m
    Tensor observation; ///< 1 x m
    std::vector<double> weights;
};

/**
 * Generates n seeded band-limited source signals and mixes them with weights
 * drawn from the standard normal distribution. Pass `weights` to override the
 * drawn mixing weights.
 */
Mixture synth_mixture(int n_sources, std::int64_t m, std::uint64_t seed,
                      const std::vector<double>* weights = nullptr);

} // namespace ianet
