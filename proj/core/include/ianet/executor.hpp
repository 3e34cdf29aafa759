#pragma once

#include <cstdint>
#include <vector>

#include "ianet/pipeline.hpp"
#include "ianet/tensor.hpp"

namespace ianet {

/**
 * Synthesized weights for one pipeline, fully determined by (spec, seed).
 *
 * Array order within a block follows detail::parameter_arrays, so the total
 * scalar count always equals the CostReport parameter total.
 */
struct WeightSet {
    std::uint64_t seed = 0;
    struct BlockWeights {
        std::vector<std::vector<float>> arrays;
    };
    std::vector<BlockWeights> blocks;

    std::uint64_t scalar_count() const;
};

/// Deterministic pseudo-random weights, scale 1/sqrt(fan_in); identical across
/// platforms for a fixed seed.
WeightSet make_weights(const PipelineSpec& spec, std::uint64_t seed);

/// Forward pass of one block. Throws ShapeMismatch when the input does not
/// match the block's expected shape.
Tensor run_block(const BlockSpec& block, const WeightSet::BlockWeights& weights,
                 const Tensor& input);

/// Sequential composition of run_block over the inclusive block range [first, last].
Tensor run_pipeline(const PipelineSpec& spec, const WeightSet& weights, const Tensor& input,
                    std::size_t first, std::size_t last);

/// Whole-pipeline convenience overload.
Tensor run_pipeline(const PipelineSpec& spec, const WeightSet& weights, const Tensor& input);

/// Forward pass keeping every block's output (for digests and split audits).
std::vector<Tensor> run_pipeline_trace(const PipelineSpec& spec, const WeightSet& weights,
                                       const Tensor& input);

} // namespace ianet
