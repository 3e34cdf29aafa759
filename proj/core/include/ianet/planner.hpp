#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ianet/pipeline.hpp"

namespace ianet {

/// Inclusive range of block indices forming one VNF.
struct BlockInterval {
    std::size_t first = 0;
    std::size_t last = 0;

    friend bool operator==(const BlockInterval&, const BlockInterval&) = default;
};

/**
 * Assignment of contiguous block intervals (VNFs) to chain nodes.
 * Intervals are disjoint, in order, and cover every block; placements follow
 * path order. theoretical_rates[i] is the filter rate crossing the link after
 * VNF i (element count leaving VNF i divided by the system input count).
 */
struct PartitionPlan {
    std::vector<BlockInterval> vnfs;
    std::vector<std::string> placements;
    std::vector<Ratio> theoretical_rates;
};

/**
 * Strict local minima of a rate sequence, interior points only:
 * indices i with rates[i-1] > rates[i] < rates[i+1]. Plateaus never qualify.
 */
std::vector<std::size_t> concave_points(const std::vector<Ratio>& rates);

/**
 * Split the pipeline after each concave point of its filter-rate curve and
 * place the resulting VNFs along `chain` (processing-capable nodes in path
 * order). The trailing VNF always lands on the last chain node; when concave
 * points outnumber nodes, the earliest minima win and the rest merge into the
 * final VNF. Throws EmptyChain when the chain is empty.
 */
PartitionPlan make_plan(const PipelineSpec& spec, std::int64_t m,
                        const std::vector<std::string>& chain);

} // namespace ianet
