#include "ianet/planner.hpp"

#include "ianet/errors.hpp"

namespace ianet {

std::vector<std::size_t> concave_points(const std::vector<Ratio>& rates) {
    std::vector<std::size_t> points;
    if (rates.size() < 3) return points;
    for (std::size_t i = 1; i + 1 < rates.size(); ++i) {
        if (rates[i - 1] > rates[i] && rates[i] < rates[i + 1]) points.push_back(i);
    }
    return points;
}

PartitionPlan make_plan(const PipelineSpec& spec, std::int64_t m,
                        const std::vector<std::string>& chain) {
    if (chain.empty()) throw EmptyChain("make_plan: node chain is empty");

    const auto rates = filter_rates(spec, m);
    std::vector<std::size_t> cuts = concave_points(rates);

    // More minima than nodes: keep the earliest cuts (maximize early filtering),
    // merging the remainder into the final VNF.
    const std::size_t max_vnfs = chain.size();
    if (cuts.size() + 1 > max_vnfs) cuts.resize(max_vnfs - 1);

    PartitionPlan plan;
    std::size_t begin = 0;
    for (std::size_t cut : cuts) {
        plan.vnfs.push_back({begin, cut});
        begin = cut + 1;
    }
    if (!spec.blocks.empty()) plan.vnfs.push_back({begin, spec.blocks.size() - 1});

    const std::size_t n = plan.vnfs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool trailing = (i + 1 == n);
        plan.placements.push_back(trailing ? chain.back() : chain[i]);
        plan.theoretical_rates.push_back(rates[plan.vnfs[i].last]);
    }
    return plan;
}

} // namespace ianet
