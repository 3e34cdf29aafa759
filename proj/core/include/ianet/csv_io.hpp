#pragma once

#include <string>
#include <vector>

#include "ianet/netsim.hpp"
#include "ianet/pipeline.hpp"
#include "ianet/scoring.hpp"
#include "ianet/tensor.hpp"

namespace ianet {

/// Per-machine labeled score lists, in first-appearance order.
struct LabeledScoreSet {
    std::vector<std::string> machines;
    std::vector<std::vector<LabeledScore>> samples;
};

/// Parses "machine,score,label" rows (header required, label in {normal, anomalous}).
LabeledScoreSet parse_labeled_scores_csv(const std::string& text);
std::string labeled_scores_to_csv(const LabeledScoreSet& set);

/// Per-block filter-rate table: block,name,channels,frames,rate,rate_decimal.
std::string rates_csv(const PipelineSpec& spec, std::int64_t m);

/// Per-run latency table: run,t_p,t_t,t_s.
std::string runs_csv(const BatchResult& batch);

/// Per-link byte table: link,from,to,bytes,packets,measured_rate,theoretical_rate.
std::string links_csv(const Scenario& scenario, const LatencyReport& report);

/// Feature matrix, one row per machine.
std::string features_csv(const Tensor& features);

} // namespace ianet
