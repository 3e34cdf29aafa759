#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ianet/pipeline.hpp"
#include "ianet/planner.hpp"

namespace ianet {

struct LinkSpec {
    double bandwidth_bps = 10e6;
    double prop_delay_s = 0.150;
};

struct NodeSpec {
    std::string id;
    double compute_rate = 8.8338432e9; ///< MAC/s; default completes the canonical pipeline in 0.1 s
    double cf_io_overhead_s = 0.0;     ///< added once per hosted VNF in CF mode
    double per_packet_overhead_s = 0.0; ///< per-packet handling cost when transmitting
};

struct PacketizationSpec {
    std::uint32_t mtu_payload = 1472; ///< UDP payload per packet
    std::uint32_t header_bytes = 28;  ///< transport + network headers per packet
};

enum class Mode { SF, CF };

/// Seeded relative perturbations applied per run in a batch.
struct JitterSpec {
    std::uint64_t seed = 0;
    double compute_rate_spread = 0.0; ///< each node's rate scaled by (1 + spread * u), u in [-1, 1)
    double io_overhead_spread = 0.0;

    bool any() const { return compute_rate_spread > 0.0 || io_overhead_spread > 0.0; }
};

/**
 * One simulation setup: a client..server chain, its links, packetization,
 * deployment mode, and the pipeline carried over it.
 */
struct Scenario {
    std::string name;
    std::vector<NodeSpec> nodes; ///< path order, client first, server last
    std::vector<LinkSpec> links; ///< links[i] connects nodes[i] -> nodes[i+1]
    PacketizationSpec packetization;
    Mode mode = Mode::SF;
    std::optional<PartitionPlan> plan; ///< required in CF mode
    PipelineSpec pipeline;
    std::int64_t m = 163840;
    std::uint64_t seed = 0;
    int repetitions = 1;
    JitterSpec jitter;
    std::optional<std::uint64_t> input_bytes_override; ///< raw observation size on the wire
    bool compute_features = true; ///< actually execute the pipeline to fingerprint the output

    void validate() const;
};

struct LinkUsage {
    std::uint64_t bytes = 0; ///< payload + per-packet headers offered to the link
    std::uint64_t packets = 0;
};

/// Latency decomposition of one simulated run. t_s is constructed as
/// t_p + t_t; the two accumulate disjoint event categories.
struct LatencyReport {
    double t_p = 0.0;
    double t_t = 0.0;
    double t_s = 0.0;
    std::vector<LinkUsage> links;
    std::vector<double> theoretical_rates; ///< per link, from the plan (1.0 in SF)
    std::uint64_t sf_baseline_bytes = 0;   ///< per-link bytes an SF run would offer
    std::string feature_digest;            ///< empty when features were not computed
};

struct Percentiles {
    double p05 = 0, p25 = 0, p50 = 0, p75 = 0, p95 = 0;
};

struct RunTimes {
    double t_p = 0, t_t = 0, t_s = 0;
};

/// A repetition batch: jitter-free detail plus per-run times and summaries.
struct BatchResult {
    LatencyReport base;
    std::vector<RunTimes> runs;
    Percentiles t_p, t_t, t_s;
};

/// Single deterministic run of the scenario (no jitter applied).
LatencyReport simulate(const Scenario& scenario);

/// Per-link byte ratio against the SF baseline, headers included.
/// Throws MissingBaseline when the report lacks the baseline byte count.
std::vector<double> measured_rates(const LatencyReport& report);

/// Repeats the scenario n times with seeded perturbations and summarizes.
BatchResult run_batch(const Scenario& scenario, int n, const JitterSpec& jitter);

/// Batch using the scenario's own repetitions and jitter fields.
BatchResult run_batch(const Scenario& scenario);

} // namespace ianet
