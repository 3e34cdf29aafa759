#include "ianet/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ianet/errors.hpp"
#include "ianet/executor.hpp"
#include "ianet/wire.hpp"

namespace ianet {

void Scenario::validate() const {
    if (nodes.size() < 2) throw ConfigError("scenario '" + name + "': need at least client and server");
    if (links.size() + 1 != nodes.size())
        throw ConfigError("scenario '" + name + "': expected " + std::to_string(nodes.size() - 1) +
                          " links, got " + std::to_string(links.size()));
    for (const LinkSpec& l : links) {
        if (l.bandwidth_bps <= 0) throw ConfigError("scenario '" + name + "': bandwidth must be > 0");
        if (l.prop_delay_s < 0) throw ConfigError("scenario '" + name + "': negative propagation delay");
    }
    for (const NodeSpec& n : nodes) {
        if (n.compute_rate <= 0)
            throw ConfigError("scenario '" + name + "': node '" + n.id + "' compute_rate must be > 0");
        if (n.cf_io_overhead_s < 0 || n.per_packet_overhead_s < 0)
            throw ConfigError("scenario '" + name + "': node '" + n.id + "' negative overhead");
    }
    if (packetization.mtu_payload == 0)
        throw ConfigError("scenario '" + name + "': mtu_payload must be > 0");
    if (repetitions < 1) throw ConfigError("scenario '" + name + "': repetitions must be >= 1");
    if (mode == Mode::CF && !plan.has_value())
        throw ConfigError("scenario '" + name + "': CF mode requires a partition plan");
    pipeline.validate();
}

namespace {

struct Segment {
    double duration = 0.0; ///< transmission + queueing + propagation for the whole message
};

/// Payload sizes of a message; a message always occupies at least one packet.
std::vector<std::uint64_t> packetize(std::uint64_t payload_bytes, const PacketizationSpec& pkt) {
    std::vector<std::uint64_t> sizes;
    if (payload_bytes == 0) {
        sizes.push_back(0);
        return sizes;
    }
    std::uint64_t left = payload_bytes;
    while (left > 0) {
        const std::uint64_t take = std::min<std::uint64_t>(left, pkt.mtu_payload);
        sizes.push_back(take);
        left -= take;
    }
    return sizes;
}

/**
 * Moves one message from nodes[from] to nodes[to] across the links between
 * them, FIFO per link, cut-through at intermediate (non-hosting) nodes:
 * a switch starts re-transmitting a packet as its bits arrive and can never
 * finish before the last bit has arrived. Returns the arrival time of the
 * final packet at `to` and tallies per-link usage.
 */
double transport_message(const Scenario& sc, std::size_t from, std::size_t to,
                         std::uint64_t payload_bytes, double t0, std::vector<LinkUsage>& usage) {
    const auto packets = packetize(payload_bytes, sc.packetization);

    // link_free[j]: when link j finished its previous packet
    std::vector<double> link_free(sc.links.size(), 0.0);
    double last_arrival = t0;

    std::vector<double> start(sc.links.size(), 0.0);
    std::vector<double> finish(sc.links.size(), 0.0);
    for (std::size_t p = 0; p < packets.size(); ++p) {
        const std::uint64_t wire_bytes = packets[p] + sc.packetization.header_bytes;
        for (std::size_t j = from; j < to; ++j) {
            const double tx = static_cast<double>(wire_bytes) * 8.0 / sc.links[j].bandwidth_bps;
            const double o = sc.nodes[j].per_packet_overhead_s;
            if (j == from) {
                const double s = std::max(t0, link_free[j]);
                start[j] = s;
                finish[j] = s + o + tx;
            } else {
                const double first_bit = start[j - 1] + sc.links[j - 1].prop_delay_s;
                const double last_bit = finish[j - 1] + sc.links[j - 1].prop_delay_s;
                const double s = std::max(first_bit + o, link_free[j]);
                start[j] = s;
                finish[j] = std::max(s + tx, last_bit + o);
            }
            link_free[j] = finish[j];
            usage[j].bytes += wire_bytes;
            usage[j].packets += 1;
        }
        last_arrival = finish[to - 1] + sc.links[to - 1].prop_delay_s;
    }
    return last_arrival;
}

std::uint64_t message_payload_bytes(const PipelineSpec& pipeline, const TensorShape& shape) {
    return 8 + static_cast<std::uint64_t>(pipeline.element_bytes) * shape.elements();
}

std::size_t node_index(const Scenario& sc, const std::string& id) {
    for (std::size_t i = 0; i < sc.nodes.size(); ++i)
        if (sc.nodes[i].id == id) return i;
    throw PlanChainMismatch("plan places a VNF on unknown node '" + id + "'");
}

/// Checks interval coverage and path-ordered placements; returns host indices.
std::vector<std::size_t> resolve_plan(const Scenario& sc, const PartitionPlan& plan) {
    if (plan.vnfs.empty()) throw PlanChainMismatch("plan has no VNFs");
    if (plan.vnfs.size() != plan.placements.size())
        throw PlanChainMismatch("plan placements do not match its VNFs");

    std::size_t expect = 0;
    for (const BlockInterval& iv : plan.vnfs) {
        if (iv.first != expect || iv.last < iv.first)
            throw PlanChainMismatch("plan intervals are not contiguous and ordered");
        expect = iv.last + 1;
    }
    if (expect != sc.pipeline.blocks.size())
        throw PlanChainMismatch("plan does not cover the pipeline's " +
                                std::to_string(sc.pipeline.blocks.size()) + " blocks");

    std::vector<std::size_t> hosts;
    std::size_t prev = 0;
    for (const std::string& id : plan.placements) {
        const std::size_t idx = node_index(sc, id);
        if (idx < prev) throw PlanChainMismatch("plan placements violate path order");
        prev = idx;
        hosts.push_back(idx);
    }
    return hosts;
}

/// The per-link bytes a store-and-forward run offers (identical on every link).
std::uint64_t sf_link_bytes(const Scenario& sc, std::uint64_t observation_bytes) {
    std::uint64_t total = 0;
    for (std::uint64_t payload : packetize(observation_bytes, sc.packetization))
        total += payload + sc.packetization.header_bytes;
    return total;
}

struct TimedRun {
    double t_p = 0;
    double t_t = 0;
    std::vector<LinkUsage> usage;
};

/// Timing core shared by simulate and run_batch; never touches tensor data.
TimedRun run_timing(const Scenario& sc, const std::vector<double>& compute_rate,
                    const std::vector<double>& io_overhead) {
    const auto shapes = infer_shape(sc.pipeline, sc.m);
    const auto costs = count_costs(sc.pipeline, sc.m);
    const TensorShape input_shape{sc.pipeline.input_channels, sc.m};
    const std::uint64_t observation_bytes =
        sc.input_bytes_override.value_or(message_payload_bytes(sc.pipeline, input_shape));

    TimedRun run;
    run.usage.assign(sc.links.size(), {});
    const std::size_t server = sc.nodes.size() - 1;
    double clock = 0.0;

    if (sc.mode == Mode::SF) {
        const double arrival = transport_message(sc, 0, server, observation_bytes, clock, run.usage);
        run.t_t += arrival - clock;
        clock = arrival;
        const double dt = static_cast<double>(costs.total.macs) / compute_rate[server];
        run.t_p += dt;
        return run;
    }

    const auto hosts = resolve_plan(sc, *sc.plan);
    std::size_t at = 0;
    std::uint64_t carried = observation_bytes;
    for (std::size_t v = 0; v < sc.plan->vnfs.size(); ++v) {
        const std::size_t host = hosts[v];
        if (host != at) {
            const double arrival = transport_message(sc, at, host, carried, clock, run.usage);
            run.t_t += arrival - clock;
            clock = arrival;
            at = host;
        }
        std::uint64_t vnf_macs = 0;
        for (std::size_t b = sc.plan->vnfs[v].first; b <= sc.plan->vnfs[v].last; ++b)
            vnf_macs += costs.per_block[b].macs;
        const double dt = static_cast<double>(vnf_macs) / compute_rate[host] + io_overhead[host];
        run.t_p += dt;
        clock += dt;
        carried = message_payload_bytes(sc.pipeline, shapes[sc.plan->vnfs[v].last]);
    }
    if (at != server) {
        const double arrival = transport_message(sc, at, server, carried, clock, run.usage);
        run.t_t += arrival - clock;
        clock = arrival;
    }
    return run;
}

std::vector<double> theoretical_link_rates(const Scenario& sc) {
    std::vector<double> rates(sc.links.size(), 1.0);
    if (sc.mode == Mode::SF || !sc.plan.has_value()) return rates;

    const auto hosts = resolve_plan(sc, *sc.plan);
    double r = 1.0;
    std::size_t v = 0;
    for (std::size_t link = 0; link < sc.links.size(); ++link) {
        // apply every VNF hosted at the transmitting node of this link
        while (v < hosts.size() && hosts[v] == link) {
            r = sc.plan->theoretical_rates[v].to_double();
            ++v;
        }
        rates[link] = r;
    }
    return rates;
}

Tensor make_observation(std::int64_t channels, std::int64_t m, std::uint64_t seed) {
    std::mt19937_64 engine(seed ^ 0x9e3779b97f4a7c15ull);
    Tensor t(channels, m);
    for (float& v : t.data) {
        const double unit = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        v = static_cast<float>(2.0 * unit - 1.0);
    }
    return t;
}

/// Executes the pipeline the way the scenario deploys it. In CF the tensor
/// crosses a serialize/deserialize boundary at every VNF edge, exactly as it
/// would on the wire.
std::string deployed_feature_digest(const Scenario& sc) {
    const WeightSet weights = make_weights(sc.pipeline, sc.seed);
    Tensor cur = make_observation(sc.pipeline.input_channels, sc.m, sc.seed);
    if (sc.mode == Mode::SF) {
        cur = run_pipeline(sc.pipeline, weights, cur);
    } else {
        for (const BlockInterval& iv : sc.plan->vnfs) {
            cur = run_pipeline(sc.pipeline, weights, cur, iv.first, iv.last);
            cur = deserialize(serialize(cur));
        }
    }
    return tensor_digest(cur);
}

Percentiles summarize(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const auto rank = [&](double q) {
        const std::size_t n = values.size();
        std::size_t k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
        if (k == 0) k = 1;
        if (k > n) k = n;
        return values[k - 1];
    };
    return Percentiles{rank(0.05), rank(0.25), rank(0.50), rank(0.75), rank(0.95)};
}

} // namespace

LatencyReport simulate(const Scenario& scenario) {
    scenario.validate();

    std::vector<double> rates, ios;
    for (const NodeSpec& n : scenario.nodes) {
        rates.push_back(n.compute_rate);
        ios.push_back(n.cf_io_overhead_s);
    }
    const TimedRun run = run_timing(scenario, rates, ios);

    LatencyReport report;
    report.t_p = run.t_p;
    report.t_t = run.t_t;
    report.t_s = run.t_p + run.t_t;
    report.links = run.usage;
    report.theoretical_rates = theoretical_link_rates(scenario);

    const TensorShape input_shape{scenario.pipeline.input_channels, scenario.m};
    const std::uint64_t observation_bytes = scenario.input_bytes_override.value_or(
        message_payload_bytes(scenario.pipeline, input_shape));
    report.sf_baseline_bytes = sf_link_bytes(scenario, observation_bytes);

    if (scenario.compute_features) report.feature_digest = deployed_feature_digest(scenario);
    return report;
}

std::vector<double> measured_rates(const LatencyReport& report) {
    if (report.sf_baseline_bytes == 0)
        throw MissingBaseline("report carries no store-and-forward baseline bytes");
    std::vector<double> rates;
    rates.reserve(report.links.size());
    for (const LinkUsage& u : report.links)
        rates.push_back(static_cast<double>(u.bytes) /
                        static_cast<double>(report.sf_baseline_bytes));
    return rates;
}

BatchResult run_batch(const Scenario& scenario, int n, const JitterSpec& jitter) {
    if (n < 1) throw ConfigError("run_batch: need at least one repetition");

    BatchResult result;
    result.base = simulate(scenario);

    std::mt19937_64 engine(jitter.seed);
    const auto uniform = [&engine]() {
        return 2.0 * (static_cast<double>(engine() >> 11) * 0x1.0p-53) - 1.0;
    };

    std::vector<double> tp, tt, ts;
    for (int rep = 0; rep < n; ++rep) {
        std::vector<double> rates, ios;
        for (const NodeSpec& node : scenario.nodes) {
            double rate = node.compute_rate;
            double io = node.cf_io_overhead_s;
            if (jitter.compute_rate_spread > 0.0)
                rate *= 1.0 + jitter.compute_rate_spread * uniform();
            if (jitter.io_overhead_spread > 0.0)
                io *= 1.0 + jitter.io_overhead_spread * uniform();
            rates.push_back(rate);
            ios.push_back(io);
        }
        const TimedRun run = run_timing(scenario, rates, ios);
        result.runs.push_back({run.t_p, run.t_t, run.t_p + run.t_t});
        tp.push_back(run.t_p);
        tt.push_back(run.t_t);
        ts.push_back(run.t_p + run.t_t);
    }
    result.t_p = summarize(std::move(tp));
    result.t_t = summarize(std::move(tt));
    result.t_s = summarize(std::move(ts));
    return result;
}

BatchResult run_batch(const Scenario& scenario) {
    return run_batch(scenario, scenario.repetitions, scenario.jitter);
}

} // namespace ianet
