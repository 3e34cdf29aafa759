#include "ianet/json_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

#include "ianet/errors.hpp"

namespace ianet {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_text(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError(what + ": invalid JSON");
    return j;
}

void require_keys(const json& obj, const std::string& ctx,
                  std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(ctx + ": expected an object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) { known = true; break; }
        if (!known) throw ConfigError(ctx + ": unknown key '" + item.key() + "'");
    }
}

template <typename T>
T get_field(const json& obj, const std::string& ctx, const char* key, const T* fallback = nullptr) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(ctx + ": missing key '" + key + "'");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(ctx + ": key '" + std::string(key) + "' has the wrong type");
    }
}

Ratio ratio_from_json(const json& j, const std::string& ctx) {
    if (j.is_number_integer()) return Ratio(j.get<std::int64_t>());
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer())
        return Ratio(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
    throw ConfigError(ctx + ": a ratio must be an integer or a [numerator, denominator] pair");
}

json ratio_to_json(const Ratio& r) {
    return json::array({r.num, r.den});
}

BlockKind kind_from_string(const std::string& s, const std::string& ctx) {
    if (s == "conv1d") return BlockKind::Conv1D;
    if (s == "rconv_stack") return BlockKind::RConvStack;
    if (s == "separation_head") return BlockKind::SeparationHead;
    throw ConfigError(ctx + ": unknown block kind '" + s + "'");
}

} // namespace

PipelineSpec parse_pipeline_json(const std::string& text) {
    const json j = parse_text(text, "pipeline");
    require_keys(j, "pipeline", {"input_channels", "element_bytes", "blocks"});

    PipelineSpec spec;
    const int one = 1, four = 4;
    spec.input_channels = get_field<int>(j, "pipeline", "input_channels", &one);
    spec.element_bytes = get_field<int>(j, "pipeline", "element_bytes", &four);

    if (!j.contains("blocks") || !j.at("blocks").is_array())
        throw ConfigError("pipeline: missing 'blocks' array");
    for (const json& bj : j.at("blocks")) {
        const std::string ctx = "pipeline block " + std::to_string(spec.blocks.size());
        require_keys(bj, ctx,
                     {"name", "kind", "in_channels", "out_channels", "temporal_factor", "repeat",
                      "kernel_lengths", "stride", "expansion", "feature_length"});
        BlockSpec b;
        b.id = spec.blocks.size();
        b.name = get_field<std::string>(bj, ctx, "name");
        b.kind = kind_from_string(get_field<std::string>(bj, ctx, "kind"), ctx);
        b.in_channels = get_field<int>(bj, ctx, "in_channels");
        b.out_channels = get_field<int>(bj, ctx, "out_channels");
        const int def_repeat = 1, def_stride = 1, def_expansion = 2, def_feature = 0;
        b.repeat = get_field<int>(bj, ctx, "repeat", &def_repeat);
        b.stride = get_field<int>(bj, ctx, "stride", &def_stride);
        b.expansion = get_field<int>(bj, ctx, "expansion", &def_expansion);
        b.feature_length = get_field<int>(bj, ctx, "feature_length", &def_feature);
        b.kernel_lengths = get_field<std::vector<int>>(bj, ctx, "kernel_lengths");
        b.temporal_factor = bj.contains("temporal_factor")
                                ? ratio_from_json(bj.at("temporal_factor"), ctx)
                                : Ratio(1, b.stride);
        spec.blocks.push_back(std::move(b));
    }
    spec.validate();
    return spec;
}

std::string pipeline_to_json(const PipelineSpec& spec) {
    json j;
    j["input_channels"] = spec.input_channels;
    j["element_bytes"] = spec.element_bytes;
    j["blocks"] = json::array();
    for (const BlockSpec& b : spec.blocks) {
        json bj;
        bj["name"] = b.name;
        bj["kind"] = to_string(b.kind);
        bj["in_channels"] = b.in_channels;
        bj["out_channels"] = b.out_channels;
        bj["temporal_factor"] = ratio_to_json(b.temporal_factor);
        bj["repeat"] = b.repeat;
        bj["kernel_lengths"] = b.kernel_lengths;
        bj["stride"] = b.stride;
        if (b.kind == BlockKind::RConvStack) bj["expansion"] = b.expansion;
        if (b.kind == BlockKind::SeparationHead) bj["feature_length"] = b.feature_length;
        j["blocks"].push_back(std::move(bj));
    }
    return j.dump(2) + "\n";
}

PipelineSpec load_pipeline_file(const std::filesystem::path& path) {
    return parse_pipeline_json(read_file(path));
}

PartitionPlan parse_plan_json(const std::string& text) {
    return [](const json& j) {
        require_keys(j, "plan", {"vnfs"});
        PartitionPlan plan;
        if (!j.contains("vnfs") || !j.at("vnfs").is_array())
            throw ConfigError("plan: missing 'vnfs' array");
        for (const json& vj : j.at("vnfs")) {
            const std::string ctx = "plan vnf " + std::to_string(plan.vnfs.size());
            require_keys(vj, ctx, {"first", "last", "node", "theoretical_rate"});
            BlockInterval iv;
            iv.first = get_field<std::size_t>(vj, ctx, "first");
            iv.last = get_field<std::size_t>(vj, ctx, "last");
            plan.vnfs.push_back(iv);
            plan.placements.push_back(get_field<std::string>(vj, ctx, "node"));
            plan.theoretical_rates.push_back(
                vj.contains("theoretical_rate") ? ratio_from_json(vj.at("theoretical_rate"), ctx)
                                                : Ratio(0));
        }
        return plan;
    }(parse_text(text, "plan"));
}

std::string plan_to_json(const PartitionPlan& plan) {
    json j;
    j["vnfs"] = json::array();
    for (std::size_t i = 0; i < plan.vnfs.size(); ++i) {
        json vj;
        vj["first"] = plan.vnfs[i].first;
        vj["last"] = plan.vnfs[i].last;
        vj["node"] = plan.placements[i];
        vj["theoretical_rate"] = ratio_to_json(plan.theoretical_rates[i]);
        j["vnfs"].push_back(std::move(vj));
    }
    return j.dump(2) + "\n";
}

PartitionPlan load_plan_file(const std::filesystem::path& path) {
    return parse_plan_json(read_file(path));
}

namespace {

PipelineSpec resolve_pipeline(const json& j, const std::filesystem::path& base,
                              const std::string& ctx) {
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name == "canonical") return canonical_pipeline();
        if (name == "reference") return reference_pipeline();
        throw ConfigError(ctx + ": unknown pipeline preset '" + name + "'");
    }
    if (j.is_object() && j.contains("file")) {
        require_keys(j, ctx + ".pipeline", {"file"});
        return load_pipeline_file(base / j.at("file").get<std::string>());
    }
    if (j.is_object()) return parse_pipeline_json(j.dump());
    throw ConfigError(ctx + ": 'pipeline' must be a preset name, {\"file\": ...}, or inline");
}

Scenario parse_scenario(const json& j, const std::filesystem::path& base) {
    const std::string name = j.is_object() && j.contains("name")
                                 ? j.at("name").get<std::string>()
                                 : "scenario";
    const std::string ctx = "scenario '" + name + "'";
    require_keys(j, ctx,
                 {"name", "mode", "pipeline", "m", "seed", "repetitions", "nodes", "links",
                  "packetization", "plan", "jitter", "input_bytes_override", "compute_features"});

    Scenario sc;
    sc.name = name;
    const std::string mode = get_field<std::string>(j, ctx, "mode");
    if (mode == "sf") sc.mode = Mode::SF;
    else if (mode == "cf") sc.mode = Mode::CF;
    else throw ConfigError(ctx + ": mode must be \"sf\" or \"cf\"");

    if (!j.contains("pipeline")) throw ConfigError(ctx + ": missing key 'pipeline'");
    sc.pipeline = resolve_pipeline(j.at("pipeline"), base, ctx);
    sc.m = get_field<std::int64_t>(j, ctx, "m");
    const std::uint64_t zero_seed = 0;
    sc.seed = get_field<std::uint64_t>(j, ctx, "seed", &zero_seed);
    const int one_rep = 1;
    sc.repetitions = get_field<int>(j, ctx, "repetitions", &one_rep);

    if (!j.contains("nodes") || !j.at("nodes").is_array() || j.at("nodes").size() < 2)
        throw ConfigError(ctx + ": 'nodes' must list client..server");
    for (const json& nj : j.at("nodes")) {
        const std::string nctx = ctx + " node " + std::to_string(sc.nodes.size());
        require_keys(nj, nctx, {"id", "compute_rate", "cf_io_overhead", "per_packet_overhead"});
        NodeSpec n;
        n.id = get_field<std::string>(nj, nctx, "id");
        const double def_rate = 8.8338432e9, def_zero = 0.0;
        n.compute_rate = get_field<double>(nj, nctx, "compute_rate", &def_rate);
        n.cf_io_overhead_s = get_field<double>(nj, nctx, "cf_io_overhead", &def_zero);
        n.per_packet_overhead_s = get_field<double>(nj, nctx, "per_packet_overhead", &def_zero);
        sc.nodes.push_back(std::move(n));
    }

    if (!j.contains("links") || !j.at("links").is_array())
        throw ConfigError(ctx + ": missing 'links' array");
    for (const json& lj : j.at("links")) {
        const std::string lctx = ctx + " link " + std::to_string(sc.links.size());
        require_keys(lj, lctx, {"bandwidth_bps", "prop_delay_s"});
        LinkSpec l;
        l.bandwidth_bps = get_field<double>(lj, lctx, "bandwidth_bps");
        l.prop_delay_s = get_field<double>(lj, lctx, "prop_delay_s");
        sc.links.push_back(l);
    }

    if (j.contains("packetization")) {
        const json& pj = j.at("packetization");
        require_keys(pj, ctx + ".packetization", {"mtu_payload", "header_bytes"});
        sc.packetization.mtu_payload = get_field<std::uint32_t>(pj, ctx, "mtu_payload");
        sc.packetization.header_bytes = get_field<std::uint32_t>(pj, ctx, "header_bytes");
    }

    if (j.contains("jitter")) {
        const json& jj = j.at("jitter");
        require_keys(jj, ctx + ".jitter", {"seed", "compute_rate_spread", "io_overhead_spread"});
        const std::uint64_t zs = 0;
        const double zd = 0.0;
        sc.jitter.seed = get_field<std::uint64_t>(jj, ctx, "seed", &zs);
        sc.jitter.compute_rate_spread = get_field<double>(jj, ctx, "compute_rate_spread", &zd);
        sc.jitter.io_overhead_spread = get_field<double>(jj, ctx, "io_overhead_spread", &zd);
        if (sc.jitter.compute_rate_spread < 0 || sc.jitter.compute_rate_spread >= 1 ||
            sc.jitter.io_overhead_spread < 0 || sc.jitter.io_overhead_spread >= 1)
            throw ConfigError(ctx + ": jitter spreads must lie in [0, 1)");
    }

    if (j.contains("input_bytes_override"))
        sc.input_bytes_override = get_field<std::uint64_t>(j, ctx, "input_bytes_override");
    const bool yes = true;
    sc.compute_features = get_field<bool>(j, ctx, "compute_features", &yes);

    if (j.contains("plan")) {
        const json& pj = j.at("plan");
        if (pj.is_string() && pj.get<std::string>() == "auto") {
            std::vector<std::string> chain;
            for (std::size_t i = 0; i + 1 < sc.nodes.size(); ++i) chain.push_back(sc.nodes[i].id);
            sc.plan = make_plan(sc.pipeline, sc.m, chain);
        } else if (pj.is_object() && pj.contains("file")) {
            require_keys(pj, ctx + ".plan", {"file"});
            sc.plan = load_plan_file(base / pj.at("file").get<std::string>());
        } else if (pj.is_object()) {
            sc.plan = parse_plan_json(pj.dump());
        } else {
            throw ConfigError(ctx + ": 'plan' must be \"auto\", {\"file\": ...}, or inline");
        }
    }

    sc.validate();
    return sc;
}

} // namespace

std::vector<Scenario> load_scenario_file(const std::filesystem::path& path) {
    const json j = parse_text(read_file(path), "scenario file " + path.string());
    const std::filesystem::path base = path.has_parent_path() ? path.parent_path() : ".";

    require_keys(j, "scenario file", {"scenarios"});
    if (!j.contains("scenarios") || !j.at("scenarios").is_array() || j.at("scenarios").empty())
        throw ConfigError("scenario file: 'scenarios' must be a non-empty array");

    std::vector<Scenario> out;
    for (const json& sj : j.at("scenarios")) out.push_back(parse_scenario(sj, base));
    return out;
}

std::string report_to_json(const Scenario& scenario, const BatchResult& batch) {
    json j;
    j["scenario"] = scenario.name;
    j["mode"] = scenario.mode == Mode::SF ? "sf" : "cf";
    j["m"] = scenario.m;
    j["seed"] = scenario.seed;
    j["repetitions"] = static_cast<int>(batch.runs.size());

    json base;
    base["t_p"] = batch.base.t_p;
    base["t_t"] = batch.base.t_t;
    base["t_s"] = batch.base.t_s;
    base["sf_baseline_bytes"] = batch.base.sf_baseline_bytes;
    if (!batch.base.feature_digest.empty()) base["feature_digest"] = batch.base.feature_digest;
    base["links"] = json::array();
    const auto rates = measured_rates(batch.base);
    for (std::size_t i = 0; i < batch.base.links.size(); ++i) {
        json lj;
        lj["from"] = scenario.nodes[i].id;
        lj["to"] = scenario.nodes[i + 1].id;
        lj["bytes"] = batch.base.links[i].bytes;
        lj["packets"] = batch.base.links[i].packets;
        lj["measured_rate"] = rates[i];
        lj["theoretical_rate"] = batch.base.theoretical_rates[i];
        base["links"].push_back(std::move(lj));
    }
    j["base"] = std::move(base);

    j["runs"] = json::array();
    for (const RunTimes& r : batch.runs) {
        json rj;
        rj["t_p"] = r.t_p;
        rj["t_t"] = r.t_t;
        rj["t_s"] = r.t_s;
        j["runs"].push_back(std::move(rj));
    }

    const auto pct = [](const Percentiles& p) {
        json pj;
        pj["p05"] = p.p05;
        pj["p25"] = p.p25;
        pj["p50"] = p.p50;
        pj["p75"] = p.p75;
        pj["p95"] = p.p95;
        return pj;
    };
    j["summary"]["t_p"] = pct(batch.t_p);
    j["summary"]["t_t"] = pct(batch.t_t);
    j["summary"]["t_s"] = pct(batch.t_s);
    return j.dump(2) + "\n";
}

} // namespace ianet
