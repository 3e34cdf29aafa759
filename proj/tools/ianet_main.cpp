// Command-line front end: plan generation, latency simulation, pipeline
// execution, scoring, and report summaries.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ianet/csv_io.hpp"
#include "ianet/errors.hpp"
#include "ianet/executor.hpp"
#include "ianet/json_io.hpp"
#include "ianet/netsim.hpp"
#include "ianet/pcm.hpp"
#include "ianet/pipeline.hpp"
#include "ianet/planner.hpp"
#include "ianet/scoring.hpp"
#include "ianet/wire.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

ianet::PipelineSpec resolve_pipeline_arg(const std::string& arg) {
    if (fs::exists(arg)) return ianet::load_pipeline_file(arg);
    if (arg == "canonical") return ianet::canonical_pipeline();
    if (arg == "reference") return ianet::reference_pipeline();
    throw ianet::ConfigError("--pipeline: no such file or preset: '" + arg + "'");
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ianet::ConfigError("cannot write file: " + path.string());
    out << content;
}

void write_bytes(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ianet::ConfigError("cannot write file: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

struct PlanArgs {
    std::string pipeline = "canonical";
    std::int64_t m = 163840;
    std::vector<std::string> chain = {"client", "s1", "s2"};
    std::string out;
    std::string format = "table";
};

int cmd_plan(const PlanArgs& args) {
    const auto spec = resolve_pipeline_arg(args.pipeline);
    const auto plan = ianet::make_plan(spec, args.m, args.chain);
    const std::string plan_json = ianet::plan_to_json(plan);
    const std::string rates = ianet::rates_csv(spec, args.m);

    if (!args.out.empty()) {
        write_file(fs::path(args.out) / "plan.json", plan_json);
        write_file(fs::path(args.out) / "rates.csv", rates);
    }
    if (args.format == "json") {
        std::cout << plan_json;
    } else if (args.format == "csv") {
        std::cout << rates;
    } else {
        for (std::size_t i = 0; i < plan.vnfs.size(); ++i) {
            std::printf("VNF %zu: blocks [%zu..%zu] '%s'..'%s' on %s, boundary rate %s (%.6g)\n",
                        i + 1, plan.vnfs[i].first, plan.vnfs[i].last,
                        spec.blocks[plan.vnfs[i].first].name.c_str(),
                        spec.blocks[plan.vnfs[i].last].name.c_str(), plan.placements[i].c_str(),
                        plan.theoretical_rates[i].str().c_str(),
                        plan.theoretical_rates[i].to_double());
        }
    }
    return kExitOk;
}

struct SimulateArgs {
    std::string scenario;
    std::string out;
    std::string mode; // optional filter
    std::optional<std::uint64_t> seed;
};

int cmd_simulate(const SimulateArgs& args) {
    auto scenarios = ianet::load_scenario_file(args.scenario);
    bool ran_any = false;
    for (ianet::Scenario& sc : scenarios) {
        if (!args.mode.empty()) {
            const bool is_sf = sc.mode == ianet::Mode::SF;
            if ((args.mode == "sf") != is_sf) continue;
        }
        if (args.seed) sc.seed = *args.seed;
        ran_any = true;

        const ianet::BatchResult batch = ianet::run_batch(sc);
        if (!args.out.empty()) {
            const fs::path dir(args.out);
            write_file(dir / (sc.name + "-report.json"), ianet::report_to_json(sc, batch));
            write_file(dir / (sc.name + "-runs.csv"), ianet::runs_csv(batch));
            write_file(dir / (sc.name + "-links.csv"), ianet::links_csv(sc, batch.base));
        }
        std::printf("%-24s %s  runs=%zu  median t_s=%.4f s (t_p=%.4f, t_t=%.4f)%s%s\n",
                    sc.name.c_str(), sc.mode == ianet::Mode::SF ? "sf" : "cf", batch.runs.size(),
                    batch.t_s.p50, batch.t_p.p50, batch.t_t.p50,
                    batch.base.feature_digest.empty() ? "" : "  features=",
                    batch.base.feature_digest.c_str());
    }
    if (!ran_any) throw ianet::ConfigError("no scenario matched the requested mode");
    return kExitOk;
}

struct InferArgs {
    std::string pipeline = "canonical";
    std::int64_t m = 0;
    std::uint64_t seed = 0;
    std::string input;
    std::string plan;
    std::string out;
    std::string format = "table";
};

int cmd_infer(const InferArgs& args) {
    const auto spec = resolve_pipeline_arg(args.pipeline);

    ianet::Tensor observation;
    if (!args.input.empty()) {
        observation = ianet::load_pcm16_file(args.input);
        if (args.m != 0 && args.m != observation.shape.frames)
            throw ianet::ConfigError("--m disagrees with the PCM sample count " +
                                     std::to_string(observation.shape.frames));
    } else {
        const std::int64_t m = args.m != 0 ? args.m : 163840;
        const int head_channels = spec.blocks.empty() ? 1 : spec.blocks.back().out_channels;
        observation = ianet::synth_mixture(head_channels, m, args.seed).observation;
    }

    // Fail on indivisible input before running anything.
    (void)ianet::infer_shape(spec, observation.shape.frames);

    const ianet::WeightSet weights = ianet::make_weights(spec, args.seed);

    std::vector<std::pair<std::string, std::string>> digests;
    ianet::Tensor current = observation;
    if (!args.plan.empty()) {
        const ianet::PartitionPlan plan = ianet::load_plan_file(args.plan);
        for (const ianet::BlockInterval& iv : plan.vnfs) {
            for (std::size_t b = iv.first; b <= iv.last; ++b) {
                current = ianet::run_block(spec.blocks[b], weights.blocks[b], current);
                digests.emplace_back(spec.blocks[b].name, ianet::tensor_digest(current));
            }
            current = ianet::deserialize(ianet::serialize(current));
        }
    } else {
        const auto trace = ianet::run_pipeline_trace(spec, weights, observation);
        for (std::size_t b = 0; b < trace.size(); ++b)
            digests.emplace_back(spec.blocks[b].name, ianet::tensor_digest(trace[b]));
        current = trace.back();
    }

    json dj;
    dj["stages"] = json::array();
    for (const auto& [name, digest] : digests) {
        json sj;
        sj["name"] = name;
        sj["digest"] = digest;
        dj["stages"].push_back(std::move(sj));
    }
    dj["features_digest"] = ianet::tensor_digest(current);

    if (!args.out.empty()) {
        const fs::path dir(args.out);
        write_bytes(dir / "features.bin", ianet::serialize(current));
        write_file(dir / "features.csv", ianet::features_csv(current));
        write_file(dir / "digests.json", dj.dump(2) + "\n");
    }
    if (args.format == "json") {
        std::cout << dj.dump(2) << "\n";
    } else if (args.format == "csv") {
        std::cout << ianet::features_csv(current);
    } else {
        std::printf("features: %lld x %lld, digest %s\n",
                    static_cast<long long>(current.shape.channels),
                    static_cast<long long>(current.shape.frames),
                    ianet::tensor_digest(current).c_str());
    }
    return kExitOk;
}

struct ScoreArgs {
    std::string features;
    std::string reference;
    std::string labeled;
    double threshold = 1.0;
    std::string metric = "euclidean";
    std::string out;
};

ianet::Tensor read_tensor_bin(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ianet::ConfigError("cannot open tensor file: " + path.string());
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    return ianet::deserialize(
        std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

int cmd_score(const ScoreArgs& args) {
    if (!args.labeled.empty()) {
        std::ifstream in(args.labeled, std::ios::binary);
        if (!in) throw ianet::ConfigError("cannot open labeled CSV: " + args.labeled);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const ianet::LabeledScoreSet set = ianet::parse_labeled_scores_csv(text);

        double sum = 0.0;
        for (std::size_t i = 0; i < set.machines.size(); ++i) {
            const double a = ianet::auc(
                std::span<const ianet::LabeledScore>(set.samples[i].data(), set.samples[i].size()));
            std::printf("machine %-12s auc=%.6f (n=%zu)\n", set.machines[i].c_str(), a,
                        set.samples[i].size());
            sum += a;
        }
        std::printf("mauc=%.6f over %zu machines\n", sum / set.machines.size(),
                    set.machines.size());
        return kExitOk;
    }

    if (args.features.empty() || args.reference.empty())
        throw ianet::ConfigError("score needs either --labeled or both --features and --reference");

    const ianet::Tensor f = read_tensor_bin(args.features);
    const ianet::Tensor r = read_tensor_bin(args.reference);
    const auto metric = args.metric == "cosine" ? ianet::DistanceMetric::Cosine
                                                : ianet::DistanceMetric::Euclidean;
    const auto scores = ianet::anomaly_score(f, r, metric);
    const auto decisions = ianet::threshold_decision(scores, args.threshold);

    std::string csv = "machine,score,decision\n";
    for (std::size_t i = 0; i < scores.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%s\n", i, scores[i],
                      decisions[i] ? "anomalous" : "normal");
        csv += buf;
        std::printf("machine %zu: score=%.6f -> %s\n", i, scores[i],
                    decisions[i] ? "anomalous" : "normal");
    }
    if (!args.out.empty()) write_file(fs::path(args.out) / "scores.csv", csv);
    return kExitOk;
}

struct ReportArgs {
    std::vector<std::string> reports;
};

int cmd_report(const ReportArgs& args) {
    struct Row {
        std::string name, mode;
        double tp, tt, ts;
    };
    std::vector<Row> rows;
    for (const std::string& path : args.reports) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ianet::ConfigError("cannot open report: " + path);
        json j = json::parse(in, nullptr, false);
        if (j.is_discarded()) throw ianet::ConfigError("report is not valid JSON: " + path);
        try {
            rows.push_back({j.at("scenario").get<std::string>(), j.at("mode").get<std::string>(),
                            j.at("summary").at("t_p").at("p50").get<double>(),
                            j.at("summary").at("t_t").at("p50").get<double>(),
                            j.at("summary").at("t_s").at("p50").get<double>()});
        } catch (const json::exception&) {
            throw ianet::ConfigError("report is missing summary fields: " + path);
        }
    }
    std::printf("%-24s %-4s %10s %10s %10s\n", "scenario", "mode", "t_p(p50)", "t_t(p50)",
                "t_s(p50)");
    for (const Row& r : rows)
        std::printf("%-24s %-4s %10.4f %10.4f %10.4f\n", r.name.c_str(), r.mode.c_str(), r.tp,
                    r.tt, r.ts);
    if (rows.size() > 1) {
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double reduction = (rows[0].ts - rows[i].ts) / rows[0].ts * 100.0;
            std::printf("t_s reduction of '%s' vs '%s': %.2f%%\n", rows[i].name.c_str(),
                        rows[0].name.c_str(), reduction);
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"IA-Net-Lite pipeline, VNF split planning, and SF/CF latency simulation"};
    app.require_subcommand(1);

    PlanArgs plan_args;
    auto* plan = app.add_subcommand("plan", "Partition a pipeline into VNFs at concave points");
    plan->add_option("--pipeline", plan_args.pipeline, "Pipeline file or preset (canonical, reference)");
    plan->add_option("--m", plan_args.m, "Input length in frames")->check(CLI::PositiveNumber);
    plan->add_option("--chain", plan_args.chain, "Processing nodes in path order")->delimiter(',');
    plan->add_option("--out", plan_args.out, "Output directory (plan.json, rates.csv)");
    plan->add_option("--format", plan_args.format, "Stdout format: table, json, csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Run the scenarios in a scenario file");
    sim->add_option("--scenario", sim_args.scenario, "Scenario JSON file")->required();
    sim->add_option("--out", sim_args.out, "Output directory for reports");
    sim->add_option("--mode", sim_args.mode, "Only run scenarios in this mode")
        ->check(CLI::IsMember({"sf", "cf"}));
    std::uint64_t seed_override = 0;
    auto* seed_opt = sim->add_option("--seed", seed_override, "Override every scenario's seed");

    InferArgs infer_args;
    auto* infer = app.add_subcommand("infer", "Execute the pipeline on a real or synthetic signal");
    infer->add_option("--pipeline", infer_args.pipeline, "Pipeline file or preset");
    infer->add_option("--m", infer_args.m, "Input length (synthetic input)");
    infer->add_option("--seed", infer_args.seed, "Weights / synthesis seed");
    infer->add_option("--input", infer_args.input, "16-bit little-endian PCM file");
    infer->add_option("--plan", infer_args.plan, "Execute VNF-wise using this plan file");
    infer->add_option("--out", infer_args.out, "Output directory (features.bin/.csv, digests.json)");
    infer->add_option("--format", infer_args.format, "Stdout format: table, json, csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));

    ScoreArgs score_args;
    auto* score = app.add_subcommand("score", "Score features against a reference, or AUC of labeled scores");
    score->add_option("--features", score_args.features, "Feature tensor (features.bin)");
    score->add_option("--reference", score_args.reference, "Reference tensor (features.bin)");
    score->add_option("--labeled", score_args.labeled, "CSV of machine,score,label");
    score->add_option("--threshold", score_args.threshold, "Anomaly threshold (strict)");
    score->add_option("--metric", score_args.metric, "euclidean or cosine")
        ->check(CLI::IsMember({"euclidean", "cosine"}));
    score->add_option("--out", score_args.out, "Output directory (scores.csv)");

    ReportArgs report_args;
    auto* report = app.add_subcommand("report", "Summarize and compare report JSON files");
    report->add_option("reports", report_args.reports, "Report files (first is the baseline)")
        ->required();

    try {
        app.parse(argc, argv);
        if (seed_opt->count() > 0) sim_args.seed = seed_override;

        if (plan->parsed()) return cmd_plan(plan_args);
        if (sim->parsed()) return cmd_simulate(sim_args);
        if (infer->parsed()) return cmd_infer(infer_args);
        if (score->parsed()) return cmd_score(score_args);
        if (report->parsed()) return cmd_report(report_args);
        return kExitConfig;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    } catch (const ianet::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ianet::IndivisibleInput& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ianet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
