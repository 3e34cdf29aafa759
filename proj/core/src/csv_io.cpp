#include "ianet/csv_io.hpp"

#include <cstdio>
#include <sstream>

#include "ianet/errors.hpp"

namespace ianet {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

LabeledScoreSet parse_labeled_scores_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("labeled scores: empty file");
    const auto header = split_fields(line);
    if (header.size() != 3 || header[0] != "machine" || header[1] != "score" ||
        header[2] != "label")
        throw ConfigError("labeled scores: expected header 'machine,score,label'");

    LabeledScoreSet set;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 3)
            throw ConfigError("labeled scores: row " + std::to_string(row) + " needs 3 fields");

        LabeledScore sample;
        try {
            sample.score = std::stod(fields[1]);
        } catch (const std::exception&) {
            throw ConfigError("labeled scores: row " + std::to_string(row) + " has a bad score");
        }
        if (fields[2] == "anomalous") sample.anomalous = true;
        else if (fields[2] == "normal") sample.anomalous = false;
        else
            throw ConfigError("labeled scores: row " + std::to_string(row) +
                              " label must be 'normal' or 'anomalous'");

        std::size_t idx = set.machines.size();
        for (std::size_t i = 0; i < set.machines.size(); ++i)
            if (set.machines[i] == fields[0]) { idx = i; break; }
        if (idx == set.machines.size()) {
            set.machines.push_back(fields[0]);
            set.samples.emplace_back();
        }
        set.samples[idx].push_back(sample);
    }
    return set;
}

std::string labeled_scores_to_csv(const LabeledScoreSet& set) {
    std::string out = "machine,score,label\n";
    for (std::size_t i = 0; i < set.machines.size(); ++i)
        for (const LabeledScore& s : set.samples[i])
            out += set.machines[i] + "," + fmt(s.score) + "," +
                   (s.anomalous ? "anomalous" : "normal") + "\n";
    return out;
}

std::string rates_csv(const PipelineSpec& spec, std::int64_t m) {
    const auto shapes = infer_shape(spec, m);
    const auto rates = filter_rates(spec, m);
    std::string out = "block,name,channels,frames,rate,rate_decimal\n";
    for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
        out += std::to_string(i) + "," + spec.blocks[i].name + "," +
               std::to_string(shapes[i].channels) + "," + std::to_string(shapes[i].frames) + "," +
               rates[i].str() + "," + fmt(rates[i].to_double()) + "\n";
    }
    return out;
}

std::string runs_csv(const BatchResult& batch) {
    std::string out = "run,t_p,t_t,t_s\n";
    for (std::size_t i = 0; i < batch.runs.size(); ++i) {
        const RunTimes& r = batch.runs[i];
        out += std::to_string(i) + "," + fmt(r.t_p) + "," + fmt(r.t_t) + "," + fmt(r.t_s) + "\n";
    }
    return out;
}

std::string links_csv(const Scenario& scenario, const LatencyReport& report) {
    const auto rates = measured_rates(report);
    std::string out = "link,from,to,bytes,packets,measured_rate,theoretical_rate\n";
    for (std::size_t i = 0; i < report.links.size(); ++i) {
        out += std::to_string(i) + "," + scenario.nodes[i].id + "," + scenario.nodes[i + 1].id +
               "," + std::to_string(report.links[i].bytes) + "," +
               std::to_string(report.links[i].packets) + "," + fmt(rates[i]) + "," +
               fmt(report.theoretical_rates[i]) + "\n";
    }
    return out;
}

std::string features_csv(const Tensor& features) {
    std::string out = "machine";
    for (std::int64_t f = 0; f < features.shape.frames; ++f)
        out += ",v" + std::to_string(f);
    out += "\n";
    for (std::int64_t c = 0; c < features.shape.channels; ++c) {
        out += std::to_string(c);
        for (std::int64_t f = 0; f < features.shape.frames; ++f)
            out += "," + fmt(static_cast<double>(features.at(c, f)));
        out += "\n";
    }
    return out;
}

} // namespace ianet
