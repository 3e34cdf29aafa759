#include "ianet/pipeline.hpp"

#include <algorithm>

#include "ianet/errors.hpp"

namespace ianet {

const char* to_string(BlockKind kind) {
    switch (kind) {
        case BlockKind::Conv1D: return "conv1d";
        case BlockKind::RConvStack: return "rconv_stack";
        case BlockKind::SeparationHead: return "separation_head";
    }
    return "?";
}

void PipelineSpec::validate() const {
    if (input_channels < 1) throw ConfigError("pipeline: input_channels must be >= 1");
    if (element_bytes < 1) throw ConfigError("pipeline: element_bytes must be >= 1");

    int prev_out = input_channels;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const BlockSpec& b = blocks[i];
        const std::string where = "block '" + b.name + "' (index " + std::to_string(i) + "): ";
        if (b.in_channels != prev_out)
            throw ConfigError(where + "in_channels " + std::to_string(b.in_channels) +
                              " does not chain from previous out_channels " +
                              std::to_string(prev_out));
        if (b.out_channels < 1) throw ConfigError(where + "out_channels must be >= 1");
        if (b.kernel_lengths.empty()) throw ConfigError(where + "kernel_lengths must be non-empty");
        for (int k : b.kernel_lengths)
            if (k < 1) throw ConfigError(where + "kernel lengths must be >= 1");
        if (b.repeat < 1) throw ConfigError(where + "repeat must be >= 1");
        if (b.stride < 1) throw ConfigError(where + "stride must be >= 1");

        switch (b.kind) {
            case BlockKind::Conv1D:
                if (b.kernel_lengths.size() != 1)
                    throw ConfigError(where + "conv1d takes exactly one kernel length");
                if (b.temporal_factor != Ratio(1, b.stride))
                    throw ConfigError(where + "temporal_factor must equal 1/stride");
                break;
            case BlockKind::RConvStack: {
                if (b.kernel_lengths.size() != 2)
                    throw ConfigError(where + "rconv_stack takes two kernel lengths (dual path)");
                if (b.temporal_factor != Ratio(1, b.stride))
                    throw ConfigError(where + "temporal_factor must equal 1/stride");
                if (b.expansion < 1) throw ConfigError(where + "expansion must be >= 1");
                const int expanded = b.expansion * b.in_channels;
                if (expanded % 2 != 0)
                    throw ConfigError(where + "expanded channels must split into two paths");
                break;
            }
            case BlockKind::SeparationHead:
                if (b.feature_length < 1)
                    throw ConfigError(where + "separation head needs feature_length >= 1");
                break;
        }
        if (b.kind != BlockKind::SeparationHead) {
            static const Ratio allowed[] = {Ratio(1), Ratio(1, 4), Ratio(1, 16)};
            if (std::find(std::begin(allowed), std::end(allowed), b.temporal_factor) ==
                std::end(allowed))
                throw ConfigError(where + "temporal_factor must be one of 1, 1/4, 1/16");
        }
        prev_out = b.out_channels;
    }
}

ModuleGroup module_group(const PipelineSpec& spec, std::size_t block_index) {
    const BlockSpec& b = spec.blocks.at(block_index);
    if (block_index == 0 && b.kind == BlockKind::Conv1D) return ModuleGroup::Encoder;
    if (b.kind == BlockKind::RConvStack) return ModuleGroup::Abstraction;
    return ModuleGroup::Decoder;
}

PipelineSpec canonical_pipeline() {
    PipelineSpec spec;
    spec.input_channels = 1;
    spec.element_bytes = 4;

    auto conv = [](std::string name, int cin, int cout, int kernel, int stride) {
        BlockSpec b;
        b.name = std::move(name);
        b.kind = BlockKind::Conv1D;
        b.in_channels = cin;
        b.out_channels = cout;
        b.kernel_lengths = {kernel};
        b.stride = stride;
        b.temporal_factor = Ratio(1, stride);
        return b;
    };
    auto rconv = [](std::string name, int cin, int cout, int repeat, int stride) {
        BlockSpec b;
        b.name = std::move(name);
        b.kind = BlockKind::RConvStack;
        b.in_channels = cin;
        b.out_channels = cout;
        b.repeat = repeat;
        b.kernel_lengths = {7, 5};
        b.stride = stride;
        b.temporal_factor = Ratio(1, stride);
        return b;
    };

    spec.blocks.push_back(conv("Encoder", 1, 32, 5, 4));
    spec.blocks.push_back(rconv("Layer 1", 32, 16, 1, 1));
    spec.blocks.push_back(rconv("Layer 2", 16, 24, 2, 4));
    spec.blocks.push_back(rconv("Layer 3", 24, 32, 3, 4));
    spec.blocks.push_back(rconv("Layer 4", 32, 64, 4, 4));
    spec.blocks.push_back(rconv("Layer 5", 64, 96, 3, 1));
    spec.blocks.push_back(rconv("Layer 6", 96, 160, 3, 4));
    spec.blocks.push_back(rconv("Layer 7", 160, 320, 1, 1));
    spec.blocks.push_back(conv("Layer 8", 320, 1280, 7, 1));

    BlockSpec head;
    head.name = "Separation";
    head.kind = BlockKind::SeparationHead;
    head.in_channels = 1280;
    head.out_channels = 4;
    head.kernel_lengths = {1};
    head.feature_length = 256;
    spec.blocks.push_back(head);

    for (std::size_t i = 0; i < spec.blocks.size(); ++i) spec.blocks[i].id = i;
    return spec;
}

PipelineSpec scale_channels(const PipelineSpec& spec, int factor) {
    PipelineSpec scaled = spec;
    for (std::size_t i = 0; i < scaled.blocks.size(); ++i) {
        BlockSpec& b = scaled.blocks[i];
        if (i > 0) b.in_channels *= factor;
        if (b.kind != BlockKind::SeparationHead) b.out_channels *= factor;
    }
    return scaled;
}

PipelineSpec reference_pipeline() {
    return scale_channels(canonical_pipeline(), 2);
}

std::vector<TensorShape> infer_shape(const PipelineSpec& spec, std::int64_t m) {
    spec.validate();
    if (m < 1) throw IndivisibleInput("input length must be >= 1");

    std::vector<TensorShape> shapes;
    shapes.reserve(spec.blocks.size());
    std::int64_t frames = m;
    for (const BlockSpec& b : spec.blocks) {
        if (b.kind == BlockKind::SeparationHead) {
            frames = b.feature_length;
        } else {
            const auto next = b.temporal_factor.times_exact(frames);
            if (!next || *next < 1)
                throw IndivisibleInput("block '" + b.name + "': " + std::to_string(frames) +
                                       " frames not reducible by factor " +
                                       b.temporal_factor.str());
            frames = *next;
        }
        shapes.push_back({b.out_channels, frames});
    }
    return shapes;
}

std::vector<Ratio> filter_rates(const PipelineSpec& spec, std::int64_t m) {
    const auto shapes = infer_shape(spec, m);
    std::vector<Ratio> rates;
    rates.reserve(shapes.size());
    for (const TensorShape& s : shapes)
        rates.push_back(Ratio(static_cast<std::int64_t>(s.elements()), m));
    return rates;
}

namespace detail {

std::vector<ParamArray> parameter_arrays(const BlockSpec& b) {
    std::vector<ParamArray> arrays;
    auto conv = [&](std::uint64_t out, std::uint64_t in_per_group, std::uint64_t kernel) {
        arrays.push_back({ParamRole::ConvWeight, out * in_per_group * kernel, in_per_group * kernel});
    };
    auto norm = [&](std::uint64_t channels) {
        arrays.push_back({ParamRole::NormGain, channels, 0});
        arrays.push_back({ParamRole::NormBias, channels, 0});
    };

    switch (b.kind) {
        case BlockKind::Conv1D:
            conv(b.out_channels, b.in_channels, b.kernel_lengths.at(0));
            break;
        case BlockKind::RConvStack: {
            for (int u = 0; u < b.repeat; ++u) {
                const std::uint64_t cin = (u == 0) ? b.in_channels : b.out_channels;
                const std::uint64_t expanded = static_cast<std::uint64_t>(b.expansion) * cin;
                const std::uint64_t half = expanded / 2;
                conv(expanded, cin, 1); // expansion
                norm(expanded);
                conv(half, 1, b.kernel_lengths.at(0)); // depthwise path A
                norm(half);
                conv(half, 1, b.kernel_lengths.at(1)); // depthwise path B
                norm(half);
                conv(b.out_channels, expanded, 1); // linear projection
            }
            break;
        }
        case BlockKind::SeparationHead:
            conv(static_cast<std::uint64_t>(b.out_channels) * b.feature_length, b.in_channels, 1);
            break;
    }
    return arrays;
}

} // namespace detail

namespace {

std::uint64_t block_macs(const BlockSpec& b, std::int64_t frames_in, std::int64_t frames_out) {
    const auto u64 = [](std::int64_t v) { return static_cast<std::uint64_t>(v); };
    switch (b.kind) {
        case BlockKind::Conv1D:
            return u64(b.out_channels) * u64(b.in_channels) * u64(b.kernel_lengths.at(0)) *
                   u64(frames_out);
        case BlockKind::RConvStack: {
            std::uint64_t macs = 0;
            std::int64_t fi = frames_in;
            for (int u = 0; u < b.repeat; ++u) {
                const std::int64_t stride = (u == 0) ? b.stride : 1;
                const std::int64_t fo = fi / stride;
                const std::uint64_t cin = u64((u == 0) ? b.in_channels : b.out_channels);
                const std::uint64_t expanded = u64(b.expansion) * cin;
                const std::uint64_t half = expanded / 2;
                macs += expanded * cin * u64(fi);                                  // expansion
                macs += half * u64(b.kernel_lengths.at(0)) * u64(fo);              // path A
                macs += half * u64(b.kernel_lengths.at(1)) * u64(fo);              // path B
                macs += u64(b.out_channels) * expanded * u64(fo);                  // projection
                fi = fo;
            }
            return macs;
        }
        case BlockKind::SeparationHead:
            // pooling is additions only; the 1x1 conv runs on the single pooled frame
            return u64(b.out_channels) * u64(b.feature_length) * u64(b.in_channels);
    }
    return 0;
}

} // namespace

CostReport count_costs(const PipelineSpec& spec, std::int64_t m) {
    const auto shapes = infer_shape(spec, m);
    CostReport report;
    report.per_block.reserve(spec.blocks.size());

    std::int64_t frames_in = m;
    for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
        const BlockSpec& b = spec.blocks[i];
        BlockCost cost;
        for (const auto& arr : detail::parameter_arrays(b)) cost.params += arr.count;
        cost.macs = block_macs(b, frames_in, shapes[i].frames);

        switch (module_group(spec, i)) {
            case ModuleGroup::Encoder: report.encoder += cost; break;
            case ModuleGroup::Abstraction: report.abstraction += cost; break;
            case ModuleGroup::Decoder: report.decoder += cost; break;
        }
        report.total += cost;
        report.per_block.push_back(cost);
        frames_in = shapes[i].frames;
    }
    return report;
}

} // namespace ianet
