#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ianet/ratio.hpp"

namespace ianet {

enum class BlockKind {
    Conv1D,         ///< plain 1-D convolution (+ ReLU)
    RConvStack,     ///< stack of dual-path depthwise residual units
    SeparationHead, ///< full-extent average pooling + 1x1 conv to per-machine features
};

const char* to_string(BlockKind kind);

/**
 * One operation block of the pipeline.
 *
 * temporal_factor relates output to input frames (output = input * factor)
 * and must be the reciprocal of stride for Conv1D/RConvStack blocks. A
 * SeparationHead ignores it and always emits out_channels x feature_length.
 */
struct BlockSpec {
    std::size_t id = 0;
    std::string name;
    BlockKind kind = BlockKind::Conv1D;
    int in_channels = 0;
    int out_channels = 0;
    Ratio temporal_factor{1};
    int repeat = 1;                 ///< stacked units (RConvStack only)
    std::vector<int> kernel_lengths; ///< dual path: {7, 5}; Conv1D: {L}
    int stride = 1;
    int expansion = 2;              ///< RConvStack channel expansion factor t
    int feature_length = 0;         ///< SeparationHead output frames (e.g. 256)
};

struct PipelineSpec {
    std::vector<BlockSpec> blocks;
    int input_channels = 1;
    int element_bytes = 4; ///< bytes per tensor element on the wire

    /// Throws ConfigError when any block invariant is violated.
    void validate() const;
};

struct TensorShape {
    std::int64_t channels = 0;
    std::int64_t frames = 0;

    std::uint64_t elements() const {
        return static_cast<std::uint64_t>(channels) * static_cast<std::uint64_t>(frames);
    }
    friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

struct BlockCost {
    std::uint64_t params = 0;
    std::uint64_t macs = 0;

    BlockCost& operator+=(const BlockCost& o) {
        params += o.params;
        macs += o.macs;
        return *this;
    }
};

/// Per-block parameter/MAC counts with module-group subtotals.
struct CostReport {
    std::vector<BlockCost> per_block;
    BlockCost encoder;
    BlockCost abstraction;
    BlockCost decoder;
    BlockCost total;
};

enum class ModuleGroup { Encoder, Abstraction, Decoder };

/// Group a block belongs to: leading Conv1D -> encoder, RConvStack -> abstraction,
/// everything from the first trailing Conv1D / SeparationHead on -> decoder.
ModuleGroup module_group(const PipelineSpec& spec, std::size_t block_index);

/// The 10-block preset: encoder, eight abstraction/expansion layers, separation head.
PipelineSpec canonical_pipeline();

/// Channel-doubled variant of the canonical preset; roughly 4x the MAC count,
/// used as the heavyweight baseline in latency comparisons.
PipelineSpec reference_pipeline();

/// Widen every internal channel count by `factor` (input and head output are unchanged).
PipelineSpec scale_channels(const PipelineSpec& spec, int factor);

/**
 * Output shape after each block for an input of m frames.
 * Throws IndivisibleInput when a temporal reduction does not divide evenly.
 */
std::vector<TensorShape> infer_shape(const PipelineSpec& spec, std::int64_t m);

/// Filter rate per block: output element count / system input element count (exact).
std::vector<Ratio> filter_rates(const PipelineSpec& spec, std::int64_t m);

/// Parameter and MAC accounting for every block at input length m.
CostReport count_costs(const PipelineSpec& spec, std::int64_t m);

namespace detail {

/// Trainable array roles inside a block, in deterministic enumeration order.
enum class ParamRole { ConvWeight, NormGain, NormBias };

struct ParamArray {
    ParamRole role;
    std::uint64_t count;
    std::uint64_t fan_in; ///< conv arrays only: in_channels_per_group * kernel
};

/// Enumerates every trainable array of a block, in the exact order the
/// executor consumes them. Shared by cost accounting and weight synthesis so
/// the two can never disagree.
std::vector<ParamArray> parameter_arrays(const BlockSpec& block);

} // namespace detail
} // namespace ianet
