#include "ianet/executor.hpp"

#include <cmath>
#include <random>

#include "ianet/errors.hpp"

namespace ianet {

namespace {

constexpr float kNormEpsilon = 1e-5f;

// One shared uniform source: raw mt19937_64 output mapped to [-1, 1).
// The engine's bit stream is pinned by the standard, and we avoid
// std::uniform_real_distribution because its mapping is implementation-defined.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
    double next() {
        const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53; // [0, 1)
        return 2.0 * unit - 1.0;
    }

private:
    std::mt19937_64 engine_;
};

/**
 * Grouped 1-D convolution, bias-free.
 *
 * stride 1: zero same-padding, output frames = input frames.
 * stride > 1: left-aligned windows starting at j*stride, zero-padded on the
 * right, output frames = ceil(frames / stride).
 *
 * Reductions run in a fixed sequential order (input channel, then tap) with a
 * double accumulator, so repeated runs and partial/monolithic compositions
 * agree bit-exactly.
 */
Tensor conv1d(const Tensor& x, const std::vector<float>& weights, std::int64_t out_channels,
              std::int64_t groups, std::int64_t kernel, std::int64_t stride) {
    const std::int64_t in_channels = x.shape.channels;
    const std::int64_t in_per_group = in_channels / groups;
    const std::int64_t out_per_group = out_channels / groups;
    const std::int64_t frames = x.shape.frames;
    const std::int64_t out_frames = (stride == 1) ? frames : (frames + stride - 1) / stride;
    const std::int64_t pad = (stride == 1) ? (kernel - 1) / 2 : 0;

    Tensor y(out_channels, out_frames);
    for (std::int64_t oc = 0; oc < out_channels; ++oc) {
        const std::int64_t g = oc / out_per_group;
        const float* w_oc = weights.data() + oc * in_per_group * kernel;
        for (std::int64_t j = 0; j < out_frames; ++j) {
            double acc = 0.0;
            const std::int64_t base = j * stride - pad;
            for (std::int64_t ic = 0; ic < in_per_group; ++ic) {
                const float* xc = x.data.data() + (g * in_per_group + ic) * frames;
                const float* w = w_oc + ic * kernel;
                for (std::int64_t k = 0; k < kernel; ++k) {
                    const std::int64_t t = base + k;
                    if (t >= 0 && t < frames) acc += static_cast<double>(w[k]) * xc[t];
                }
            }
            y.at(oc, j) = static_cast<float>(acc);
        }
    }
    return y;
}

void relu_inplace(Tensor& t) {
    for (float& v : t.data) v = v > 0.0f ? v : 0.0f;
}

// Layer normalization over the channel vector at each frame, per-channel affine.
void layer_norm_inplace(Tensor& t, const std::vector<float>& gain, const std::vector<float>& bias) {
    const std::int64_t channels = t.shape.channels;
    const std::int64_t frames = t.shape.frames;
    for (std::int64_t f = 0; f < frames; ++f) {
        double sum = 0.0;
        for (std::int64_t c = 0; c < channels; ++c) sum += t.at(c, f);
        const double mean = sum / static_cast<double>(channels);
        double var = 0.0;
        for (std::int64_t c = 0; c < channels; ++c) {
            const double d = t.at(c, f) - mean;
            var += d * d;
        }
        var /= static_cast<double>(channels);
        const double inv = 1.0 / std::sqrt(var + static_cast<double>(kNormEpsilon));
        for (std::int64_t c = 0; c < channels; ++c) {
            const double n = (t.at(c, f) - mean) * inv;
            t.at(c, f) = static_cast<float>(static_cast<double>(gain[c]) * n + bias[c]);
        }
    }
}

Tensor slice_channels(const Tensor& t, std::int64_t first, std::int64_t count) {
    Tensor out(count, t.shape.frames);
    for (std::int64_t c = 0; c < count; ++c)
        for (std::int64_t f = 0; f < t.shape.frames; ++f) out.at(c, f) = t.at(first + c, f);
    return out;
}

Tensor concat_channels(const Tensor& a, const Tensor& b) {
    Tensor out(a.shape.channels + b.shape.channels, a.shape.frames);
    for (std::int64_t c = 0; c < a.shape.channels; ++c)
        for (std::int64_t f = 0; f < a.shape.frames; ++f) out.at(c, f) = a.at(c, f);
    for (std::int64_t c = 0; c < b.shape.channels; ++c)
        for (std::int64_t f = 0; f < b.shape.frames; ++f)
            out.at(a.shape.channels + c, f) = b.at(c, f);
    return out;
}

/**
 * One dual-path residual unit: 1x1 expansion (ReLU + norm), two depthwise
 * paths with the block's kernel pair (each ReLU + norm), concatenation,
 * linear 1x1 projection, with a residual add when shapes agree.
 */
Tensor run_rconv_unit(const BlockSpec& block, const WeightSet::BlockWeights& weights,
                      std::size_t array_base, std::int64_t cin, std::int64_t stride,
                      const Tensor& x) {
    const std::int64_t expanded = static_cast<std::int64_t>(block.expansion) * cin;
    const std::int64_t half = expanded / 2;
    const auto& arr = weights.arrays;

    Tensor e = conv1d(x, arr[array_base + 0], expanded, 1, 1, 1);
    relu_inplace(e);
    layer_norm_inplace(e, arr[array_base + 1], arr[array_base + 2]);

    Tensor a = slice_channels(e, 0, half);
    a = conv1d(a, arr[array_base + 3], half, half, block.kernel_lengths[0], stride);
    relu_inplace(a);
    layer_norm_inplace(a, arr[array_base + 4], arr[array_base + 5]);

    Tensor b = slice_channels(e, half, half);
    b = conv1d(b, arr[array_base + 6], half, half, block.kernel_lengths[1], stride);
    relu_inplace(b);
    layer_norm_inplace(b, arr[array_base + 7], arr[array_base + 8]);

    Tensor y = conv1d(concat_channels(a, b), arr[array_base + 9], block.out_channels, 1, 1, 1);

    if (stride == 1 && cin == block.out_channels) {
        for (std::size_t i = 0; i < y.data.size(); ++i) y.data[i] += x.data[i];
    }
    return y;
}

} // namespace

std::uint64_t WeightSet::scalar_count() const {
    std::uint64_t n = 0;
    for (const auto& b : blocks)
        for (const auto& a : b.arrays) n += a.size();
    return n;
}

WeightSet make_weights(const PipelineSpec& spec, std::uint64_t seed) {
    WeightSet ws;
    ws.seed = seed;
    UniformSource rng(seed);
    for (const BlockSpec& block : spec.blocks) {
        WeightSet::BlockWeights bw;
        for (const auto& desc : detail::parameter_arrays(block)) {
            std::vector<float> values(desc.count);
            switch (desc.role) {
                case detail::ParamRole::ConvWeight: {
                    const double scale = 1.0 / std::sqrt(static_cast<double>(desc.fan_in));
                    for (float& v : values) v = static_cast<float>(rng.next() * scale);
                    break;
                }
                case detail::ParamRole::NormGain:
                    for (float& v : values) v = static_cast<float>(1.0 + 0.1 * rng.next());
                    break;
                case detail::ParamRole::NormBias:
                    for (float& v : values) v = static_cast<float>(0.1 * rng.next());
                    break;
            }
            bw.arrays.push_back(std::move(values));
        }
        ws.blocks.push_back(std::move(bw));
    }
    return ws;
}

Tensor run_block(const BlockSpec& block, const WeightSet::BlockWeights& weights,
                 const Tensor& input) {
    if (input.shape.channels != block.in_channels)
        throw ShapeMismatch("block '" + block.name + "': expected " +
                            std::to_string(block.in_channels) + " input channels, got " +
                            std::to_string(input.shape.channels));
    if (input.shape.frames < 1) throw ShapeMismatch("block '" + block.name + "': empty input");
    if (input.data.size() != input.shape.elements())
        throw ShapeMismatch("block '" + block.name + "': tensor data/shape disagree");

    switch (block.kind) {
        case BlockKind::Conv1D: {
            Tensor y = conv1d(input, weights.arrays.at(0), block.out_channels, 1,
                              block.kernel_lengths[0], block.stride);
            relu_inplace(y);
            return y;
        }
        case BlockKind::RConvStack: {
            Tensor cur = input;
            std::size_t base = 0;
            for (int u = 0; u < block.repeat; ++u) {
                const std::int64_t cin = (u == 0) ? block.in_channels : block.out_channels;
                const std::int64_t stride = (u == 0) ? block.stride : 1;
                cur = run_rconv_unit(block, weights, base, cin, stride, cur);
                base += 10;
            }
            return cur;
        }
        case BlockKind::SeparationHead: {
            // full-extent average pooling, then 1x1 conv onto n x feature_length
            const std::int64_t cin = input.shape.channels;
            Tensor pooled(cin, 1);
            for (std::int64_t c = 0; c < cin; ++c) {
                double acc = 0.0;
                for (std::int64_t f = 0; f < input.shape.frames; ++f) acc += input.at(c, f);
                pooled.at(c, 0) =
                    static_cast<float>(acc / static_cast<double>(input.shape.frames));
            }
            const std::int64_t out_units =
                static_cast<std::int64_t>(block.out_channels) * block.feature_length;
            Tensor flat = conv1d(pooled, weights.arrays.at(0), out_units, 1, 1, 1);
            Tensor features(block.out_channels, block.feature_length);
            features.data = std::move(flat.data); // (n*L, 1) relaid as (n, L), row-major identical
            return features;
        }
    }
    throw ShapeMismatch("unknown block kind");
}

Tensor run_pipeline(const PipelineSpec& spec, const WeightSet& weights, const Tensor& input,
                    std::size_t first, std::size_t last) {
    if (spec.blocks.empty() || first > last || last >= spec.blocks.size())
        throw EmptyRange("run_pipeline: invalid block range [" + std::to_string(first) + ", " +
                         std::to_string(last) + "]");
    if (weights.blocks.size() != spec.blocks.size())
        throw ShapeMismatch("run_pipeline: weight set does not match pipeline");

    Tensor cur = input;
    for (std::size_t i = first; i <= last; ++i)
        cur = run_block(spec.blocks[i], weights.blocks[i], cur);
    return cur;
}

Tensor run_pipeline(const PipelineSpec& spec, const WeightSet& weights, const Tensor& input) {
    if (spec.blocks.empty()) throw EmptyRange("run_pipeline: pipeline has no blocks");
    return run_pipeline(spec, weights, input, 0, spec.blocks.size() - 1);
}

std::vector<Tensor> run_pipeline_trace(const PipelineSpec& spec, const WeightSet& weights,
                                       const Tensor& input) {
    std::vector<Tensor> outputs;
    outputs.reserve(spec.blocks.size());
    Tensor cur = input;
    for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
        cur = run_block(spec.blocks[i], weights.blocks[i], cur);
        outputs.push_back(cur);
    }
    return outputs;
}

} // namespace ianet
