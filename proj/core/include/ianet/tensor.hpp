#pragma once

#include <cstddef>
#include <vector>

#include "ianet/pipeline.hpp"

namespace ianet {

/**
 * Rank-2 array (channels x frames) of 32-bit reals, row-major.
 * Values flowing between blocks; also the unit of transport between nodes.
 */
struct Tensor {
    TensorShape shape;
    std::vector<float> data;

    Tensor() = default;
    Tensor(std::int64_t channels, std::int64_t frames)
        : shape{channels, frames},
          data(static_cast<std::size_t>(channels) * static_cast<std::size_t>(frames), 0.0f) {}

    float& at(std::int64_t c, std::int64_t f) {
        return data[static_cast<std::size_t>(c * shape.frames + f)];
    }
    float at(std::int64_t c, std::int64_t f) const {
        return data[static_cast<std::size_t>(c * shape.frames + f)];
    }

    friend bool operator==(const Tensor&, const Tensor&) = default;
};

} // namespace ianet
