#pragma once

#include <filesystem>

#include "ianet/tensor.hpp"

namespace ianet {

/// Reads a raw 16-bit signed little-endian PCM file into a (1, samples)
/// tensor, values scaled to [-1, 1). Throws ConfigError on empty or odd-sized files.
Tensor load_pcm16_file(const std::filesystem::path& path);

} // namespace ianet
