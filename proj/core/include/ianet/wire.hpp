#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ianet/tensor.hpp"

namespace ianet {

/// Serialized size in bytes: 8-byte header + 4 bytes per element.
std::uint64_t serialized_size(const TensorShape& shape);

/**
 * Lossless wire encoding of a tensor: channels and frames as 32-bit unsigned
 * little-endian, then each value as a 32-bit little-endian IEEE-754 real.
 */
std::vector<std::uint8_t> serialize(const Tensor& t);

/// Inverse of serialize; bit-exact round trip. Throws MalformedHeader /
/// TruncatedPayload on short or inconsistent streams.
Tensor deserialize(std::span<const std::uint8_t> bytes);

/// FNV-1a 64-bit digest of a byte stream (used to fingerprint tensors in reports).
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);

/// Digest of a tensor's wire encoding, rendered as a hex string.
std::string tensor_digest(const Tensor& t);

} // namespace ianet
