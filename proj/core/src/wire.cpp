#include "ianet/wire.hpp"

#include <cstdio>
#include <cstring>

#include "ianet/errors.hpp"

namespace ianet {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

} // namespace

std::uint64_t serialized_size(const TensorShape& shape) {
    return 8 + 4 * shape.elements();
}

std::vector<std::uint8_t> serialize(const Tensor& t) {
    std::vector<std::uint8_t> out;
    out.reserve(serialized_size(t.shape));
    put_u32(out, static_cast<std::uint32_t>(t.shape.channels));
    put_u32(out, static_cast<std::uint32_t>(t.shape.frames));
    for (float v : t.data) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        put_u32(out, bits);
    }
    return out;
}

Tensor deserialize(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 8) throw MalformedHeader("serialized tensor shorter than its header");
    const std::uint32_t channels = get_u32(bytes.data());
    const std::uint32_t frames = get_u32(bytes.data() + 4);
    if (channels == 0 || frames == 0)
        throw MalformedHeader("serialized tensor header declares an empty shape");

    const std::uint64_t elements = static_cast<std::uint64_t>(channels) * frames;
    const std::uint64_t expected = 8 + 4 * elements;
    if (bytes.size() != expected)
        throw TruncatedPayload("serialized tensor payload is " + std::to_string(bytes.size() - 8) +
                               " bytes, header declares " + std::to_string(4 * elements));

    Tensor t(channels, frames);
    const std::uint8_t* p = bytes.data() + 8;
    for (std::uint64_t i = 0; i < elements; ++i, p += 4) {
        const std::uint32_t bits = get_u32(p);
        float v;
        std::memcpy(&v, &bits, sizeof(v));
        t.data[i] = v;
    }
    return t;
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string tensor_digest(const Tensor& t) {
    const auto bytes = serialize(t);
    const std::uint64_t h = fnv1a64(bytes);
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace ianet
