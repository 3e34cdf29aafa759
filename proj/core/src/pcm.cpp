#include "ianet/pcm.hpp"

#include <cstdint>
#include <fstream>
#include <vector>

#include "ianet/errors.hpp"

namespace ianet {

Tensor load_pcm16_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open PCM file: " + path.string());
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.empty()) throw ConfigError("PCM file is empty: " + path.string());
    if (bytes.size() % 2 != 0)
        throw ConfigError("PCM file has an odd byte count: " + path.string());

    const std::size_t samples = bytes.size() / 2;
    Tensor t(1, static_cast<std::int64_t>(samples));
    for (std::size_t i = 0; i < samples; ++i) {
        const std::uint16_t lo = static_cast<std::uint8_t>(bytes[2 * i]);
        const std::uint16_t hi = static_cast<std::uint8_t>(bytes[2 * i + 1]);
        const std::int16_t sample = static_cast<std::int16_t>(lo | (hi << 8));
        t.data[i] = static_cast<float>(sample) / 32768.0f;
    }
    return t;
}

} // namespace ianet
