#include "featherwave/audio.hpp"

#include <cstring>
#include <fstream>

#include "featherwave/errors.hpp"

namespace fw {

double pcm16_to_double(int16_t v) { return static_cast<double>(v) / 32768.0; }

int16_t double_to_pcm16(double x) {
    double v = x * 32768.0;
    if (v > 32767.0) v = 32767.0;
    if (v < -32768.0) v = -32768.0;
    // round-half-away from zero keeps encode(decode(pcm)) == pcm
    return static_cast<int16_t>(v >= 0 ? v + 0.5 : v - 0.5);
}

namespace {

uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

uint16_t read_u16(std::istream& in) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

void write_u32(std::ostream& out, uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

void write_u16(std::ostream& out, uint16_t v) {
    char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
    out.write(b, 2);
}

}  // namespace

AudioBuffer read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open wav file: " + path);

    char tag[4];
    in.read(tag, 4);
    if (!in || std::memcmp(tag, "RIFF", 4) != 0)
        throw ConfigError(path + ": not a RIFF file");
    read_u32(in);  // riff size
    in.read(tag, 4);
    if (!in || std::memcmp(tag, "WAVE", 4) != 0)
        throw ConfigError(path + ": not a WAVE file");

    uint16_t format = 0, channels = 0, bits = 0;
    uint32_t rate = 0;
    bool have_fmt = false;
    std::vector<char> data;
    bool have_data = false;

    while (in.read(tag, 4)) {
        uint32_t chunk_size = read_u32(in);
        if (!in) break;
        if (std::memcmp(tag, "fmt ", 4) == 0) {
            format = read_u16(in);
            channels = read_u16(in);
            rate = read_u32(in);
            read_u32(in);  // byte rate
            read_u16(in);  // block align
            bits = read_u16(in);
            if (chunk_size > 16) in.seekg(chunk_size - 16, std::ios::cur);
            have_fmt = true;
        } else if (std::memcmp(tag, "data", 4) == 0) {
            data.resize(chunk_size);
            in.read(data.data(), chunk_size);
            have_data = true;
        } else {
            // skip unknown chunk (padded to even size)
            in.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
        }
    }

    if (!have_fmt || !have_data) throw ConfigError(path + ": missing fmt/data chunk");
    if (format != 1) throw ConfigError(path + ": only PCM wav is supported");
    if (channels != 1) throw ConfigError(path + ": only mono wav is supported");
    if (bits != 16) throw ConfigError(path + ": only 16-bit wav is supported");

    AudioBuffer audio;
    audio.sample_rate = static_cast<int>(rate);
    const std::size_t n = data.size() / 2;
    audio.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto lo = static_cast<unsigned char>(data[2 * i]);
        const auto hi = static_cast<unsigned char>(data[2 * i + 1]);
        audio.samples[i] = pcm16_to_double(static_cast<int16_t>(lo | (hi << 8)));
    }
    return audio;
}

void write_wav(const std::string& path, const AudioBuffer& audio) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write wav file: " + path);

    const uint32_t data_bytes = static_cast<uint32_t>(audio.samples.size() * 2);
    out.write("RIFF", 4);
    write_u32(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    write_u32(out, 16);
    write_u16(out, 1);  // PCM
    write_u16(out, 1);  // mono
    write_u32(out, static_cast<uint32_t>(audio.sample_rate));
    write_u32(out, static_cast<uint32_t>(audio.sample_rate * 2));
    write_u16(out, 2);
    write_u16(out, 16);
    out.write("data", 4);
    write_u32(out, data_bytes);
    for (double s : audio.samples) {
        const int16_t v = double_to_pcm16(s);
        write_u16(out, static_cast<uint16_t>(v));
    }
}

}  // namespace fw
