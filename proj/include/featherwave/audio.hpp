#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fw {

// Mono audio, 16-bit-PCM backed: samples live in [-1, 1) on the grid
// pcm / 32768.
struct AudioBuffer {
    std::vector<double> samples;
    int sample_rate = 24000;

    std::size_t size() const { return samples.size(); }
    double duration_seconds() const {
        return static_cast<double>(samples.size()) / sample_rate;
    }
};

double pcm16_to_double(int16_t v);
int16_t double_to_pcm16(double x);

// RIFF/WAVE, PCM 16-bit mono. Unknown chunks are skipped on read.
// Throws ConfigError on malformed or unsupported files (stereo, non-PCM).
AudioBuffer read_wav(const std::string& path);

// Writes the canonical 44-byte-header form. read_wav(write_wav(x)) is
// byte-exact for files produced by this writer.
void write_wav(const std::string& path, const AudioBuffer& audio);

}  // namespace fw
