#pragma once

#include <memory>
#include <string>
#include <vector>

#include "featherwave/audio.hpp"
#include "featherwave/config.hpp"

namespace fw {

// Frame-major log-mel energies (natural log, floored at ln(1e-5)).
struct MelSpectrogram {
    int n_frames = 0;
    int n_mels = 0;
    int sample_rate = 0;
    int hop = 0;
    std::vector<double> frames;  // n_frames * n_mels, frame-major

    double at(int frame, int mel) const { return frames[frame * n_mels + mel]; }
    double& at(int frame, int mel) { return frames[frame * n_mels + mel]; }
};

// Per-frame, per-band LPC coefficients, alpha[k], k = 1..order.
struct LpcPlan {
    int order = 0;
    int n_bands = 0;
    int n_frames = 0;
    std::vector<double> coeffs;  // n_frames * n_bands * order

    const double* at(int frame, int band) const {
        return coeffs.data() + (static_cast<std::size_t>(frame) * n_bands + band) * order;
    }
};

// Forward Levinson-Durbin on r[0..order]. Returns alpha[1..order] in the
// convention prediction = sum_k alpha_k * x[n-k]. Reflection coefficients
// with |k| >= 1 are clamped to +-0.999 so the filter stays minimum-phase.
// Throws StructureError if r[0] <= 0.
std::vector<double> levinson_durbin(const std::vector<double>& r, int order);

// Owns precomputed immutable state: Hann window, FFTW plan, HTK mel
// filterbank and its ridge-regularized pseudo-inverse.
class MelExtractor {
public:
    explicit MelExtractor(const RunConfig& cfg);
    ~MelExtractor();

    MelExtractor(const MelExtractor&) = delete;
    MelExtractor& operator=(const MelExtractor&) = delete;

    // Centered STFT (reflection padding), power spectrum, triangular mel
    // weights, log with floor. n_frames = ceil(len(x)/hop); len(x) must be
    // >= win_length.
    MelSpectrogram melspectrogram(const AudioBuffer& x) const;

    // One mel frame -> autocorrelation r[0..order] of band `band`:
    // pseudo-inverse of the mel matrix recovers an approximate linear power
    // spectrum (clamped >= 0), restricted to the band's FFT bins, read as
    // the decimated subband's spectrum, then inverse cosine transform.
    // A Gaussian lag window plus r[0] *= 1+1e-4 conditions the result.
    // All-zero spectra fall back to r = [1, 0, ..., 0].
    std::vector<double> band_autocorrelation(const double* mel_frame, int band) const;

    LpcPlan lpc_plan(const MelSpectrogram& mel) const;

    int mel_center_bin(int mel_index) const;  // FFT bin nearest a mel band center

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Raw little-endian float32 frame-major data plus a JSON sidecar
// (<path>.json) holding n_frames, n_mels, sample_rate, hop.
void write_features(const std::string& path, const MelSpectrogram& mel);
MelSpectrogram read_features(const std::string& path);

}  // namespace fw
