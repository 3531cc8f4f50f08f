#include "featherwave/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <Eigen/Dense>
#include <fftw3.h>
#include <json.hpp>

#include "featherwave/errors.hpp"

namespace fw {

namespace {

constexpr double kLogFloor = 1e-5;

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

}  // namespace

std::vector<double> levinson_durbin(const std::vector<double>& r, int order) {
    if (static_cast<int>(r.size()) < order + 1)
        throw StructureError("levinson: need r[0..order]");
    if (r[0] <= 0.0) throw StructureError("levinson: r[0] must be positive");

    std::vector<double> a(order, 0.0), prev(order, 0.0);
    double err = r[0];
    for (int i = 1; i <= order; ++i) {
        double acc = r[i];
        for (int j = 1; j < i; ++j) acc -= a[j - 1] * r[i - j];
        double k = acc / err;
        if (k >= 1.0) k = 0.999;
        if (k <= -1.0) k = -0.999;
        std::copy(a.begin(), a.end(), prev.begin());
        a[i - 1] = k;
        for (int j = 1; j < i; ++j) a[j - 1] = prev[j - 1] - k * prev[i - j - 1];
        err *= (1.0 - k * k);
        if (err <= 0.0) err = 1e-12;
    }
    return a;
}

struct MelExtractor::Impl {
    RunConfig cfg;
    int n_bins = 0;        // fft_size/2 + 1
    int bins_per_band = 0; // (fft_size/2) / n_bands
    std::vector<double> window;           // periodic Hann, win_length
    Eigen::MatrixXd mel_weights;          // n_mels x n_bins
    Eigen::MatrixXd mel_pinv;             // n_bins x n_mels
    std::vector<int> center_bins;         // per mel band
    fftw_plan plan = nullptr;
    double* fft_in = nullptr;
    fftw_complex* fft_out = nullptr;

    ~Impl() {
        if (plan) fftw_destroy_plan(plan);
        if (fft_in) fftw_free(fft_in);
        if (fft_out) fftw_free(fft_out);
    }
};

MelExtractor::MelExtractor(const RunConfig& cfg) : impl_(std::make_unique<Impl>()) {
    cfg.validate();
    Impl& im = *impl_;
    im.cfg = cfg;
    im.n_bins = cfg.fft_size / 2 + 1;
    im.bins_per_band = (cfg.fft_size / 2) / cfg.n_bands;

    im.window.resize(cfg.win_length);
    for (int n = 0; n < cfg.win_length; ++n)
        im.window[n] = 0.5 - 0.5 * std::cos(2.0 * M_PI * n / cfg.win_length);

    // HTK-spaced triangular filters, peak 1, f_min = 0, f_max = F_S/2
    const double mel_max = hz_to_mel(cfg.sample_rate / 2.0);
    std::vector<double> edges(cfg.n_mels + 2);
    for (int i = 0; i < cfg.n_mels + 2; ++i)
        edges[i] = mel_to_hz(mel_max * i / (cfg.n_mels + 1));

    im.mel_weights = Eigen::MatrixXd::Zero(cfg.n_mels, im.n_bins);
    im.center_bins.resize(cfg.n_mels);
    const double bin_hz = static_cast<double>(cfg.sample_rate) / cfg.fft_size;
    for (int m = 0; m < cfg.n_mels; ++m) {
        const double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
        im.center_bins[m] = static_cast<int>(std::lround(mid / bin_hz));
        for (int b = 0; b < im.n_bins; ++b) {
            const double f = b * bin_hz;
            if (f <= lo || f >= hi) continue;
            im.mel_weights(m, b) = (f <= mid) ? (f - lo) / (mid - lo) : (hi - f) / (hi - mid);
        }
    }

    // ridge-regularized pseudo-inverse: M^T (M M^T + lambda I)^-1
    const double lambda = 1e-6;
    Eigen::MatrixXd gram = im.mel_weights * im.mel_weights.transpose();
    gram.diagonal().array() += lambda;
    im.mel_pinv = im.mel_weights.transpose() * gram.ldlt().solve(
        Eigen::MatrixXd::Identity(cfg.n_mels, cfg.n_mels));

    im.fft_in = fftw_alloc_real(cfg.fft_size);
    im.fft_out = fftw_alloc_complex(im.n_bins);
    im.plan = fftw_plan_dft_r2c_1d(cfg.fft_size, im.fft_in, im.fft_out, FFTW_ESTIMATE);
}

MelExtractor::~MelExtractor() = default;

int MelExtractor::mel_center_bin(int mel_index) const { return impl_->center_bins[mel_index]; }

MelSpectrogram MelExtractor::melspectrogram(const AudioBuffer& x) const {
    const Impl& im = *impl_;
    const RunConfig& cfg = im.cfg;
    const int len = static_cast<int>(x.samples.size());
    if (len < cfg.win_length)
        throw StructureError("melspectrogram: input shorter than win_length");

    const int pad = cfg.win_length / 2;
    std::vector<double> padded(len + 2 * pad);
    for (int i = 0; i < pad; ++i) padded[i] = x.samples[pad - i];  // reflect
    std::copy(x.samples.begin(), x.samples.end(), padded.begin() + pad);
    for (int i = 0; i < pad; ++i) padded[pad + len + i] = x.samples[len - 2 - i];

    MelSpectrogram mel;
    mel.n_frames = (len + cfg.hop - 1) / cfg.hop;
    mel.n_mels = cfg.n_mels;
    mel.sample_rate = cfg.sample_rate;
    mel.hop = cfg.hop;
    mel.frames.assign(static_cast<std::size_t>(mel.n_frames) * cfg.n_mels, 0.0);

    std::vector<double> power(im.n_bins);
    for (int t = 0; t < mel.n_frames; ++t) {
        const int start = t * cfg.hop;
        for (int n = 0; n < cfg.win_length; ++n)
            im.fft_in[n] = padded[start + n] * im.window[n];
        std::fill(im.fft_in + cfg.win_length, im.fft_in + cfg.fft_size, 0.0);
        fftw_execute(im.plan);
        for (int b = 0; b < im.n_bins; ++b)
            power[b] = im.fft_out[b][0] * im.fft_out[b][0] + im.fft_out[b][1] * im.fft_out[b][1];

        for (int m = 0; m < cfg.n_mels; ++m) {
            double e = 0.0;
            for (int b = 0; b < im.n_bins; ++b) e += im.mel_weights(m, b) * power[b];
            mel.at(t, m) = std::log(std::max(e, kLogFloor));
        }
    }
    return mel;
}

std::vector<double> MelExtractor::band_autocorrelation(const double* mel_frame, int band) const {
    const Impl& im = *impl_;
    const RunConfig& cfg = im.cfg;
    if (band < 0 || band >= cfg.n_bands)
        throw StructureError("band_autocorrelation: band out of range");

    Eigen::VectorXd energies(cfg.n_mels);
    for (int m = 0; m < cfg.n_mels; ++m) energies[m] = std::exp(mel_frame[m]);
    Eigen::VectorXd linear = im.mel_pinv * energies;

    const int k0 = band * im.bins_per_band;
    const int order = cfg.lpc_order;
    std::vector<double> r(order + 1, 0.0);
    const int nb = im.bins_per_band;
    for (int j = 0; j < nb; ++j) {
        const double p = std::max(linear[k0 + j], 0.0);
        if (p == 0.0) continue;
        const double omega = M_PI * (j + 0.5) / nb;  // subband axis, midpoint sampled
        for (int k = 0; k <= order; ++k) r[k] += p * std::cos(k * omega);
    }
    for (int k = 0; k <= order; ++k) r[k] /= nb;

    if (r[0] <= 0.0) {
        std::fill(r.begin(), r.end(), 0.0);
        r[0] = 1.0;
        return r;
    }

    const double f_sub = static_cast<double>(cfg.sample_rate) / cfg.n_bands;
    for (int k = 1; k <= order; ++k) {
        const double w = 2.0 * M_PI * k * cfg.lag_window_hz / f_sub;
        r[k] *= std::exp(-0.5 * w * w);
    }
    r[0] *= 1.0 + 1e-4;
    return r;
}

LpcPlan MelExtractor::lpc_plan(const MelSpectrogram& mel) const {
    const RunConfig& cfg = impl_->cfg;
    LpcPlan plan;
    plan.order = cfg.lpc_order;
    plan.n_bands = cfg.n_bands;
    plan.n_frames = mel.n_frames;
    plan.coeffs.assign(
        static_cast<std::size_t>(mel.n_frames) * cfg.n_bands * cfg.lpc_order, 0.0);
    for (int t = 0; t < mel.n_frames; ++t) {
        for (int b = 0; b < cfg.n_bands; ++b) {
            const auto r = band_autocorrelation(mel.frames.data() + t * mel.n_mels, b);
            const auto alpha = levinson_durbin(r, cfg.lpc_order);
            std::copy(alpha.begin(), alpha.end(),
                      plan.coeffs.begin() +
                          (static_cast<std::size_t>(t) * cfg.n_bands + b) * cfg.lpc_order);
        }
    }
    return plan;
}

void write_features(const std::string& path, const MelSpectrogram& mel) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write feature file: " + path);
    std::vector<float> data(mel.frames.size());
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<float>(mel.frames[i]);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(float)));

    nlohmann::json j{{"n_frames", mel.n_frames},
                     {"n_mels", mel.n_mels},
                     {"sample_rate", mel.sample_rate},
                     {"hop", mel.hop}};
    std::ofstream side(path + ".json");
    if (!side) throw ConfigError("cannot write feature sidecar: " + path + ".json");
    side << j.dump(2) << "\n";
}

MelSpectrogram read_features(const std::string& path) {
    std::ifstream side(path + ".json");
    if (!side) throw ConfigError("cannot open feature sidecar: " + path + ".json");
    nlohmann::json j;
    side >> j;

    MelSpectrogram mel;
    mel.n_frames = j.at("n_frames").get<int>();
    mel.n_mels = j.at("n_mels").get<int>();
    mel.sample_rate = j.at("sample_rate").get<int>();
    mel.hop = j.at("hop").get<int>();

    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open feature file: " + path);
    const std::size_t count = static_cast<std::size_t>(mel.n_frames) * mel.n_mels;
    std::vector<float> data(count);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(count * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != count * sizeof(float))
        throw ConfigError("feature file truncated: " + path);
    mel.frames.assign(data.begin(), data.end());
    return mel;
}

}  // namespace fw
