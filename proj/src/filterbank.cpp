#include "featherwave/filterbank.hpp"

#include <cmath>

#include "featherwave/errors.hpp"

namespace fw {

namespace {

// Modified Bessel function of the first kind, order zero (power series).
double bessel_i0(double x) {
    const double half = 0.5 * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 64; ++k) {
        term *= (half / k) * (half / k);
        sum += term;
        if (term < sum * 1e-18) break;
    }
    return sum;
}

}  // namespace

PrototypeFilter design_prototype(int length, double kaiser_beta, double cutoff_ratio) {
    if (length < 3 || length % 2 == 0)
        throw ConfigError("prototype length must be odd and >= 3");
    if (cutoff_ratio <= 0.0 || cutoff_ratio >= 0.5)
        throw ConfigError("cutoff_ratio must be in (0, 0.5)");

    PrototypeFilter proto;
    proto.length = length;
    proto.kaiser_beta = kaiser_beta;
    proto.cutoff_ratio = cutoff_ratio;
    proto.taps.assign(length, 0.0);

    const int center = (length - 1) / 2;
    const double wc = M_PI * cutoff_ratio;  // cutoff_ratio in Nyquist units
    const double i0_beta = bessel_i0(kaiser_beta);

    // Fill one half and mirror so symmetry is bitwise exact.
    for (int i = 0; i <= center; ++i) {
        const int m = i - center;
        const double sinc = (m == 0) ? wc / M_PI : std::sin(wc * m) / (M_PI * m);
        const double u = 2.0 * i / (length - 1) - 1.0;
        const double window = bessel_i0(kaiser_beta * std::sqrt(1.0 - u * u)) / i0_beta;
        proto.taps[i] = sinc * window;
        proto.taps[length - 1 - i] = proto.taps[i];
    }

    double sum = 0.0;
    for (double t : proto.taps) sum += t;
    for (int i = 0; i <= center; ++i) {
        proto.taps[i] /= sum;
        proto.taps[length - 1 - i] = proto.taps[i];
    }
    return proto;
}

FilterBank::FilterBank(int n_bands, const PrototypeFilter& prototype)
    : n_bands_(n_bands), length_(prototype.length) {
    if (n_bands < 1) throw ConfigError("n_bands must be >= 1");
    if (prototype.length < 4 * n_bands)
        throw ConfigError("prototype length must be >= 4*n_bands");

    const double center = (length_ - 1) / 2.0;
    const double amp = 2.0 * std::sqrt(static_cast<double>(n_bands_));
    analysis_.assign(n_bands_, std::vector<double>(length_));
    synthesis_.assign(n_bands_, std::vector<double>(length_));
    for (int k = 0; k < n_bands_; ++k) {
        const double phase = ((k % 2 == 0) ? 1.0 : -1.0) * M_PI / 4.0;
        const double omega = (2.0 * k + 1.0) * M_PI / (2.0 * n_bands_);
        for (int n = 0; n < length_; ++n) {
            const double arg = omega * (n - center);
            analysis_[k][n] = amp * prototype.taps[n] * std::cos(arg + phase);
            synthesis_[k][n] = amp * prototype.taps[n] * std::cos(arg - phase);
        }
    }
}

SubbandSignal FilterBank::analyze(const std::vector<double>& x) const {
    if (x.size() % n_bands_ != 0)
        throw StructureError("analyze: input length must be a multiple of n_bands");

    SubbandSignal g;
    g.n_bands = n_bands_;
    const std::size_t out_len = x.size() / n_bands_;
    g.channels.assign(n_bands_, std::vector<double>(out_len, 0.0));
    for (int k = 0; k < n_bands_; ++k) {
        const std::vector<double>& h = analysis_[k];
        std::vector<double>& ch = g.channels[k];
        for (std::size_t m = 0; m < out_len; ++m) {
            const std::size_t pos = m * n_bands_;
            double acc = 0.0;
            const int jmax = static_cast<int>(std::min<std::size_t>(length_ - 1, pos));
            for (int j = 0; j <= jmax; ++j) acc += h[j] * x[pos - j];
            ch[m] = acc;
        }
    }
    return g;
}

std::vector<double> FilterBank::synthesize(const SubbandSignal& g) const {
    if (g.n_bands != n_bands_ || static_cast<int>(g.channels.size()) != n_bands_)
        throw StructureError("synthesize: band count mismatch");
    const std::size_t per_band = g.length_per_band();
    for (const auto& ch : g.channels)
        if (ch.size() != per_band)
            throw StructureError("synthesize: channels must have equal length");

    const std::size_t n = per_band * n_bands_;
    std::vector<double> y(n, 0.0);
    for (int k = 0; k < n_bands_; ++k) {
        const std::vector<double>& f = synthesis_[k];
        const std::vector<double>& ch = g.channels[k];
        for (std::size_t m = 0; m < per_band; ++m) {
            const double v = ch[m];
            if (v == 0.0) continue;
            const std::size_t base = m * n_bands_;
            const std::size_t jmax = std::min<std::size_t>(length_, n - base);
            for (std::size_t j = 0; j < jmax; ++j) y[base + j] += v * f[j];
        }
    }
    return y;
}

}  // namespace fw
