#pragma once

#include <vector>

#include "featherwave/audio.hpp"

namespace fw {

// Kaiser-windowed sinc lowpass, even-symmetric, DC gain normalized to 1.
// cutoff_ratio is in Nyquist units (0.5 = Nyquist/2).
struct PrototypeFilter {
    std::vector<double> taps;
    int length = 0;
    double kaiser_beta = 0.0;
    double cutoff_ratio = 0.0;
};

PrototypeFilter design_prototype(int length, double kaiser_beta, double cutoff_ratio);

// N_b subband channels at rate F_S / N_b.
struct SubbandSignal {
    int n_bands = 0;
    std::vector<std::vector<double>> channels;

    std::size_t length_per_band() const {
        return channels.empty() ? 0 : channels[0].size();
    }
};

// Near-perfect-reconstruction cosine-modulated (pseudo-QMF) bank.
//
// Band k of the analysis bank is the prototype modulated by
//   cos((2k+1) * pi/(2 N_b) * (n - (L-1)/2) + (-1)^k * pi/4)
// and the synthesis bank uses the opposite phase sign, the usual
// aliasing-cancellation pairing. Both banks carry a 2*sqrt(N_b) amplitude
// so that analysis is energy-preserving under decimation and the
// analysis->synthesis cascade has unit passband gain with delay L-1.
class FilterBank {
public:
    FilterBank(int n_bands, const PrototypeFilter& prototype);

    int n_bands() const { return n_bands_; }
    int group_delay() const { return length_ - 1; }
    const std::vector<double>& analysis_filter(int band) const { return analysis_[band]; }
    const std::vector<double>& synthesis_filter(int band) const { return synthesis_[band]; }

    // Causal convolution with each analysis filter, decimated by N_b.
    // Requires len(x) to be a multiple of N_b; output length = len(x)/N_b.
    SubbandSignal analyze(const std::vector<double>& x) const;

    // Zero-insertion upsampling by N_b, synthesis filtering, band sum.
    // Output length = length_per_band * N_b, delayed by group_delay().
    std::vector<double> synthesize(const SubbandSignal& g) const;

private:
    int n_bands_;
    int length_;
    std::vector<std::vector<double>> analysis_;
    std::vector<std::vector<double>> synthesis_;
};

}  // namespace fw
