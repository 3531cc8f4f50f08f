#pragma once

#include <cstdint>
#include <vector>

#include "featherwave/codec.hpp"
#include "featherwave/features.hpp"
#include "featherwave/filterbank.hpp"

namespace fw {

// Per-band ring buffer of the last `order` reconstructed samples,
// newest first. Starts at zeros.
class LpState {
public:
    LpState(int n_bands, int order)
        : order_(order), history_(static_cast<std::size_t>(n_bands) * order, 0.0) {}

    int order() const { return order_; }

    // prediction = sum_{k=1..M} alpha[k] * g[n-k], accumulated in order
    // k = 1..M ascending, 64-bit. This exact ordering is what makes training
    // and synthesis reconstructions bit-identical, so keep it fixed.
    double predict(int band, const double* alpha) const {
        const double* h = history_.data() + static_cast<std::size_t>(band) * order_;
        double acc = 0.0;
        for (int k = 0; k < order_; ++k) acc += alpha[k] * h[k];
        return acc;
    }

    void push(int band, double value) {
        double* h = history_.data() + static_cast<std::size_t>(band) * order_;
        for (int k = order_ - 1; k > 0; --k) h[k] = h[k - 1];
        h[0] = value;
    }

    void reset() { std::fill(history_.begin(), history_.end(), 0.0); }

private:
    int order_;
    std::vector<double> history_;  // n_bands * order, newest first per band
};

// Training targets and replay record for one signal: everything the sample
// rate network consumes or predicts, band-major per step.
struct ExcitationData {
    int n_bands = 0;
    int n_steps = 0;
    std::vector<uint16_t> excitation;   // quantized e index
    std::vector<uint16_t> signal_idx;   // mu-law index of reconstructed g
    std::vector<uint16_t> pred_idx;     // mu-law index of prediction p
    std::vector<double> prediction;     // raw p
    std::vector<double> reconstructed;  // g = p + decode(e)

    std::size_t at(int step, int band) const {
        return static_cast<std::size_t>(step) * n_bands + band;
    }
};

// Closed-loop target preparation: predictions come from the
// quantization-reconstructed history, not the clean signal, so the loop the
// network sees at training time is the same one that runs at synthesis time.
ExcitationData prepare_targets(const SubbandSignal& g, const LpcPlan& plan,
                               const MuLawCodec& codec, int steps_per_frame);

// One synthesis step of Eq.-style reconstruction: g = predict + decode(e).
// Updates state. Identical arithmetic to prepare_targets' inner loop.
double reconstruct_step(LpState& state, int band, const double* alpha, int e_idx,
                        const MuLawCodec& codec);

}  // namespace fw
