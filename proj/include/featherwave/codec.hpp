#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "featherwave/errors.hpp"

namespace fw {

// mu-law companding quantizer with a coarse/fine index split.
//
// Encode: F(x) = sign(x) * ln(1 + mu|x|)/ln(1 + mu), then a mid-rise uniform
// quantizer over the companded domain. Decode maps an index to its companded
// bin center and inverts F, which makes encode(decode(i)) == i exact for
// every index.
class MuLawCodec {
public:
    explicit MuLawCodec(int bits = 10) : bits_(bits) {
        if (bits <= 0 || bits % 2 != 0)
            throw ConfigError("mu-law bits must be positive and even");
        mu_ = (1 << bits_) - 1;
        levels_ = 1 << bits_;
        q_ = 1 << (bits_ / 2);
        log1p_mu_ = std::log1p(static_cast<double>(mu_));
        decode_table_.resize(levels_);
        for (int i = 0; i < levels_; ++i) {
            const double v = (2.0 * i + 1.0) / levels_ - 1.0;  // bin center in [-1, 1]
            const double mag = (std::exp(std::abs(v) * log1p_mu_) - 1.0) / mu_;
            decode_table_[i] = v < 0 ? -mag : mag;
        }
    }

    int bits() const { return bits_; }
    int mu() const { return mu_; }
    int levels() const { return levels_; }
    int q_root() const { return q_; }

    // Saturating: x outside [-1, 1] clips, never errors.
    int encode(double x) const {
        if (x > 1.0) x = 1.0;
        if (x < -1.0) x = -1.0;
        const double f = std::copysign(std::log1p(mu_ * std::abs(x)) / log1p_mu_, x);
        int idx = static_cast<int>(std::floor((f + 1.0) * 0.5 * levels_));
        if (idx < 0) idx = 0;
        if (idx >= levels_) idx = levels_ - 1;
        return idx;
    }

    // Decode to bin center. Table-backed so every call site (target
    // preparation, synthesis replay) sees bit-identical values.
    double decode(int index) const {
        if (index < 0 || index >= levels_)
            throw StructureError("mu-law index out of range: " + std::to_string(index));
        return decode_table_[index];
    }

    std::pair<int, int> split_coarse_fine(int index) const {
        if (index < 0 || index >= levels_)
            throw StructureError("split: index out of range: " + std::to_string(index));
        return {index / q_, index % q_};
    }

    int combine(int coarse, int fine) const {
        if (coarse < 0 || coarse >= q_ || fine < 0 || fine >= q_)
            throw StructureError("combine: coarse/fine out of range");
        return coarse * q_ + fine;
    }

private:
    int bits_, mu_, levels_, q_;
    double log1p_mu_;
    std::vector<double> decode_table_;
};

// y[n] = x[n] - alpha * x[n-1], x[-1] = 0
inline std::vector<double> pre_emphasis(const std::vector<double>& x, double alpha) {
    std::vector<double> y(x.size());
    double prev = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        y[n] = x[n] - alpha * prev;
        prev = x[n];
    }
    return y;
}

// Inverse recursion y[n] = x[n] + alpha * y[n-1]
inline std::vector<double> de_emphasis(const std::vector<double>& x, double alpha) {
    std::vector<double> y(x.size());
    double prev = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        prev = x[n] + alpha * prev;
        y[n] = prev;
    }
    return y;
}

}  // namespace fw
