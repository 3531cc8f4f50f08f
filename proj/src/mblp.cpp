#include "featherwave/mblp.hpp"

#include "featherwave/errors.hpp"

namespace fw {

ExcitationData prepare_targets(const SubbandSignal& g, const LpcPlan& plan,
                               const MuLawCodec& codec, int steps_per_frame) {
    const int n_bands = g.n_bands;
    const int n_steps = static_cast<int>(g.length_per_band());
    if (plan.n_bands != n_bands)
        throw StructureError("prepare_targets: plan/signal band count mismatch");
    if (static_cast<long long>(plan.n_frames) * steps_per_frame < n_steps)
        throw StructureError("prepare_targets: plan does not cover all steps");

    ExcitationData data;
    data.n_bands = n_bands;
    data.n_steps = n_steps;
    const std::size_t total = static_cast<std::size_t>(n_steps) * n_bands;
    data.excitation.resize(total);
    data.signal_idx.resize(total);
    data.pred_idx.resize(total);
    data.prediction.resize(total);
    data.reconstructed.resize(total);

    LpState state(n_bands, plan.order);
    for (int n = 0; n < n_steps; ++n) {
        const int frame = n / steps_per_frame;
        for (int b = 0; b < n_bands; ++b) {
            const double* alpha = plan.at(frame, b);
            const double p = state.predict(b, alpha);
            const double e = g.channels[b][n] - p;
            const int e_idx = codec.encode(e);
            const double g_rec = p + codec.decode(e_idx);
            state.push(b, g_rec);

            const std::size_t i = data.at(n, b);
            data.excitation[i] = static_cast<uint16_t>(e_idx);
            data.signal_idx[i] = static_cast<uint16_t>(codec.encode(g_rec));
            data.pred_idx[i] = static_cast<uint16_t>(codec.encode(p));
            data.prediction[i] = p;
            data.reconstructed[i] = g_rec;
        }
    }
    return data;
}

double reconstruct_step(LpState& state, int band, const double* alpha, int e_idx,
                        const MuLawCodec& codec) {
    const double p = state.predict(band, alpha);
    const double g = p + codec.decode(e_idx);  // decode() validates the index
    state.push(band, g);
    return g;
}

}  // namespace fw
