#pragma once

#include <cstdint>
#include <string>

namespace fw {

// Every tunable of the pipeline in one flat struct. Defaults are the
// production constants; schedule_scale shrinks the pruning schedule and
// iteration counts to desk scale.
struct RunConfig {
    // signal front end
    int sample_rate = 24000;
    int n_bands = 4;
    int mulaw_bits = 10;
    int lpc_order = 8;
    double preemphasis = 0.85;
    double lag_window_hz = 60.0;

    // features
    int hop = 300;
    int win_length = 1200;
    int fft_size = 2048;
    int n_mels = 80;

    // filterbank prototype
    int proto_length = 63;
    double kaiser_beta = 9.0;
    double cutoff_ratio = 0.142;

    // network
    int gru_size = 384;
    int affine_size = 128;
    int embed_size = 16;
    int conv_channels = 256;

    // sampling
    double subtract_t = 0.02;
    uint64_t seed = 42;
    int threads = 1;

    // training
    double lr = 0.001;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    int batch = 1536;        // mu-law samples per optimizer step (= seqs * window_steps * n_bands)
    int window_steps = 24;   // BPTT window length in sample-rate-network steps
    int iterations = 1200;
    int log_every = 10;

    // two-stage pruning schedule (iteration counts at paper scale,
    // divided by schedule_scale when training)
    double sparsity_warmup_target = 0.5;
    int sparsity_warmup_iters = 300000;
    int sparsity_warmup_maintain = 100000;
    double sparsity_loop_increment = 0.1;
    int sparsity_loop_ramp = 100000;
    int sparsity_loop_maintain = 100000;
    int sparsity_loops = 4;
    int schedule_scale = 1000;

    // derived
    int mu() const { return (1 << mulaw_bits) - 1; }
    int levels() const { return 1 << mulaw_bits; }
    int q_root() const { return 1 << (mulaw_bits / 2); }
    int steps_per_frame() const { return hop / n_bands; }
    int gru_input_size() const { return n_bands * 6 * embed_size + conv_channels; }
    int batch_sequences() const { return batch / (window_steps * n_bands); }

    void validate() const;  // throws ConfigError

    // flat "key = value" text, '#' comments; unknown keys rejected
    static RunConfig from_file(const std::string& path);
    void apply_override(const std::string& key_equals_value);

    std::string to_json() const;
    static RunConfig from_json(const std::string& text);
};

}  // namespace fw
