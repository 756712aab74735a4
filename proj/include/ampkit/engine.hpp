#pragma once

#include <cstdint>
#include <vector>

#include "ampkit/checkpoint.hpp"
#include "ampkit/nn.hpp"

namespace ampkit::engine {

// Streaming FIR used for cabinet impulse responses; ring-buffer state makes
// it block-size invariant.
class FirFilter {
public:
    FirFilter() = default;
    explicit FirFilter(const std::vector<float>& taps);
    void reset();
    float process_sample(float x);
    std::size_t length() const { return taps_rev_.size(); }

private:
    std::vector<float> taps_rev_; // reversed so both ring halves are plain dots
    std::vector<float> hist_;
    std::size_t pos_ = 0;
};

struct SessionOptions {
    // Optional one-pole smoothing of control moves (an extension; wired off
    // by default so control changes land on the very next sample).
    bool control_smoothing = false;
    double smoothing_time_ms = 20.0;
};

struct ClampReport {
    bool clamped = false;
    std::vector<int> clamped_indices;
};

// One real-time stream: conditioned sample-by-sample LSTM inference with
// live controls and an optional cabinet IR after the model. No allocation
// and no I/O happen in process_block once the session is built. A session
// is single-stream: use from one thread at a time.
class StreamSession {
public:
    StreamSession(const nn::Checkpoint& ckpt, double sample_rate, SessionOptions options = {});

    // Clamps out-of-range values to [0,1] and reports which were clamped;
    // new values take effect from the next processed sample.
    ClampReport set_controls(const std::vector<double>& values);
    const std::vector<double>& controls() const { return target_controls_; }

    void set_cabinet_ir(const std::vector<float>& taps);
    bool has_cabinet_ir() const { return ir_.length() > 0; }

    void process_block(const float* in, float* out, std::size_t n);
    void reset(); // zero LSTM and IR state, keep controls

    const nn::Checkpoint& checkpoint() const { return ckpt_; }
    double sample_rate() const { return sample_rate_; }

private:
    nn::Checkpoint ckpt_;
    double sample_rate_ = 0.0;
    SessionOptions opts_;
    double smooth_coeff_ = 0.0;
    nn::LstmState<float> state_;
    std::vector<float> input_vec_;    // [1 + K]
    std::vector<float> gate_scratch_; // [4H]
    std::vector<double> target_controls_;
    std::vector<double> smoothed_controls_;
    FirFilter ir_;
};

// Offline convenience: full-signal FIR convolution (same math as the
// streaming path). IR must be nonempty.
std::vector<float> apply_cabinet_ir(const std::vector<float>& samples, const std::vector<float>& ir);

// Scales samples so their RMS matches the reference RMS. Errors on a silent
// reference or silent input (no gain can match them).
std::vector<float> loudness_match(const std::vector<float>& samples, const std::vector<float>& reference);

struct BenchReport {
    int hidden = 0;
    int num_controls = 0;
    double seconds_measured = 0.0;
    double samples_per_second = 0.0;
    double realtime_factor_48k = 0.0;
};

// Single-stream steady-state throughput of the model forward pass; the
// real-time factor is measured against 48 kHz regardless of the model's
// training rate.
BenchReport benchmark_throughput(const nn::Checkpoint& ckpt, double audio_seconds);
BenchReport benchmark_throughput(int hidden, int num_controls, double audio_seconds, std::uint64_t seed);

} // namespace ampkit::engine
