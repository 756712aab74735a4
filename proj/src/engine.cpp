#include "ampkit/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ampkit/kernels.hpp"
#include "ampkit/rng.hpp"

namespace ampkit::engine {

FirFilter::FirFilter(const std::vector<float>& taps) {
    if (taps.empty()) throw std::invalid_argument("fir: impulse response needs at least one tap");
    taps_rev_.assign(taps.rbegin(), taps.rend());
    hist_.assign(taps.size(), 0.0f);
}

void FirFilter::reset() {
    std::fill(hist_.begin(), hist_.end(), 0.0f);
    pos_ = 0;
}

float FirFilter::process_sample(float x) {
    const std::size_t n = hist_.size();
    hist_[pos_] = x;
    // y = sum_k taps[k] * x[t-k]; with reversed taps both ring segments are
    // contiguous dot products.
    const float head = kernels::dot(taps_rev_.data() + (n - 1 - pos_), hist_.data(), pos_ + 1);
    const float tail = kernels::dot(taps_rev_.data(), hist_.data() + pos_ + 1, n - 1 - pos_);
    pos_ = (pos_ + 1) % n;
    return head + tail;
}

StreamSession::StreamSession(const nn::Checkpoint& ckpt, double sample_rate, SessionOptions options)
    : ckpt_(ckpt), sample_rate_(sample_rate), opts_(options) {
    ckpt_.lstm.check_shapes();
    if (sample_rate != ckpt.sample_rate)
        throw std::invalid_argument("session: stream sample rate " + std::to_string(sample_rate) +
                                    " does not match checkpoint rate " + std::to_string(ckpt.sample_rate));
    const int k = ckpt_.num_controls();
    state_ = nn::LstmState<float>(ckpt_.hidden());
    input_vec_.assign(static_cast<std::size_t>(1 + k), 0.0f);
    gate_scratch_.assign(static_cast<std::size_t>(4 * ckpt_.hidden()), 0.0f);
    target_controls_.assign(static_cast<std::size_t>(k), 0.5);
    smoothed_controls_ = target_controls_;
    if (opts_.control_smoothing && opts_.smoothing_time_ms > 0.0)
        smooth_coeff_ = std::exp(-1000.0 / (opts_.smoothing_time_ms * sample_rate));
    for (int j = 0; j < k; ++j) input_vec_[static_cast<std::size_t>(1 + j)] = static_cast<float>(target_controls_[j]);
}

ClampReport StreamSession::set_controls(const std::vector<double>& values) {
    if (values.size() != target_controls_.size())
        throw std::invalid_argument("session: expected " + std::to_string(target_controls_.size()) +
                                    " control values, got " + std::to_string(values.size()));
    ClampReport report;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double v = values[i];
        if (v < 0.0 || v > 1.0) {
            v = std::clamp(v, 0.0, 1.0);
            report.clamped = true;
            report.clamped_indices.push_back(static_cast<int>(i));
        }
        target_controls_[i] = v;
    }
    if (!opts_.control_smoothing) {
        smoothed_controls_ = target_controls_;
        for (std::size_t j = 0; j < target_controls_.size(); ++j)
            input_vec_[1 + j] = static_cast<float>(target_controls_[j]);
    }
    return report;
}

void StreamSession::set_cabinet_ir(const std::vector<float>& taps) { ir_ = FirFilter(taps); }

void StreamSession::process_block(const float* in, float* out, std::size_t n) {
    const int k = ckpt_.num_controls();
    const bool smoothing = opts_.control_smoothing;
    const bool with_ir = ir_.length() > 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (smoothing) {
            for (int j = 0; j < k; ++j) {
                smoothed_controls_[j] =
                    target_controls_[j] + smooth_coeff_ * (smoothed_controls_[j] - target_controls_[j]);
                input_vec_[static_cast<std::size_t>(1 + j)] = static_cast<float>(smoothed_controls_[j]);
            }
        }
        input_vec_[0] = in[i];
        nn::lstm_step(ckpt_.lstm, state_, input_vec_.data(), gate_scratch_.data());
        float y = kernels::dot(ckpt_.head.w.data(), state_.h.data(), state_.h.size()) + ckpt_.head.b;
        if (with_ir) y = ir_.process_sample(y);
        out[i] = y;
    }
}

void StreamSession::reset() {
    std::fill(state_.h.begin(), state_.h.end(), 0.0f);
    std::fill(state_.c.begin(), state_.c.end(), 0.0f);
    ir_.reset();
}

std::vector<float> apply_cabinet_ir(const std::vector<float>& samples, const std::vector<float>& ir) {
    FirFilter fir(ir);
    std::vector<float> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) out[i] = fir.process_sample(samples[i]);
    return out;
}

std::vector<float> loudness_match(const std::vector<float>& samples, const std::vector<float>& reference) {
    if (samples.empty() || reference.empty()) throw std::invalid_argument("loudness match: empty signal");
    const double ref_rms = std::sqrt(kernels::sumsq(reference.data(), reference.size()) /
                                     static_cast<double>(reference.size()));
    if (ref_rms == 0.0) throw std::domain_error("loudness match: reference is silent");
    const double rms = std::sqrt(kernels::sumsq(samples.data(), samples.size()) / static_cast<double>(samples.size()));
    if (rms == 0.0) throw std::domain_error("loudness match: input is silent, no gain can match the reference");
    const float g = static_cast<float>(ref_rms / rms);
    std::vector<float> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) out[i] = samples[i] * g;
    return out;
}

BenchReport benchmark_throughput(const nn::Checkpoint& ckpt, double audio_seconds) {
    if (audio_seconds <= 0.0) throw std::invalid_argument("benchmark: duration must be positive");
    StreamSession session(ckpt, ckpt.sample_rate);

    Rng rng(42);
    constexpr std::size_t kBlock = 4096;
    std::vector<float> in(kBlock), out(kBlock);
    for (auto& s : in) s = static_cast<float>(rng.uniform(-0.5, 0.5));

    // Settle into steady state before timing.
    for (int i = 0; i < 8; ++i) session.process_block(in.data(), out.data(), kBlock);

    const auto total = static_cast<std::size_t>(audio_seconds * 48000.0);
    std::size_t done = 0;
    const auto t0 = std::chrono::steady_clock::now();
    while (done < total) {
        const std::size_t n = std::min(kBlock, total - done);
        session.process_block(in.data(), out.data(), n);
        done += n;
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    BenchReport report;
    report.hidden = ckpt.hidden();
    report.num_controls = ckpt.num_controls();
    report.seconds_measured = elapsed;
    report.samples_per_second = static_cast<double>(done) / elapsed;
    report.realtime_factor_48k = report.samples_per_second / 48000.0;
    return report;
}

BenchReport benchmark_throughput(int hidden, int num_controls, double audio_seconds, std::uint64_t seed) {
    nn::Checkpoint ckpt;
    ckpt.sample_rate = 48000.0;
    for (int i = 0; i < num_controls; ++i) ckpt.control_names.push_back("c" + std::to_string(i));
    ckpt.lstm = nn::LstmParams<float>::random_init(hidden, 1 + num_controls, seed);
    ckpt.head = nn::DenseParams<float>::random_init(hidden, seed ^ 0xbe9c);
    return benchmark_throughput(ckpt, audio_seconds);
}

} // namespace ampkit::engine
