#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ampkit::nn {

// Single-layer LSTM with a scalar affine output head, a causal 1-D
// convolution layer, and Adam. Everything is templated on the scalar type:
// float is the training/inference precision, double backs the gradient
// checker. All definitions live in nn.cpp (explicitly instantiated) so each
// step function is compiled exactly once — block-size invariance and
// trainer/engine equality then hold bit-exactly by construction.

enum class Activation { tanh, identity };

// Gate rows are stacked [input; forget; cell; output], each block `hidden`
// rows tall.
template <typename T>
struct LstmParams {
    int hidden = 0; // H
    int input = 0;  // D = 1 audio channel + K control channels
    std::vector<T> w_in;  // [4H x D] row-major
    std::vector<T> w_rec; // [4H x H] row-major
    std::vector<T> bias;  // [4H]

    static LstmParams zeros(int hidden, int input);
    // Uniform in +-1/sqrt(hidden) for weights, zero biases.
    static LstmParams random_init(int hidden, int input, std::uint64_t seed);
    std::size_t param_count() const { return w_in.size() + w_rec.size() + bias.size(); }
    void check_shapes() const; // throws std::invalid_argument on inconsistency
};

template <typename T>
struct LstmState {
    std::vector<T> h; // [H], tanh-bounded
    std::vector<T> c; // [H]
    LstmState() = default;
    explicit LstmState(int hidden) : h(hidden, T(0)), c(hidden, T(0)) {}
};

template <typename T>
struct DenseParams {
    std::vector<T> w; // [H]
    T b = T(0);
    static DenseParams zeros(int hidden);
    static DenseParams random_init(int hidden, std::uint64_t seed);
};

// Per-step activations recorded by lstm_forward for backpropagation through
// time. Buffers are reused across calls via resize().
template <typename T>
struct LstmCache {
    int hidden = 0;
    int steps = 0;
    std::vector<T> gates;     // [T x 4H], post-activation i,f,g,o
    std::vector<T> cell;      // [T x H]
    std::vector<T> cell_tanh; // [T x H]
    std::vector<T> hidden_seq;// [T x H]
    std::vector<T> h0, c0;    // state the sequence started from
    void resize(int hidden, int steps);
};

template <typename T>
struct LstmGrads {
    LstmParams<T> lstm;
    DenseParams<T> head;
    void init(int hidden, int input);
    void zero();
};

// One recurrence update. `input` has params.input entries; `gate_scratch`
// must hold 4H values. Writes the new state into `state`.
template <typename T>
void lstm_step(const LstmParams<T>& params, LstmState<T>& state, const T* input, T* gate_scratch);

// Runs `steps` updates from `state` (modified in place to the final state)
// and applies the head per step: outputs[t] = head.w . h_t + head.b.
// steps == 0 is a no-op. Pass a cache to record activations for backward.
template <typename T>
void lstm_forward(const LstmParams<T>& params, const DenseParams<T>& head,
                  const T* inputs /* [steps x D] */, int steps,
                  LstmState<T>& state, T* outputs /* [steps] */,
                  LstmCache<T>* cache = nullptr);

// Backpropagation through time over the cached segment. output_grads[t] is
// dLoss/d outputs[t]. Gradients are accumulated into `grads` (call zero()
// first for a fresh segment). trunc > 0 stops gradient flow across window
// boundaries every `trunc` steps (truncated BPTT); 0 means full segment.
template <typename T>
void lstm_backward(const LstmParams<T>& params, const DenseParams<T>& head,
                   const T* inputs, int steps, const LstmCache<T>& cache,
                   const T* output_grads, LstmGrads<T>& grads, int trunc = 0);

// Causal 1-D convolution: out_t = act(sum_i W_i x_{t-i} + b), zero left pad.
template <typename T>
struct ConvParams {
    int out_ch = 0; // p
    int in_ch = 0;  // q
    int taps = 0;   // n + 1
    std::vector<T> w;    // [taps x out_ch x in_ch]; w[(i*p + o)*q + c] is W_i[o][c]
    std::vector<T> bias; // [p]
    Activation act = Activation::tanh;

    static ConvParams zeros(int out_ch, int in_ch, int taps, Activation act);
    static ConvParams random_init(int out_ch, int in_ch, int taps, Activation act, std::uint64_t seed);
    std::size_t param_count() const { return w.size() + bias.size(); }
    void check_shapes() const;
};

// outputs must hold [steps x p]. Optionally records pre-activation values
// ([steps x p]) for backward.
template <typename T>
void conv_forward(const ConvParams<T>& params, const T* inputs /* [steps x q] */, int steps,
                  T* outputs, std::vector<T>* pre_act_cache = nullptr);

// Accumulates parameter gradients into `grads` (shape-matching ConvParams,
// zeroed by caller); when input_grads is non-null, also accumulates
// dLoss/dinputs ([steps x q]).
template <typename T>
void conv_backward(const ConvParams<T>& params, const T* inputs, int steps,
                   const T* pre_act /* [steps x p] */, const T* output_grads /* [steps x p] */,
                   ConvParams<T>& grads, T* input_grads = nullptr);

// ---- Adam ----

template <typename T>
struct AdamConfig {
    T lr = T(1e-3);
    T beta1 = T(0.9);
    T beta2 = T(0.999);
    T eps = T(1e-8);
};

template <typename T>
struct AdamState {
    AdamConfig<T> cfg;
    long step_count = 0;
    std::vector<T> m; // first moment, flat over all parameters
    std::vector<T> v; // second moment
    AdamState() = default;
    AdamState(std::size_t total_params, AdamConfig<T> cfg);
};

// Parameters and grads are flat views in matching order; the concatenated
// lengths must equal the state size. Standard bias-corrected Adam.
template <typename T>
void adam_update(AdamState<T>& state, std::span<const std::span<T>> params,
                 std::span<const std::span<const T>> grads);

// Flat views over an LSTM + head parameter set, in serialization order.
template <typename T>
std::vector<std::span<T>> param_views(LstmParams<T>& p, DenseParams<T>& head);
template <typename T>
std::vector<std::span<const T>> grad_views(const LstmGrads<T>& g);

// ---- Gradient checking ----

struct GradCheckReport {
    double max_rel_err = 0.0;
    std::size_t worst_index = 0;
    std::size_t params_checked = 0;
    double tolerance = 0.0;
    bool pass = false;
};

// Central finite differences against the analytic backward pass on a seeded
// random instance, double precision, MSE loss vs a random target.
// fault_injection_index >= 0 doubles that analytic gradient component first
// (self-test that the checker catches wrong gradients).
GradCheckReport gradient_check_lstm(int hidden, int input_dim, int steps, double tolerance,
                                    std::uint64_t seed, double fd_step = 1e-5,
                                    int fault_injection_index = -1);
GradCheckReport gradient_check_conv(int out_ch, int in_ch, int taps, int steps, double tolerance,
                                    std::uint64_t seed, double fd_step = 1e-5,
                                    int fault_injection_index = -1);

} // namespace ampkit::nn
