#include "ampkit/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <stdexcept>

#include "ampkit/kernels.hpp"
#include "ampkit/rng.hpp"

namespace ampkit::nn {

namespace {

template <typename T>
void fill_uniform(std::vector<T>& v, double lo, double hi, Rng& rng) {
    for (auto& x : v) x = static_cast<T>(rng.uniform(lo, hi));
}

// One LSTM update shared by lstm_step and lstm_forward. gates (4H) receives
// the post-activation gate values; cell_tanh (H) may be null.
template <typename T>
void step_core(const LstmParams<T>& p, T* h, T* c, const T* input, T* gates, T* cell_tanh) {
    const int hs = p.hidden;
    const std::size_t rows = static_cast<std::size_t>(4 * hs);
    std::copy(p.bias.begin(), p.bias.end(), gates);
    kernels::gemv(p.w_in.data(), rows, static_cast<std::size_t>(p.input), input, gates);
    kernels::gemv(p.w_rec.data(), rows, static_cast<std::size_t>(hs), h, gates);

    T* gi = gates;
    T* gf = gates + hs;
    T* gg = gates + 2 * hs;
    T* go = gates + 3 * hs;
    kernels::sigmoid_vec(gi, gi, static_cast<std::size_t>(2 * hs)); // input + forget
    kernels::tanh_vec(gg, gg, static_cast<std::size_t>(hs));        // candidate
    kernels::sigmoid_vec(go, go, static_cast<std::size_t>(hs));     // output

    for (int j = 0; j < hs; ++j) c[j] = gf[j] * c[j] + gi[j] * gg[j];
    if (cell_tanh != nullptr) {
        kernels::tanh_vec(c, cell_tanh, static_cast<std::size_t>(hs));
        for (int j = 0; j < hs; ++j) h[j] = go[j] * cell_tanh[j];
    } else {
        T tc[512];
        T* buf = tc;
        std::vector<T> big;
        if (hs > 512) {
            big.resize(static_cast<std::size_t>(hs));
            buf = big.data();
        }
        kernels::tanh_vec(c, buf, static_cast<std::size_t>(hs));
        for (int j = 0; j < hs; ++j) h[j] = go[j] * buf[j];
    }
}

} // namespace

template <typename T>
LstmParams<T> LstmParams<T>::zeros(int hidden, int input) {
    LstmParams<T> p;
    p.hidden = hidden;
    p.input = input;
    p.w_in.assign(static_cast<std::size_t>(4 * hidden) * input, T(0));
    p.w_rec.assign(static_cast<std::size_t>(4 * hidden) * hidden, T(0));
    p.bias.assign(static_cast<std::size_t>(4 * hidden), T(0));
    return p;
}

template <typename T>
LstmParams<T> LstmParams<T>::random_init(int hidden, int input, std::uint64_t seed) {
    LstmParams<T> p = zeros(hidden, input);
    Rng rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(hidden));
    fill_uniform(p.w_in, -scale, scale, rng);
    fill_uniform(p.w_rec, -scale, scale, rng);
    return p;
}

template <typename T>
void LstmParams<T>::check_shapes() const {
    if (hidden <= 0 || input <= 0) throw std::invalid_argument("LstmParams: hidden and input sizes must be positive");
    const std::size_t rows = static_cast<std::size_t>(4 * hidden);
    if (w_in.size() != rows * static_cast<std::size_t>(input) || w_rec.size() != rows * static_cast<std::size_t>(hidden) ||
        bias.size() != rows) {
        throw std::invalid_argument("LstmParams: weight/bias shapes inconsistent with hidden=" + std::to_string(hidden) +
                                    " input=" + std::to_string(input));
    }
}

template <typename T>
DenseParams<T> DenseParams<T>::zeros(int hidden) {
    DenseParams<T> d;
    d.w.assign(static_cast<std::size_t>(hidden), T(0));
    d.b = T(0);
    return d;
}

template <typename T>
DenseParams<T> DenseParams<T>::random_init(int hidden, std::uint64_t seed) {
    DenseParams<T> d = zeros(hidden);
    Rng rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(hidden));
    fill_uniform(d.w, -scale, scale, rng);
    return d;
}

template <typename T>
void LstmCache<T>::resize(int hidden_size, int step_count) {
    hidden = hidden_size;
    steps = step_count;
    const std::size_t hs = static_cast<std::size_t>(hidden_size);
    const std::size_t ts = static_cast<std::size_t>(step_count);
    gates.resize(ts * hs * 4);
    cell.resize(ts * hs);
    cell_tanh.resize(ts * hs);
    hidden_seq.resize(ts * hs);
    h0.resize(hs);
    c0.resize(hs);
}

template <typename T>
void LstmGrads<T>::init(int hidden, int input) {
    lstm = LstmParams<T>::zeros(hidden, input);
    head = DenseParams<T>::zeros(hidden);
}

template <typename T>
void LstmGrads<T>::zero() {
    std::fill(lstm.w_in.begin(), lstm.w_in.end(), T(0));
    std::fill(lstm.w_rec.begin(), lstm.w_rec.end(), T(0));
    std::fill(lstm.bias.begin(), lstm.bias.end(), T(0));
    std::fill(head.w.begin(), head.w.end(), T(0));
    head.b = T(0);
}

template <typename T>
void lstm_step(const LstmParams<T>& params, LstmState<T>& state, const T* input, T* gate_scratch) {
    params.check_shapes();
    if (static_cast<int>(state.h.size()) != params.hidden || static_cast<int>(state.c.size()) != params.hidden) {
        throw std::invalid_argument("lstm_step: state size does not match hidden size");
    }
    step_core(params, state.h.data(), state.c.data(), input, gate_scratch, static_cast<T*>(nullptr));
}

template <typename T>
void lstm_forward(const LstmParams<T>& params, const DenseParams<T>& head, const T* inputs, int steps,
                  LstmState<T>& state, T* outputs, LstmCache<T>* cache) {
    params.check_shapes();
    if (static_cast<int>(head.w.size()) != params.hidden)
        throw std::invalid_argument("lstm_forward: head size does not match hidden size");
    if (static_cast<int>(state.h.size()) != params.hidden || static_cast<int>(state.c.size()) != params.hidden)
        throw std::invalid_argument("lstm_forward: state size does not match hidden size");
    if (steps <= 0) return;

    const int hs = params.hidden;
    const int d = params.input;
    std::vector<T> scratch;
    if (cache != nullptr) {
        cache->resize(hs, steps);
        std::copy(state.h.begin(), state.h.end(), cache->h0.begin());
        std::copy(state.c.begin(), state.c.end(), cache->c0.begin());
    } else {
        scratch.resize(static_cast<std::size_t>(4 * hs));
    }

    for (int t = 0; t < steps; ++t) {
        T* gates = cache ? cache->gates.data() + static_cast<std::size_t>(t) * 4 * hs : scratch.data();
        T* tc = cache ? cache->cell_tanh.data() + static_cast<std::size_t>(t) * hs : nullptr;
        step_core(params, state.h.data(), state.c.data(), inputs + static_cast<std::size_t>(t) * d, gates, tc);
        if (cache != nullptr) {
            std::copy(state.c.begin(), state.c.end(), cache->cell.begin() + static_cast<std::size_t>(t) * hs);
            std::copy(state.h.begin(), state.h.end(), cache->hidden_seq.begin() + static_cast<std::size_t>(t) * hs);
        }
        outputs[t] = kernels::dot(head.w.data(), state.h.data(), static_cast<std::size_t>(hs)) + head.b;
    }
}

template <typename T>
void lstm_backward(const LstmParams<T>& params, const DenseParams<T>& head, const T* inputs, int steps,
                   const LstmCache<T>& cache, const T* output_grads, LstmGrads<T>& grads, int trunc) {
    params.check_shapes();
    if (cache.steps < steps || cache.hidden != params.hidden)
        throw std::invalid_argument("lstm_backward: cache does not cover the requested segment");

    const int hs = params.hidden;
    const int d = params.input;
    const std::size_t rows = static_cast<std::size_t>(4 * hs);

    std::vector<T> dh(hs, T(0)), dc(hs, T(0)), dz(rows);

    for (int t = steps - 1; t >= 0; --t) {
        const std::size_t th = static_cast<std::size_t>(t) * hs;
        const T* gi = cache.gates.data() + static_cast<std::size_t>(t) * 4 * hs;
        const T* gf = gi + hs;
        const T* gg = gi + 2 * hs;
        const T* go = gi + 3 * hs;
        const T* c_t = cache.cell.data() + th;
        const T* tc = cache.cell_tanh.data() + th;
        const T* h_t = cache.hidden_seq.data() + th;
        const T* h_prev = (t > 0) ? cache.hidden_seq.data() + th - hs : cache.h0.data();
        const T* c_prev = (t > 0) ? cache.cell.data() + th - hs : cache.c0.data();
        (void)c_t;

        const T dy = output_grads[t];
        grads.head.b += dy;
        kernels::axpy(dy, h_t, grads.head.w.data(), static_cast<std::size_t>(hs));
        kernels::axpy(dy, head.w.data(), dh.data(), static_cast<std::size_t>(hs));

        T* dzi = dz.data();
        T* dzf = dz.data() + hs;
        T* dzg = dz.data() + 2 * hs;
        T* dzo = dz.data() + 3 * hs;
        for (int j = 0; j < hs; ++j) {
            const T dho = dh[j];
            const T dcell = dc[j] + dho * go[j] * (T(1) - tc[j] * tc[j]);
            dzi[j] = dcell * gg[j] * gi[j] * (T(1) - gi[j]);
            dzf[j] = dcell * c_prev[j] * gf[j] * (T(1) - gf[j]);
            dzg[j] = dcell * gi[j] * (T(1) - gg[j] * gg[j]);
            dzo[j] = dho * tc[j] * go[j] * (T(1) - go[j]);
            dc[j] = dcell * gf[j];
        }

        for (std::size_t r = 0; r < rows; ++r) grads.lstm.bias[r] += dz[r];
        kernels::ger(grads.lstm.w_in.data(), rows, static_cast<std::size_t>(d), dz.data(),
                     inputs + static_cast<std::size_t>(t) * d);
        kernels::ger(grads.lstm.w_rec.data(), rows, static_cast<std::size_t>(hs), dz.data(), h_prev);

        std::fill(dh.begin(), dh.end(), T(0));
        kernels::gemv_t(params.w_rec.data(), rows, static_cast<std::size_t>(hs), dz.data(), dh.data());

        if (trunc > 0 && t % trunc == 0) {
            // Truncated BPTT: no gradient flows into the previous window.
            std::fill(dh.begin(), dh.end(), T(0));
            std::fill(dc.begin(), dc.end(), T(0));
        }
    }
}

template <typename T>
ConvParams<T> ConvParams<T>::zeros(int out_ch, int in_ch, int taps, Activation act) {
    ConvParams<T> p;
    p.out_ch = out_ch;
    p.in_ch = in_ch;
    p.taps = taps;
    p.act = act;
    p.w.assign(static_cast<std::size_t>(taps) * out_ch * in_ch, T(0));
    p.bias.assign(static_cast<std::size_t>(out_ch), T(0));
    return p;
}

template <typename T>
ConvParams<T> ConvParams<T>::random_init(int out_ch, int in_ch, int taps, Activation act, std::uint64_t seed) {
    ConvParams<T> p = zeros(out_ch, in_ch, taps, act);
    Rng rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(in_ch * taps));
    fill_uniform(p.w, -scale, scale, rng);
    return p;
}

template <typename T>
void ConvParams<T>::check_shapes() const {
    if (out_ch <= 0 || in_ch <= 0 || taps <= 0) throw std::invalid_argument("ConvParams: dimensions must be positive");
    if (w.size() != static_cast<std::size_t>(taps) * out_ch * in_ch || bias.size() != static_cast<std::size_t>(out_ch))
        throw std::invalid_argument("ConvParams: weight/bias shapes inconsistent");
}

template <typename T>
void conv_forward(const ConvParams<T>& params, const T* inputs, int steps, T* outputs,
                  std::vector<T>* pre_act_cache) {
    params.check_shapes();
    if (steps <= 0) throw std::invalid_argument("conv_forward: input sequence must be nonempty");
    const int p = params.out_ch;
    const int q = params.in_ch;
    if (pre_act_cache != nullptr) pre_act_cache->resize(static_cast<std::size_t>(steps) * p);

    for (int t = 0; t < steps; ++t) {
        T* y = outputs + static_cast<std::size_t>(t) * p;
        std::copy(params.bias.begin(), params.bias.end(), y);
        const int last_tap = std::min(params.taps - 1, t);
        for (int i = 0; i <= last_tap; ++i) {
            const T* w_i = params.w.data() + static_cast<std::size_t>(i) * p * q;
            const T* x = inputs + static_cast<std::size_t>(t - i) * q;
            kernels::gemv(w_i, static_cast<std::size_t>(p), static_cast<std::size_t>(q), x, y);
        }
        if (pre_act_cache != nullptr)
            std::copy(y, y + p, pre_act_cache->begin() + static_cast<std::size_t>(t) * p);
        if (params.act == Activation::tanh) kernels::tanh_vec(y, y, static_cast<std::size_t>(p));
    }
}

template <typename T>
void conv_backward(const ConvParams<T>& params, const T* inputs, int steps, const T* pre_act,
                   const T* output_grads, ConvParams<T>& grads, T* input_grads) {
    params.check_shapes();
    const int p = params.out_ch;
    const int q = params.in_ch;
    std::vector<T> dpre(static_cast<std::size_t>(p));
    std::vector<T> th(static_cast<std::size_t>(p));

    for (int t = steps - 1; t >= 0; --t) {
        const T* dy = output_grads + static_cast<std::size_t>(t) * p;
        if (params.act == Activation::tanh) {
            kernels::tanh_vec(pre_act + static_cast<std::size_t>(t) * p, th.data(), static_cast<std::size_t>(p));
            for (int o = 0; o < p; ++o) dpre[o] = dy[o] * (T(1) - th[o] * th[o]);
        } else {
            std::copy(dy, dy + p, dpre.begin());
        }
        for (int o = 0; o < p; ++o) grads.bias[o] += dpre[o];
        const int last_tap = std::min(params.taps - 1, t);
        for (int i = 0; i <= last_tap; ++i) {
            const std::size_t off = static_cast<std::size_t>(i) * p * q;
            const T* x = inputs + static_cast<std::size_t>(t - i) * q;
            kernels::ger(grads.w.data() + off, static_cast<std::size_t>(p), static_cast<std::size_t>(q), dpre.data(), x);
            if (input_grads != nullptr) {
                kernels::gemv_t(params.w.data() + off, static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                                dpre.data(), input_grads + static_cast<std::size_t>(t - i) * q);
            }
        }
    }
}

template <typename T>
AdamState<T>::AdamState(std::size_t total_params, AdamConfig<T> config)
    : cfg(config), step_count(0), m(total_params, T(0)), v(total_params, T(0)) {}

template <typename T>
void adam_update(AdamState<T>& state, std::span<const std::span<T>> params,
                 std::span<const std::span<const T>> grads) {
    if (params.size() != grads.size()) throw std::invalid_argument("adam_update: parameter/gradient view mismatch");
    std::size_t total = 0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i].size() != grads[i].size())
            throw std::invalid_argument("adam_update: parameter/gradient span size mismatch");
        total += params[i].size();
    }
    if (total != state.m.size()) throw std::invalid_argument("adam_update: state size does not match parameter count");

    state.step_count += 1;
    const double b1 = static_cast<double>(state.cfg.beta1);
    const double b2 = static_cast<double>(state.cfg.beta2);
    const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.step_count));
    const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.step_count));
    const double lr = static_cast<double>(state.cfg.lr);
    const double eps = static_cast<double>(state.cfg.eps);

    std::size_t k = 0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        T* p = params[i].data();
        const T* g = grads[i].data();
        const std::size_t n = params[i].size();
        for (std::size_t j = 0; j < n; ++j, ++k) {
            const double gj = static_cast<double>(g[j]);
            const double mj = b1 * static_cast<double>(state.m[k]) + (1.0 - b1) * gj;
            const double vj = b2 * static_cast<double>(state.v[k]) + (1.0 - b2) * gj * gj;
            state.m[k] = static_cast<T>(mj);
            state.v[k] = static_cast<T>(vj);
            const double mhat = mj / bc1;
            const double vhat = vj / bc2;
            p[j] = static_cast<T>(static_cast<double>(p[j]) - lr * mhat / (std::sqrt(vhat) + eps));
        }
    }
}

template <typename T>
std::vector<std::span<T>> param_views(LstmParams<T>& p, DenseParams<T>& head) {
    return {std::span<T>(p.w_in), std::span<T>(p.w_rec), std::span<T>(p.bias), std::span<T>(head.w),
            std::span<T>(&head.b, 1)};
}

template <typename T>
std::vector<std::span<const T>> grad_views(const LstmGrads<T>& g) {
    return {std::span<const T>(g.lstm.w_in), std::span<const T>(g.lstm.w_rec), std::span<const T>(g.lstm.bias),
            std::span<const T>(g.head.w), std::span<const T>(&g.head.b, 1)};
}

namespace {

GradCheckReport compare_grads(std::vector<double>& analytic, const std::function<double(void)>& loss_fn,
                              const std::function<double*(std::size_t)>& param_at, double tolerance,
                              double fd_step, int fault_injection_index) {
    if (fault_injection_index >= 0 && static_cast<std::size_t>(fault_injection_index) < analytic.size())
        analytic[static_cast<std::size_t>(fault_injection_index)] *= 2.0;

    GradCheckReport report;
    report.tolerance = tolerance;
    report.params_checked = analytic.size();
    for (std::size_t k = 0; k < analytic.size(); ++k) {
        double* p = param_at(k);
        const double saved = *p;
        *p = saved + fd_step;
        const double lp = loss_fn();
        *p = saved - fd_step;
        const double lm = loss_fn();
        *p = saved;
        const double numeric = (lp - lm) / (2.0 * fd_step);
        const double denom = std::max(std::abs(analytic[k]), std::abs(numeric));
        const double err = denom < 1e-10 ? std::abs(analytic[k] - numeric) : std::abs(analytic[k] - numeric) / denom;
        if (err > report.max_rel_err) {
            report.max_rel_err = err;
            report.worst_index = k;
        }
    }
    report.pass = report.max_rel_err < tolerance;
    return report;
}

} // namespace

GradCheckReport gradient_check_lstm(int hidden, int input_dim, int steps, double tolerance, std::uint64_t seed,
                                    double fd_step, int fault_injection_index) {
    auto params = LstmParams<double>::random_init(hidden, input_dim, seed);
    auto head = DenseParams<double>::random_init(hidden, seed + 1);
    Rng rng(seed + 2);
    std::vector<double> inputs(static_cast<std::size_t>(steps) * input_dim);
    std::vector<double> targets(static_cast<std::size_t>(steps));
    for (auto& x : inputs) x = rng.uniform(-1.0, 1.0);
    for (auto& y : targets) y = rng.uniform(-1.0, 1.0);

    std::vector<double> outputs(static_cast<std::size_t>(steps));
    const auto loss_fn = [&]() {
        LstmState<double> st(hidden);
        lstm_forward(params, head, inputs.data(), steps, st, outputs.data());
        double acc = 0.0;
        for (int t = 0; t < steps; ++t) {
            const double e = outputs[t] - targets[t];
            acc += e * e;
        }
        return acc / steps;
    };

    LstmState<double> st(hidden);
    LstmCache<double> cache;
    lstm_forward(params, head, inputs.data(), steps, st, outputs.data(), &cache);
    std::vector<double> dy(static_cast<std::size_t>(steps));
    for (int t = 0; t < steps; ++t) dy[t] = 2.0 * (outputs[t] - targets[t]) / steps;
    LstmGrads<double> grads;
    grads.init(hidden, input_dim);
    grads.zero();
    lstm_backward(params, head, inputs.data(), steps, cache, dy.data(), grads);

    std::vector<double> analytic;
    for (const auto v : grad_views(grads))
        analytic.insert(analytic.end(), v.begin(), v.end());

    auto views = param_views(params, head);
    const auto param_at = [views](std::size_t k) -> double* {
        for (const auto& v : views) {
            if (k < v.size()) return v.data() + k;
            k -= v.size();
        }
        throw std::out_of_range("gradient_check: parameter index out of range");
    };
    return compare_grads(analytic, loss_fn, param_at, tolerance, fd_step, fault_injection_index);
}

GradCheckReport gradient_check_conv(int out_ch, int in_ch, int taps, int steps, double tolerance, std::uint64_t seed,
                                    double fd_step, int fault_injection_index) {
    auto params = ConvParams<double>::random_init(out_ch, in_ch, taps, Activation::tanh, seed);
    Rng rng(seed + 2);
    std::vector<double> inputs(static_cast<std::size_t>(steps) * in_ch);
    std::vector<double> targets(static_cast<std::size_t>(steps) * out_ch);
    for (auto& x : inputs) x = rng.uniform(-1.0, 1.0);
    for (auto& y : targets) y = rng.uniform(-1.0, 1.0);

    std::vector<double> outputs(targets.size());
    const auto loss_fn = [&]() {
        conv_forward(params, inputs.data(), steps, outputs.data());
        double acc = 0.0;
        for (std::size_t i = 0; i < outputs.size(); ++i) {
            const double e = outputs[i] - targets[i];
            acc += e * e;
        }
        return acc / static_cast<double>(outputs.size());
    };

    std::vector<double> pre_act;
    conv_forward(params, inputs.data(), steps, outputs.data(), &pre_act);
    std::vector<double> dy(outputs.size());
    for (std::size_t i = 0; i < outputs.size(); ++i)
        dy[i] = 2.0 * (outputs[i] - targets[i]) / static_cast<double>(outputs.size());
    auto grads = ConvParams<double>::zeros(out_ch, in_ch, taps, Activation::tanh);
    conv_backward(params, inputs.data(), steps, pre_act.data(), dy.data(), grads);

    std::vector<double> analytic(grads.w.begin(), grads.w.end());
    analytic.insert(analytic.end(), grads.bias.begin(), grads.bias.end());

    const auto param_at = [&params](std::size_t k) -> double* {
        if (k < params.w.size()) return params.w.data() + k;
        return params.bias.data() + (k - params.w.size());
    };
    return compare_grads(analytic, loss_fn, param_at, tolerance, fd_step, fault_injection_index);
}

// Explicit instantiations: float is the production path, double backs
// verification.
template struct LstmParams<float>;
template struct LstmParams<double>;
template struct DenseParams<float>;
template struct DenseParams<double>;
template struct LstmCache<float>;
template struct LstmCache<double>;
template struct LstmGrads<float>;
template struct LstmGrads<double>;
template struct ConvParams<float>;
template struct ConvParams<double>;
template struct AdamState<float>;
template struct AdamState<double>;

template void lstm_step<float>(const LstmParams<float>&, LstmState<float>&, const float*, float*);
template void lstm_step<double>(const LstmParams<double>&, LstmState<double>&, const double*, double*);
template void lstm_forward<float>(const LstmParams<float>&, const DenseParams<float>&, const float*, int,
                                  LstmState<float>&, float*, LstmCache<float>*);
template void lstm_forward<double>(const LstmParams<double>&, const DenseParams<double>&, const double*, int,
                                   LstmState<double>&, double*, LstmCache<double>*);
template void lstm_backward<float>(const LstmParams<float>&, const DenseParams<float>&, const float*, int,
                                   const LstmCache<float>&, const float*, LstmGrads<float>&, int);
template void lstm_backward<double>(const LstmParams<double>&, const DenseParams<double>&, const double*, int,
                                    const LstmCache<double>&, const double*, LstmGrads<double>&, int);
template void conv_forward<float>(const ConvParams<float>&, const float*, int, float*, std::vector<float>*);
template void conv_forward<double>(const ConvParams<double>&, const double*, int, double*, std::vector<double>*);
template void conv_backward<float>(const ConvParams<float>&, const float*, int, const float*, const float*,
                                   ConvParams<float>&, float*);
template void conv_backward<double>(const ConvParams<double>&, const double*, int, const double*, const double*,
                                    ConvParams<double>&, double*);
template void adam_update<float>(AdamState<float>&, std::span<const std::span<float>>,
                                 std::span<const std::span<const float>>);
template void adam_update<double>(AdamState<double>&, std::span<const std::span<double>>,
                                  std::span<const std::span<const double>>);
template std::vector<std::span<float>> param_views<float>(LstmParams<float>&, DenseParams<float>&);
template std::vector<std::span<double>> param_views<double>(LstmParams<double>&, DenseParams<double>&);
template std::vector<std::span<const float>> grad_views<float>(const LstmGrads<float>&);
template std::vector<std::span<const double>> grad_views<double>(const LstmGrads<double>&);

} // namespace ampkit::nn
