#include "ampkit/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "ampkit/kernels.hpp"
#include "ampkit/rng.hpp"
#include "ampkit/virtualrig.hpp"
#include "ampkit/wav.hpp"

namespace ampkit::train {

void TrainConfig::validate_against(const data::Dataset& dataset) const {
    if (hidden < 1) throw std::invalid_argument("train: hidden size must be positive");
    if (batch_size < 1) throw std::invalid_argument("train: batch size must be positive");
    if (iterations < 1) throw std::invalid_argument("train: iteration count must be positive");
    if (!(lr > 0.0)) throw std::invalid_argument("train: learning rate must be positive");
    if (warmup_samples < 0 || warmup_samples >= dataset.segment_length)
        throw std::invalid_argument("train: warmup_samples must be in [0, segment_length)");
    if (threads < 1) throw std::invalid_argument("train: thread count must be positive");
    if (dataset.split_indices(data::Split::train).empty()) throw std::runtime_error("train: train split is empty");
}

template <typename T>
double mse_loss(const T* pred, const T* target, int batch, int steps) {
    if (batch < 1 || steps < 1) throw std::invalid_argument("mse_loss: empty block");
    const std::size_t n = static_cast<std::size_t>(batch) * steps;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = static_cast<double>(pred[i]) - static_cast<double>(target[i]);
        acc += e * e;
    }
    return acc / static_cast<double>(n);
}

template <typename T>
double esr_loss(const T* pred, const T* target, int batch, int steps) {
    if (batch < 1 || steps < 1) throw std::invalid_argument("esr_loss: empty block");
    const std::size_t n = static_cast<std::size_t>(batch) * steps;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = static_cast<double>(pred[i]) - static_cast<double>(target[i]);
        const double y = static_cast<double>(target[i]);
        num += e * e;
        den += y * y;
    }
    if (den == 0.0) throw std::domain_error("esr_loss: target energy is zero, ratio undefined");
    return num / den;
}

template double mse_loss<float>(const float*, const float*, int, int);
template double mse_loss<double>(const double*, const double*, int, int);
template double esr_loss<float>(const float*, const float*, int, int);
template double esr_loss<double>(const double*, const double*, int, int);

namespace {

// Per-thread training workspace; reused across iterations.
struct Workspace {
    std::vector<float> cond;    // [S x D] conditioned inputs
    std::vector<float> outputs; // [S]
    std::vector<float> dy;      // [S]
    nn::LstmCache<float> cache;
    nn::LstmGrads<float> grads;
    double err_energy = 0.0; // warm-up-excluded, this thread's elements
};

// Forward + BPTT for one batch element; dy scale (dLoss/d err) is the same
// for every element because both losses normalize by batch-level constants.
void accumulate_element(const nn::LstmParams<float>& params, const nn::DenseParams<float>& head,
                        const data::Minibatch& mb, int b, int warmup, int bptt_window, double dy_scale,
                        Workspace& ws) {
    const int steps = mb.segment_length;
    const int d = 1 + mb.num_controls;
    ws.cond.resize(static_cast<std::size_t>(steps) * d);
    const float* x = mb.input(b);
    const double* c = mb.control_row(b);
    for (int t = 0; t < steps; ++t) {
        float* row = ws.cond.data() + static_cast<std::size_t>(t) * d;
        row[0] = x[t];
        for (int k = 0; k < mb.num_controls; ++k) row[1 + k] = static_cast<float>(c[k]);
    }

    ws.outputs.resize(static_cast<std::size_t>(steps));
    ws.dy.resize(static_cast<std::size_t>(steps));
    nn::LstmState<float> state(params.hidden);
    nn::lstm_forward(params, head, ws.cond.data(), steps, state, ws.outputs.data(), &ws.cache);

    const float* y = mb.target(b);
    for (int t = 0; t < steps; ++t) {
        if (t < warmup) {
            ws.dy[t] = 0.0f;
            continue;
        }
        const double e = static_cast<double>(ws.outputs[t]) - static_cast<double>(y[t]);
        ws.err_energy += e * e;
        ws.dy[t] = static_cast<float>(dy_scale * e);
    }
    nn::lstm_backward(params, head, ws.cond.data(), steps, ws.cache, ws.dy.data(), ws.grads, bptt_window);
}

double scored_target_energy(const data::Minibatch& mb, int warmup) {
    double den = 0.0;
    for (int b = 0; b < mb.batch; ++b) {
        const float* y = mb.target(b) + warmup;
        den += kernels::sumsq(y, static_cast<std::size_t>(mb.segment_length - warmup));
    }
    return den;
}

std::string join_ids(const data::Dataset& ds, const std::vector<std::size_t>& indices) {
    std::string s;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i > 0) s += ",";
        s += ds.entries[indices[i]].id;
    }
    return s;
}

double run_validation(const nn::LstmParams<float>& params, const nn::DenseParams<float>& head,
                      const data::Dataset& dataset, int warmup, nn::Checkpoint& scratch_ckpt) {
    scratch_ckpt.lstm = params;
    scratch_ckpt.head = head;
    return validate(scratch_ckpt, dataset, data::Split::val, warmup).mean_esr;
}

} // namespace

TrainResult train(const data::Dataset& dataset, const TrainConfig& config) {
    config.validate_against(dataset);
    const auto t_start = std::chrono::steady_clock::now();

    const int k = dataset.num_controls();
    const int d = 1 + k;
    const int steps = dataset.segment_length;
    const int warmup = config.warmup_samples;
    const int scored = steps - warmup;

    auto params = nn::LstmParams<float>::random_init(config.hidden, d, config.seed);
    auto head = nn::DenseParams<float>::random_init(config.hidden, config.seed ^ 0x8ead);

    nn::AdamConfig<float> adam_cfg;
    adam_cfg.lr = static_cast<float>(config.lr);
    adam_cfg.beta1 = static_cast<float>(config.beta1);
    adam_cfg.beta2 = static_cast<float>(config.beta2);
    adam_cfg.eps = static_cast<float>(config.eps);
    nn::AdamState<float> adam(params.param_count() + head.w.size() + 1, adam_cfg);

    data::MinibatchIter iter(dataset, config.batch_size, config.seed);
    const bool have_val = !dataset.split_indices(data::Split::val).empty();

    nn::Checkpoint ckpt;
    ckpt.sample_rate = dataset.sample_rate;
    for (const auto& c : dataset.controls) ckpt.control_names.push_back(c.name);

    TrainResult result;
    TrainReport& report = result.report;
    report.train_loss.reserve(static_cast<std::size_t>(config.iterations));

    nn::LstmParams<float> best_params = params;
    nn::DenseParams<float> best_head = head;

    const int threads = std::min<int>(config.threads, config.batch_size);
    std::vector<Workspace> ws(static_cast<std::size_t>(threads));
    for (auto& w : ws) w.grads.init(config.hidden, d);
    nn::LstmGrads<float> total_grads;
    total_grads.init(config.hidden, d);

    data::Minibatch mb;
    for (long it = 1; it <= config.iterations; ++it) {
        iter.next(mb);

        double denom; // batch-level loss normalizer, constant w.r.t. outputs
        if (config.loss == LossKind::esr) {
            denom = scored_target_energy(mb, warmup);
            if (denom == 0.0)
                throw std::domain_error("train: zero target energy in batch at iteration " + std::to_string(it) +
                                        " (entries " + join_ids(dataset, mb.entry_indices) + ")");
        } else {
            denom = static_cast<double>(mb.batch) * scored;
        }
        const double dy_scale = 2.0 / denom;

        // Contiguous element blocks per thread; gradients reduced in thread
        // order, so results do not depend on scheduling.
        const int per_thread = (mb.batch + threads - 1) / threads;
        auto run_block = [&](int tid) {
            Workspace& w = ws[static_cast<std::size_t>(tid)];
            w.grads.zero();
            w.err_energy = 0.0;
            const int lo = tid * per_thread;
            const int hi = std::min(mb.batch, lo + per_thread);
            for (int b = lo; b < hi; ++b)
                accumulate_element(params, head, mb, b, warmup, config.bptt_window, dy_scale, w);
        };
        if (threads == 1) {
            run_block(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 1; t < threads; ++t) pool.emplace_back(run_block, t);
            run_block(0);
            for (auto& t : pool) t.join();
        }

        total_grads.zero();
        double err_energy = 0.0;
        for (const auto& w : ws) {
            err_energy += w.err_energy;
            const auto src = nn::grad_views(w.grads);
            auto dst = nn::param_views(total_grads.lstm, total_grads.head);
            for (std::size_t v = 0; v < src.size(); ++v)
                kernels::axpy(1.0f, src[v].data(), dst[v].data(), src[v].size());
        }

        const double loss = err_energy / denom;
        if (!std::isfinite(loss))
            throw std::runtime_error("train: non-finite loss at iteration " + std::to_string(it) + " (entries " +
                                     join_ids(dataset, mb.entry_indices) + ")");
        report.train_loss.push_back(loss);

        auto views = nn::param_views(params, head);
        nn::adam_update(adam, std::span<const std::span<float>>(views), std::span<const std::span<const float>>(nn::grad_views(total_grads)));
        for (const auto& v : views)
            for (const float p : v)
                if (!std::isfinite(p))
                    throw std::runtime_error("train: non-finite parameter after update at iteration " +
                                             std::to_string(it));

        const bool last = it == config.iterations;
        if (have_val && (it % config.val_interval == 0 || last)) {
            const double val_esr = run_validation(params, head, dataset, warmup, ckpt);
            report.val_curve.emplace_back(it, val_esr);
            if (val_esr < report.best_val_esr) {
                report.best_val_esr = val_esr;
                report.best_iteration = it;
                best_params = params;
                best_head = head;
            }
        }
    }
    report.final_train_loss = report.train_loss.back();

    if (!have_val) {
        best_params = params;
        best_head = head;
    }
    ckpt.lstm = std::move(best_params);
    ckpt.head = std::move(best_head);
    result.checkpoint = ckpt;

    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        nn::save_checkpoint(config.out_dir / "checkpoint.bin", result.checkpoint);

        std::ofstream csv(config.out_dir / "train_log.csv", std::ios::trunc);
        csv << "iteration,train_loss,val_esr\n";
        std::size_t vi = 0;
        for (std::size_t i = 0; i < report.train_loss.size(); ++i) {
            const long it = static_cast<long>(i) + 1;
            csv << it << "," << report.train_loss[i] << ",";
            if (vi < report.val_curve.size() && report.val_curve[vi].first == it) {
                csv << report.val_curve[vi].second;
                ++vi;
            }
            csv << "\n";
        }

        std::ofstream rep(config.out_dir / "report.txt", std::ios::trunc);
        rep << "iterations=" << config.iterations << "\n"
            << "final_train_loss=" << report.final_train_loss << "\n"
            << "best_val_esr=" << report.best_val_esr << "\n"
            << "best_iteration=" << report.best_iteration << "\n"
            << "wall_seconds=" << report.wall_seconds << "\n";
    }
    return result;
}

namespace {

double segment_esr(const nn::Checkpoint& ckpt, const std::vector<float>& input, const std::vector<float>& target,
                   const std::vector<double>& controls, int warmup, const std::string& what) {
    const int steps = static_cast<int>(input.size());
    const auto cond = data::condition_concat(input.data(), steps, controls.data(), static_cast<int>(controls.size()));
    std::vector<float> out(static_cast<std::size_t>(steps));
    nn::LstmState<float> state(ckpt.hidden());
    nn::lstm_forward(ckpt.lstm, ckpt.head, cond.data(), steps, state, out.data());

    double num = 0.0, den = 0.0;
    for (int t = warmup; t < steps; ++t) {
        const double e = static_cast<double>(out[t]) - static_cast<double>(target[t]);
        num += e * e;
        den += static_cast<double>(target[t]) * static_cast<double>(target[t]);
    }
    if (den == 0.0) throw std::domain_error("validate: zero target energy for " + what);
    return num / den;
}

} // namespace

ValidationReport validate(const nn::Checkpoint& ckpt, const data::Dataset& dataset, data::Split split,
                          int warmup_samples) {
    if (ckpt.num_controls() != dataset.num_controls())
        throw std::invalid_argument("validate: checkpoint has " + std::to_string(ckpt.num_controls()) +
                                    " controls, dataset has " + std::to_string(dataset.num_controls()));
    const auto indices = dataset.split_indices(split);
    if (indices.empty()) throw std::runtime_error("validate: requested split is empty");
    if (warmup_samples < 0 || warmup_samples >= dataset.segment_length)
        throw std::invalid_argument("validate: warmup_samples must be in [0, segment_length)");

    ValidationReport report;
    double sum = 0.0;
    for (const auto idx : indices) {
        const auto& e = dataset.entries[idx];
        const auto input = audio::read_wav(dataset.resolve(e.input_path));
        const auto target = audio::read_wav(dataset.resolve(e.target_path));
        const double esr = segment_esr(ckpt, input, target, e.controls, warmup_samples, "entry '" + e.id + "'");
        report.per_example.push_back({e.id, esr});
        sum += esr;
    }
    report.mean_esr = sum / static_cast<double>(report.per_example.size());
    std::sort(report.per_example.begin(), report.per_example.end(),
              [](const ValidationEntry& a, const ValidationEntry& b) { return a.esr > b.esr; });
    return report;
}

InterpReport control_interpolation_eval(const nn::Checkpoint& ckpt, const data::Dataset& dataset,
                                        const std::filesystem::path& corpus_dir, int probes_per_side,
                                        std::uint64_t seed, int warmup_samples) {
    if (probes_per_side < 1) throw std::invalid_argument("interp eval: need at least one probe per side");

    // Collect training configurations, then build the probe grid: seen =
    // sampled training configs, unseen = midpoints of random config pairs.
    const auto train_idx = dataset.split_indices(data::Split::train);
    if (train_idx.empty()) throw std::runtime_error("interp eval: train split is empty");
    const int k = dataset.num_controls();

    std::vector<InterpProbe> probes;
    Rng rng = Rng::derive(seed, 0x14ae);
    if (k == 0) {
        probes.push_back({{}, 0.0, true}); // degenerate space: one probe
    } else {
        for (int p = 0; p < probes_per_side; ++p) {
            const auto& e = dataset.entries[train_idx[rng.uniform_int(train_idx.size())]];
            probes.push_back({e.controls, 0.0, true});
        }
        for (int p = 0; p < probes_per_side; ++p) {
            const auto& a = dataset.entries[train_idx[rng.uniform_int(train_idx.size())]];
            const auto& b = dataset.entries[train_idx[rng.uniform_int(train_idx.size())]];
            std::vector<double> mid(static_cast<std::size_t>(k));
            for (int j = 0; j < k; ++j) {
                mid[static_cast<std::size_t>(j)] =
                    dataset.controls[static_cast<std::size_t>(j)].quantize(0.5 * (a.controls[j] + b.controls[j]));
            }
            probes.push_back({std::move(mid), 0.0, false});
        }
    }

    // Fresh excitation per probe, then virtual-device ground truth.
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(corpus_dir))
        if (e.path().extension() == ".wav") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<std::vector<float>> clips;
    for (const auto& f : files) {
        double rate = 0.0;
        auto s = audio::read_wav(f, &rate);
        if (rate == dataset.sample_rate && s.size() >= static_cast<std::size_t>(dataset.segment_length))
            clips.push_back(std::move(s));
    }
    if (clips.empty()) throw std::runtime_error("interp eval: no usable corpus clips in " + corpus_dir.string());

    InterpReport report;
    double sum_seen = 0.0, sum_unseen = 0.0;
    std::size_t n_seen = 0, n_unseen = 0;
    for (std::size_t p = 0; p < probes.size(); ++p) {
        Rng prng = Rng::derive(seed, 0x9b0e + p);
        const auto& clip = clips[prng.uniform_int(clips.size())];
        const std::size_t off = prng.uniform_int(clip.size() - static_cast<std::size_t>(dataset.segment_length) + 1);
        const std::vector<float> input(clip.begin() + static_cast<std::ptrdiff_t>(off),
                                       clip.begin() + static_cast<std::ptrdiff_t>(off) + dataset.segment_length);
        const auto cfg = rig::AmpConfig::from_controls(dataset.controls, probes[p].controls, dataset.sample_rate);
        const auto truth = rig::virtual_amp_process(cfg, input);
        probes[p].esr = segment_esr(ckpt, input, truth, probes[p].controls, warmup_samples,
                                    std::string("probe ") + std::to_string(p));
        if (probes[p].seen) {
            sum_seen += probes[p].esr;
            ++n_seen;
        } else {
            sum_unseen += probes[p].esr;
            ++n_unseen;
        }
    }
    report.mean_seen_esr = n_seen ? sum_seen / static_cast<double>(n_seen) : 0.0;
    report.mean_unseen_esr = n_unseen ? sum_unseen / static_cast<double>(n_unseen) : 0.0;
    report.ratio = n_unseen == 0 ? 1.0 : report.mean_unseen_esr / report.mean_seen_esr;
    report.probes = std::move(probes);
    return report;
}

} // namespace ampkit::train
