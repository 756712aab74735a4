#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ampkit/checkpoint.hpp"
#include "ampkit/dataset.hpp"

namespace ampkit::train {

enum class LossKind { mse, esr };

struct TrainConfig {
    int hidden = 32;
    int batch_size = 16;
    long iterations = 20000;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    LossKind loss = LossKind::esr;
    int warmup_samples = 1000; // leading samples excluded from the loss
    std::uint64_t seed = 1;
    long val_interval = 500;   // validation + best-checkpoint cadence
    int threads = 1;           // 1 = strict deterministic mode
    int bptt_window = 0;       // 0 = backprop through the full segment
    std::filesystem::path out_dir; // empty = keep results in memory only

    void validate_against(const data::Dataset& dataset) const;
};

// Mean squared error over a [batch x steps] block: (1/BT) sum (pred-target)^2.
template <typename T>
double mse_loss(const T* pred, const T* target, int batch, int steps);

// Error-to-signal ratio with batch-level normalization:
// sum (pred-target)^2 / sum target^2, both sums over the whole block.
// Throws std::domain_error when the target energy is zero.
template <typename T>
double esr_loss(const T* pred, const T* target, int batch, int steps);

struct TrainReport {
    std::vector<double> train_loss;                 // one entry per iteration
    std::vector<std::pair<long, double>> val_curve; // (iteration, mean val ESR)
    double best_val_esr = std::numeric_limits<double>::infinity();
    long best_iteration = -1;
    double final_train_loss = 0.0;
    double wall_seconds = 0.0;
};

struct TrainResult {
    nn::Checkpoint checkpoint; // best validation ESR; final params if no val split
    TrainReport report;
};

// Supervised loop: epoch-shuffled minibatches, conditioned LSTM forward,
// warm-up-excluded loss, BPTT, Adam. Deterministic for a fixed seed and
// thread count. Aborts with a diagnostic (iteration, entry ids) if the loss
// goes non-finite. When out_dir is set, writes checkpoint.bin,
// train_log.csv and report.txt there.
TrainResult train(const data::Dataset& dataset, const TrainConfig& config);

struct ValidationEntry {
    std::string id;
    double esr = 0.0;
};

struct ValidationReport {
    double mean_esr = 0.0;
    std::vector<ValidationEntry> per_example; // sorted by ESR, worst first
};

// Per-example ESR (batch of one) over the warm-up-excluded region.
ValidationReport validate(const nn::Checkpoint& ckpt, const data::Dataset& dataset, data::Split split,
                          int warmup_samples);

struct InterpProbe {
    std::vector<double> controls;
    double esr = 0.0;
    bool seen = false; // true: a training configuration; false: a midpoint
};

struct InterpReport {
    double mean_seen_esr = 0.0;
    double mean_unseen_esr = 0.0;
    double ratio = 1.0; // unseen / seen
    std::vector<InterpProbe> probes;
};

// Probes model accuracy against fresh virtual-device ground truth at
// training configurations (seen) and at midpoints of random training-config
// pairs (unseen). Every probe uses a fresh seeded excitation slice from the
// corpus. With no controls there is a single seen probe at the device
// defaults.
InterpReport control_interpolation_eval(const nn::Checkpoint& ckpt, const data::Dataset& dataset,
                                        const std::filesystem::path& corpus_dir, int probes_per_side,
                                        std::uint64_t seed, int warmup_samples);

} // namespace ampkit::train
