#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ampkit::data {

enum class Split { train, val };

struct ControlDef {
    std::string name;
    bool discrete = false;
    int levels = 0; // >= 2 when discrete

    // An m-position switch maps to levels {0, 1/(m-1), ..., 1} so switches
    // and knobs share the same [0,1] conditioning range.
    double quantize(double x) const;
};

struct DatasetEntry {
    std::string id;
    std::string input_path;  // relative to the manifest directory
    std::string target_path;
    std::vector<double> controls; // normalized, one per ControlDef
    Split split = Split::train;
};

struct Dataset {
    double sample_rate = 0.0;
    int segment_length = 0; // samples per entry
    std::vector<ControlDef> controls;
    std::vector<DatasetEntry> entries;
    std::filesystem::path root; // directory the manifest lives in

    int num_controls() const { return static_cast<int>(controls.size()); }
    std::vector<std::size_t> split_indices(Split s) const;
    std::filesystem::path resolve(const std::string& rel) const { return root / rel; }
};

// Manifest: line-delimited JSON. First line is a header object (version,
// sample_rate, segment_length, control definitions), then one entry object
// per line with paths relative to the manifest. Appendable and diff-friendly.
void write_manifest(const Dataset& dataset, const std::filesystem::path& manifest_path);

// Validates on load: control values in [0,1], declared control count per
// entry, referenced audio files exist and match the declared sample rate and
// segment length. check_audio=false skips the file probes (used by tools
// that only need the metadata).
Dataset read_manifest(const std::filesystem::path& manifest_path, bool check_audio = true);

// Deterministic seeded partition: a shuffled prefix of train_count entries
// becomes the training split, the next val_count the validation split, and
// any remainder joins the training split (the split is always a partition).
// Throws if train_count + val_count exceeds the entry count.
void random_split(Dataset& dataset, std::size_t train_count, std::size_t val_count, std::uint64_t seed);

// Replicates controls to every timestep: out[t] = [x_t, c_1..c_K].
std::vector<float> condition_concat(const float* segment, int segment_len, const double* controls, int num_controls);

// One minibatch of training data, audio preloaded by the iterator's owner.
struct Minibatch {
    int batch = 0;
    int segment_length = 0;
    int num_controls = 0;
    std::vector<std::size_t> entry_indices;   // into Dataset::entries
    const float* input(int b) const { return inputs + static_cast<std::size_t>(b) * segment_length; }
    const float* target(int b) const { return targets + static_cast<std::size_t>(b) * segment_length; }
    const double* control_row(int b) const { return controls + static_cast<std::size_t>(b) * num_controls; }
    const float* inputs = nullptr;  // [B x S], rows packed in batch order
    const float* targets = nullptr; // [B x S]
    const double* controls = nullptr; // [B x K]
};

// Epoch-shuffled minibatch stream over the train split. Audio for the whole
// train split is loaded once up front. Each epoch is a fresh seeded shuffle;
// the final partial batch is emitted.
class MinibatchIter {
public:
    MinibatchIter(const Dataset& dataset, int batch_size, std::uint64_t seed);

    // Fills `out` with the next batch, advancing epochs as needed.
    void next(Minibatch& out);
    long epoch() const { return epoch_; }

private:
    void start_epoch();

    const Dataset& dataset_;
    int batch_ = 0;
    std::uint64_t seed_ = 0;
    long epoch_ = -1;
    std::size_t cursor_ = 0;
    std::vector<std::size_t> train_order_;
    std::vector<float> audio_in_;   // [N_train x S] in train-split index order
    std::vector<float> audio_out_;
    std::vector<std::size_t> train_lookup_; // entry index -> row in audio buffers
    std::vector<float> batch_in_, batch_out_;
    std::vector<double> batch_ctrl_;
};

} // namespace ampkit::data
