#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ampkit/nn.hpp"

namespace ampkit::nn {

// Trained-model container.
//
// On-disk layout (all integers and floats little-endian):
//   bytes 0..7   magic "AMPKCKPT"
//   u32          format version (currently 1; loader rejects anything else)
//   u32          hidden size H
//   u32          control count K            (model input size D = K + 1)
//   f64          sample rate the model was trained at
//   K x          { u32 name length, name bytes }  control names, dataset order
//   f32[4H*D]    input weights, row-major, gate rows i,f,g,o
//   f32[4H*H]    recurrent weights, row-major
//   f32[4H]      gate biases
//   f32[H]       head weights
//   f32          head bias
// Controls are expected normalized to [0,1]; audio is raw [-1,1] — that is
// the model's only input normalization and is fixed by this format.
struct Checkpoint {
    std::uint32_t version = 1;
    double sample_rate = 0.0;
    std::vector<std::string> control_names;
    LstmParams<float> lstm;
    DenseParams<float> head;

    int hidden() const { return lstm.hidden; }
    int num_controls() const { return static_cast<int>(control_names.size()); }
};

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

} // namespace ampkit::nn
