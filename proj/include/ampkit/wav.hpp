#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace ampkit::audio {

struct WavInfo {
    double sample_rate = 0.0;
    std::uint32_t num_samples = 0; // frames; all files here are mono
};

// Mono 32-bit float PCM writer (RIFF/WAVE format 3). Samples are stored
// bit-exactly, so write/read round-trips are identities.
void write_wav(const std::filesystem::path& path, const std::vector<float>& samples, double sample_rate);

// Reads mono WAV files: IEEE float32 natively, PCM16 converted to float by
// /32768. Anything else (stereo, other bit depths) is rejected with a
// descriptive error.
std::vector<float> read_wav(const std::filesystem::path& path, double* sample_rate = nullptr);

// Header-only probe used for manifest validation; does not read sample data.
WavInfo read_wav_info(const std::filesystem::path& path);

} // namespace ampkit::audio
