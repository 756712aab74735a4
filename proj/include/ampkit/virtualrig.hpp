#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ampkit/controlplan.hpp"
#include "ampkit/dataset.hpp"

namespace ampkit::rig {

// Deterministic five-knob nonlinear reference device used as the
// measurement target. Signal chain, all state in double precision:
//
//   input gain   drive(volume) = 0.4 + 3.6 * volume^2        (squared taper)
//   waveshaper   tanh
//   bass         first-order low shelf at 250 Hz,  +-6 dB linear in knob
//   treble       first-order high shelf at 1800 Hz, +-6 dB linear in knob
//   tone_cut     one-pole lowpass, cutoff 3500 Hz down to 500 Hz
//                (log-spaced, decreasing in the knob)
//   master       output scale master * (0.25 + 0.75 * master); zero at zero
//
// Every map is monotone in its knob. Zero input produces exactly zero
// output. The master taper keeps a bounded relative dynamic range at the
// low end so near-zero knob settings still yield measurable targets.
struct AmpConfig {
    double volume = 0.5;
    double bass = 0.5;
    double treble = 0.5;
    double tone_cut = 0.5;
    double master = 0.5;
    double sample_rate = 48000.0;

    // Builds a config from named normalized controls. Unknown names throw;
    // knobs not mentioned stay at their 0.5 default.
    static AmpConfig from_controls(const std::vector<data::ControlDef>& defs, const std::vector<double>& values,
                                   double sample_rate);
    static const std::vector<std::string>& knob_names();
    void validate() const; // all knobs in [0,1], positive rate
};

class VirtualAmp {
public:
    explicit VirtualAmp(const AmpConfig& config);
    void reset();
    // Causal, stateful; in and out may alias. Throws if |in| exceeds 1.
    void process(const float* in, float* out, std::size_t n);
    const AmpConfig& config() const { return cfg_; }

private:
    AmpConfig cfg_;
    double drive_ = 1.0, out_scale_ = 1.0;
    // low shelf, high shelf: y = b0 x + b1 x1 - a1 y1
    double ls_b0_ = 1, ls_b1_ = 0, ls_a1_ = 0, ls_x1_ = 0, ls_y1_ = 0;
    double hs_b0_ = 1, hs_b1_ = 0, hs_a1_ = 0, hs_x1_ = 0, hs_y1_ = 0;
    double lp_a_ = 0, lp_y1_ = 0;
};

// Fresh state each call: the capture convention (filters start settled at
// zero for every segment).
std::vector<float> virtual_amp_process(const AmpConfig& config, const std::vector<float>& input);

// Synthetic excitation material: plucked-string voices, logarithmic sine
// sweeps, and enveloped noise bursts, peak-normalized below 1.
void generate_corpus(const std::filesystem::path& dir, double sample_rate, int num_clips, std::uint64_t seed);

struct CaptureResult {
    data::Dataset dataset;
    std::vector<std::string> warnings;
};

// Executes a planned session against the virtual device: for each measured
// step, draws a seeded random corpus slice, processes it at that knob
// configuration, and stores the triple. Audio goes to out_dir/audio, the
// manifest to out_dir/manifest.jsonl (all entries in the train split; apply
// random_split afterwards if a validation split is wanted). Corpus clips
// shorter than segment_length are skipped with a warning.
CaptureResult capture_session(const plan::Session& session, const std::filesystem::path& corpus_dir,
                              int segment_length, double sample_rate, std::uint64_t seed,
                              const std::filesystem::path& out_dir);

} // namespace ampkit::rig
