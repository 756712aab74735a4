#include "ampkit/virtualrig.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ampkit/rng.hpp"
#include "ampkit/wav.hpp"

namespace ampkit::rig {

namespace {

constexpr double kPi = 3.14159265358979323846;

double drive_map(double volume) { return 0.4 + 3.6 * volume * volume; }
double master_map(double master) { return master * (0.25 + 0.75 * master); }
double shelf_gain_db(double knob) { return (knob - 0.5) * 12.0; } // +-6 dB
double tone_cut_hz(double knob) { return 3500.0 * std::pow(500.0 / 3500.0, knob); }

} // namespace

const std::vector<std::string>& AmpConfig::knob_names() {
    static const std::vector<std::string> names = {"volume", "bass", "treble", "tone_cut", "master"};
    return names;
}

AmpConfig AmpConfig::from_controls(const std::vector<data::ControlDef>& defs, const std::vector<double>& values,
                                   double sample_rate) {
    if (defs.size() != values.size())
        throw std::invalid_argument("amp config: control definition/value count mismatch");
    AmpConfig cfg;
    cfg.sample_rate = sample_rate;
    for (std::size_t k = 0; k < defs.size(); ++k) {
        const auto& name = defs[k].name;
        if (name == "volume") cfg.volume = values[k];
        else if (name == "bass") cfg.bass = values[k];
        else if (name == "treble") cfg.treble = values[k];
        else if (name == "tone_cut") cfg.tone_cut = values[k];
        else if (name == "master") cfg.master = values[k];
        else throw std::invalid_argument("amp config: unknown control '" + name + "'");
    }
    cfg.validate();
    return cfg;
}

void AmpConfig::validate() const {
    for (const double v : {volume, bass, treble, tone_cut, master}) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("amp config: knob value outside [0,1]");
    }
    if (!(sample_rate > 0.0)) throw std::invalid_argument("amp config: sample rate must be positive");
}

VirtualAmp::VirtualAmp(const AmpConfig& config) : cfg_(config) {
    cfg_.validate();
    drive_ = drive_map(cfg_.volume);
    out_scale_ = master_map(cfg_.master);

    const double fs = cfg_.sample_rate;
    // Bilinear first-order shelves, prewarped at the corner frequency.
    {
        const double v0 = std::pow(10.0, shelf_gain_db(cfg_.bass) / 20.0);
        const double c = 1.0 / std::tan(kPi * 250.0 / fs);
        ls_b0_ = (c + v0) / (c + 1.0);
        ls_b1_ = (v0 - c) / (c + 1.0);
        ls_a1_ = (1.0 - c) / (c + 1.0);
    }
    {
        const double v0 = std::pow(10.0, shelf_gain_db(cfg_.treble) / 20.0);
        const double c = 1.0 / std::tan(kPi * 1800.0 / fs);
        hs_b0_ = (v0 * c + 1.0) / (c + 1.0);
        hs_b1_ = (1.0 - v0 * c) / (c + 1.0);
        hs_a1_ = (1.0 - c) / (c + 1.0);
    }
    lp_a_ = std::exp(-2.0 * kPi * tone_cut_hz(cfg_.tone_cut) / fs);
    reset();
}

void VirtualAmp::reset() { ls_x1_ = ls_y1_ = hs_x1_ = hs_y1_ = lp_y1_ = 0.0; }

void VirtualAmp::process(const float* in, float* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(in[i]);
        if (!(std::abs(x) <= 1.0)) throw std::invalid_argument("virtual amp: input peak exceeds 1");

        const double shaped = std::tanh(drive_ * x);

        const double ls = ls_b0_ * shaped + ls_b1_ * ls_x1_ - ls_a1_ * ls_y1_;
        ls_x1_ = shaped;
        ls_y1_ = ls;

        const double hs = hs_b0_ * ls + hs_b1_ * hs_x1_ - hs_a1_ * hs_y1_;
        hs_x1_ = ls;
        hs_y1_ = hs;

        const double lp = (1.0 - lp_a_) * hs + lp_a_ * lp_y1_;
        lp_y1_ = lp;

        out[i] = static_cast<float>(out_scale_ * lp);
    }
}

std::vector<float> virtual_amp_process(const AmpConfig& config, const std::vector<float>& input) {
    VirtualAmp amp(config);
    std::vector<float> out(input.size());
    amp.process(input.data(), out.data(), input.size());
    return out;
}

namespace {

// Karplus-Strong pluck mixed into `buf` starting at `at`.
void add_pluck(std::vector<float>& buf, double fs, double freq, double amp, std::size_t at, Rng& rng) {
    const std::size_t period = std::max<std::size_t>(2, static_cast<std::size_t>(fs / freq));
    std::vector<double> ring(period);
    for (auto& s : ring) s = rng.uniform(-1.0, 1.0);
    std::size_t idx = 0;
    const double damp = 0.996;
    for (std::size_t i = at; i < buf.size(); ++i) {
        const double cur = ring[idx];
        const double nxt = ring[(idx + 1) % period];
        ring[idx] = damp * 0.5 * (cur + nxt);
        buf[i] += static_cast<float>(amp * cur);
        idx = (idx + 1) % period;
        if (amp * std::abs(cur) < 1e-5 && i > at + 4 * period) break;
    }
}

void normalize_peak(std::vector<float>& buf, double target) {
    float peak = 0.0f;
    for (const float s : buf) peak = std::max(peak, std::abs(s));
    if (peak > 0.0f) {
        const float g = static_cast<float>(target) / peak;
        for (auto& s : buf) s *= g;
    }
}

} // namespace

void generate_corpus(const std::filesystem::path& dir, double sample_rate, int num_clips, std::uint64_t seed) {
    if (num_clips < 1) throw std::invalid_argument("generate_corpus: need at least one clip");
    std::filesystem::create_directories(dir);
    const std::size_t clip_len = static_cast<std::size_t>(sample_rate * 3.0);

    for (int clip = 0; clip < num_clips; ++clip) {
        Rng rng = Rng::derive(seed, 0xc09b + static_cast<std::uint64_t>(clip));
        std::vector<float> buf(clip_len, 0.0f);
        const int kind = clip % 3;
        if (kind == 0) {
            // plucked-string phrase: a handful of overlapping voices
            const int plucks = 4 + static_cast<int>(rng.uniform_int(5));
            for (int p = 0; p < plucks; ++p) {
                const double freq = 82.0 * std::pow(2.0, rng.uniform(0.0, 3.0)); // E2..E5
                const std::size_t at = static_cast<std::size_t>(rng.uniform01() * 0.8 * clip_len);
                add_pluck(buf, sample_rate, freq, rng.uniform(0.3, 0.9), at, rng);
            }
        } else if (kind == 1) {
            // logarithmic sine sweep, faded at both ends
            const double f0 = 40.0;
            const double f1 = 0.42 * sample_rate;
            const double dur = static_cast<double>(clip_len) / sample_rate;
            const double k = std::log(f1 / f0);
            double phase = 0.0;
            for (std::size_t i = 0; i < clip_len; ++i) {
                const double t = static_cast<double>(i) / sample_rate;
                const double f = f0 * std::exp(k * t / dur);
                phase += 2.0 * kPi * f / sample_rate;
                double env = 1.0;
                const double fade = 0.02 * clip_len;
                if (static_cast<double>(i) < fade) env = static_cast<double>(i) / fade;
                if (static_cast<double>(clip_len - i) < fade) env = static_cast<double>(clip_len - i) / fade;
                buf[i] = static_cast<float>(env * std::sin(phase));
            }
        } else {
            // decaying noise bursts
            const int bursts = 3 + static_cast<int>(rng.uniform_int(4));
            for (int b = 0; b < bursts; ++b) {
                const std::size_t at = static_cast<std::size_t>(rng.uniform01() * 0.8 * clip_len);
                const double tau = rng.uniform(0.05, 0.4) * sample_rate;
                const double amp = rng.uniform(0.3, 0.9);
                for (std::size_t i = at; i < clip_len; ++i) {
                    const double env = std::exp(-static_cast<double>(i - at) / tau);
                    if (env < 1e-4) break;
                    buf[i] += static_cast<float>(amp * env * rng.uniform(-1.0, 1.0));
                }
            }
        }
        normalize_peak(buf, 0.55 + 0.35 * Rng::derive(seed, 0x9ea7 + static_cast<std::uint64_t>(clip)).uniform01());
        char name[32];
        std::snprintf(name, sizeof(name), "clip_%03d.wav", clip);
        audio::write_wav(dir / name, buf, sample_rate);
    }
}

CaptureResult capture_session(const plan::Session& session, const std::filesystem::path& corpus_dir,
                              int segment_length, double sample_rate, std::uint64_t seed,
                              const std::filesystem::path& out_dir) {
    if (segment_length < 1) throw std::invalid_argument("capture: segment length must be positive");

    // Load the corpus; clips too short for a segment are excluded up front.
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(corpus_dir)) {
        if (e.path().extension() == ".wav") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("capture: no .wav clips in corpus directory " + corpus_dir.string());

    CaptureResult result;
    std::vector<std::vector<float>> clips;
    for (const auto& f : files) {
        double rate = 0.0;
        auto samples = audio::read_wav(f, &rate);
        if (rate != sample_rate)
            throw std::runtime_error("capture: corpus clip " + f.string() + " is at " + std::to_string(rate) +
                                     " Hz, session runs at " + std::to_string(sample_rate) + " Hz");
        float peak = 0.0f;
        for (const float s : samples) peak = std::max(peak, std::abs(s));
        if (peak > 1.0f) throw std::runtime_error("capture: corpus clip " + f.string() + " peaks above 1");
        if (samples.size() < static_cast<std::size_t>(segment_length)) {
            result.warnings.push_back("capture: skipping clip shorter than segment: " + f.string());
            continue;
        }
        clips.push_back(std::move(samples));
    }
    if (clips.empty()) throw std::runtime_error("capture: no corpus clip is at least one segment long");

    std::filesystem::create_directories(out_dir / "audio");

    data::Dataset& ds = result.dataset;
    ds.sample_rate = sample_rate;
    ds.segment_length = segment_length;
    ds.controls = session.controls;
    ds.root = out_dir;

    std::size_t entry_index = 0;
    for (const auto& step : session.steps) {
        if (step.home) continue; // virtual node, nothing to measure

        // Independent stream per entry: capture order does not matter.
        Rng rng = Rng::derive(seed, 0xcab + entry_index);
        const auto& clip = clips[rng.uniform_int(clips.size())];
        const std::size_t max_off = clip.size() - static_cast<std::size_t>(segment_length);
        const std::size_t off = rng.uniform_int(max_off + 1);
        std::vector<float> input(clip.begin() + static_cast<std::ptrdiff_t>(off),
                                 clip.begin() + static_cast<std::ptrdiff_t>(off + segment_length));

        const AmpConfig cfg = AmpConfig::from_controls(session.controls, step.values, sample_rate);
        const std::vector<float> target = virtual_amp_process(cfg, input);

        char id[32];
        std::snprintf(id, sizeof(id), "e%05zu", entry_index);
        data::DatasetEntry entry;
        entry.id = id;
        entry.input_path = std::string("audio/") + id + "_in.wav";
        entry.target_path = std::string("audio/") + id + "_out.wav";
        entry.controls = step.values;
        entry.split = data::Split::train;
        audio::write_wav(ds.resolve(entry.input_path), input, sample_rate);
        audio::write_wav(ds.resolve(entry.target_path), target, sample_rate);
        ds.entries.push_back(std::move(entry));
        ++entry_index;
    }
    if (ds.entries.empty()) throw std::runtime_error("capture: session contains no measurement steps");

    data::write_manifest(ds, out_dir / "manifest.jsonl");
    return result;
}

} // namespace ampkit::rig
