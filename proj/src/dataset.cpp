#include "ampkit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "ampkit/rng.hpp"
#include "ampkit/wav.hpp"

namespace ampkit::data {

using nlohmann::json;

double ControlDef::quantize(double x) const {
    if (!discrete) return x;
    const double m = static_cast<double>(levels - 1);
    return std::round(x * m) / m;
}

std::vector<std::size_t> Dataset::split_indices(Split s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i].split == s) out.push_back(i);
    return out;
}

namespace {

constexpr int kManifestVersion = 1;

json control_to_json(const ControlDef& c) {
    json j;
    j["name"] = c.name;
    j["kind"] = c.discrete ? "discrete" : "continuous";
    if (c.discrete) j["levels"] = c.levels;
    return j;
}

ControlDef control_from_json(const json& j) {
    ControlDef c;
    c.name = j.at("name").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "discrete") {
        c.discrete = true;
        c.levels = j.at("levels").get<int>();
        if (c.levels < 2) throw std::runtime_error("manifest: discrete control '" + c.name + "' needs >= 2 levels");
    } else if (kind != "continuous") {
        throw std::runtime_error("manifest: unknown control kind '" + kind + "'");
    }
    return c;
}

} // namespace

void write_manifest(const Dataset& dataset, const std::filesystem::path& manifest_path) {
    std::ofstream os(manifest_path, std::ios::trunc);
    if (!os) throw std::runtime_error("manifest: cannot open for writing: " + manifest_path.string());

    json header;
    header["type"] = "header";
    header["version"] = kManifestVersion;
    header["sample_rate"] = dataset.sample_rate;
    header["segment_length"] = dataset.segment_length;
    header["controls"] = json::array();
    for (const auto& c : dataset.controls) header["controls"].push_back(control_to_json(c));
    os << header.dump() << "\n";

    for (const auto& e : dataset.entries) {
        json j;
        j["type"] = "entry";
        j["id"] = e.id;
        j["input"] = e.input_path;
        j["target"] = e.target_path;
        j["controls"] = e.controls;
        j["split"] = e.split == Split::train ? "train" : "val";
        os << j.dump() << "\n";
    }
    if (!os) throw std::runtime_error("manifest: write failed: " + manifest_path.string());
}

Dataset read_manifest(const std::filesystem::path& manifest_path, bool check_audio) {
    std::ifstream is(manifest_path);
    if (!is) throw std::runtime_error("manifest: cannot open: " + manifest_path.string());

    Dataset d;
    d.root = manifest_path.parent_path();

    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw std::runtime_error("manifest: parse error at line " + std::to_string(line_no) + ": " + e.what());
        }
        const auto type = j.at("type").get<std::string>();
        if (type == "header") {
            if (have_header) throw std::runtime_error("manifest: duplicate header at line " + std::to_string(line_no));
            const int version = j.at("version").get<int>();
            if (version != kManifestVersion)
                throw std::runtime_error("manifest: unsupported version " + std::to_string(version));
            d.sample_rate = j.at("sample_rate").get<double>();
            d.segment_length = j.at("segment_length").get<int>();
            for (const auto& cj : j.at("controls")) d.controls.push_back(control_from_json(cj));
            have_header = true;
        } else if (type == "entry") {
            if (!have_header) throw std::runtime_error("manifest: entry before header at line " + std::to_string(line_no));
            DatasetEntry e;
            e.id = j.at("id").get<std::string>();
            e.input_path = j.at("input").get<std::string>();
            e.target_path = j.at("target").get<std::string>();
            e.controls = j.at("controls").get<std::vector<double>>();
            const auto split = j.at("split").get<std::string>();
            if (split == "train") e.split = Split::train;
            else if (split == "val") e.split = Split::val;
            else throw std::runtime_error("manifest: entry '" + e.id + "' has unknown split '" + split + "'");

            if (e.controls.size() != d.controls.size())
                throw std::runtime_error("manifest: entry '" + e.id + "' has " + std::to_string(e.controls.size()) +
                                         " control values, header declares " + std::to_string(d.controls.size()));
            for (std::size_t k = 0; k < e.controls.size(); ++k) {
                const double v = e.controls[k];
                if (!(v >= 0.0 && v <= 1.0))
                    throw std::runtime_error("manifest: entry '" + e.id + "' control '" + d.controls[k].name +
                                             "' = " + std::to_string(v) + " is outside [0,1]");
            }
            d.entries.push_back(std::move(e));
        } else {
            throw std::runtime_error("manifest: unknown record type '" + type + "' at line " + std::to_string(line_no));
        }
    }
    if (!have_header) throw std::runtime_error("manifest: missing header: " + manifest_path.string());

    if (check_audio) {
        for (const auto& e : d.entries) {
            for (const auto* rel : {&e.input_path, &e.target_path}) {
                const auto p = d.resolve(*rel);
                if (!std::filesystem::exists(p))
                    throw std::runtime_error("manifest: entry '" + e.id + "' references missing file: " + p.string());
                const auto info = audio::read_wav_info(p);
                if (info.sample_rate != d.sample_rate)
                    throw std::runtime_error("manifest: '" + p.string() + "' sample rate " +
                                             std::to_string(info.sample_rate) + " does not match declared " +
                                             std::to_string(d.sample_rate));
                if (static_cast<int>(info.num_samples) != d.segment_length)
                    throw std::runtime_error("manifest: '" + p.string() + "' has " + std::to_string(info.num_samples) +
                                             " samples, declared segment length is " +
                                             std::to_string(d.segment_length));
            }
        }
    }
    return d;
}

void random_split(Dataset& dataset, std::size_t train_count, std::size_t val_count, std::uint64_t seed) {
    const std::size_t n = dataset.entries.size();
    if (train_count + val_count > n)
        throw std::invalid_argument("random_split: requested " + std::to_string(train_count + val_count) +
                                    " entries but dataset has " + std::to_string(n));
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng = Rng::derive(seed, 0x5117);
    rng.shuffle(order);
    for (std::size_t i = 0; i < n; ++i) {
        const bool is_val = i >= train_count && i < train_count + val_count;
        dataset.entries[order[i]].split = is_val ? Split::val : Split::train;
    }
}

std::vector<float> condition_concat(const float* segment, int segment_len, const double* controls, int num_controls) {
    const int d = 1 + num_controls;
    std::vector<float> out(static_cast<std::size_t>(segment_len) * d);
    for (int t = 0; t < segment_len; ++t) {
        float* row = out.data() + static_cast<std::size_t>(t) * d;
        row[0] = segment[t];
        for (int k = 0; k < num_controls; ++k) row[1 + k] = static_cast<float>(controls[k]);
    }
    return out;
}

MinibatchIter::MinibatchIter(const Dataset& dataset, int batch_size, std::uint64_t seed)
    : dataset_(dataset), batch_(batch_size), seed_(seed) {
    if (batch_size < 1) throw std::invalid_argument("minibatch: batch size must be >= 1");
    const auto train = dataset.split_indices(Split::train);
    if (train.empty()) throw std::runtime_error("minibatch: train split is empty");

    const std::size_t s = static_cast<std::size_t>(dataset.segment_length);
    audio_in_.resize(train.size() * s);
    audio_out_.resize(train.size() * s);
    train_lookup_.assign(dataset.entries.size(), SIZE_MAX);
    for (std::size_t row = 0; row < train.size(); ++row) {
        const auto& e = dataset.entries[train[row]];
        const auto in = audio::read_wav(dataset.resolve(e.input_path));
        const auto out = audio::read_wav(dataset.resolve(e.target_path));
        if (in.size() != s || out.size() != s)
            throw std::runtime_error("minibatch: segment length mismatch for entry '" + e.id + "'");
        std::copy(in.begin(), in.end(), audio_in_.begin() + row * s);
        std::copy(out.begin(), out.end(), audio_out_.begin() + row * s);
        train_lookup_[train[row]] = row;
    }
    train_order_ = train;
    start_epoch();
}

void MinibatchIter::start_epoch() {
    ++epoch_;
    cursor_ = 0;
    Rng rng = Rng::derive(seed_, 0xe90c + static_cast<std::uint64_t>(epoch_));
    rng.shuffle(train_order_);
}

void MinibatchIter::next(Minibatch& out) {
    if (cursor_ >= train_order_.size()) start_epoch();
    const std::size_t take = std::min(static_cast<std::size_t>(batch_), train_order_.size() - cursor_);
    const std::size_t s = static_cast<std::size_t>(dataset_.segment_length);
    const std::size_t k = static_cast<std::size_t>(dataset_.num_controls());

    batch_in_.resize(take * s);
    batch_out_.resize(take * s);
    batch_ctrl_.resize(take * k);
    out.entry_indices.assign(train_order_.begin() + static_cast<std::ptrdiff_t>(cursor_),
                             train_order_.begin() + static_cast<std::ptrdiff_t>(cursor_ + take));
    for (std::size_t b = 0; b < take; ++b) {
        const std::size_t entry = out.entry_indices[b];
        const std::size_t row = train_lookup_[entry];
        std::copy_n(audio_in_.begin() + row * s, s, batch_in_.begin() + b * s);
        std::copy_n(audio_out_.begin() + row * s, s, batch_out_.begin() + b * s);
        const auto& ctrl = dataset_.entries[entry].controls;
        std::copy(ctrl.begin(), ctrl.end(), batch_ctrl_.begin() + b * k);
    }
    cursor_ += take;

    out.batch = static_cast<int>(take);
    out.segment_length = dataset_.segment_length;
    out.num_controls = static_cast<int>(k);
    out.inputs = batch_in_.data();
    out.targets = batch_out_.data();
    out.controls = batch_ctrl_.data();
}

} // namespace ampkit::data
