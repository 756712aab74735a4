#include "ampkit/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian; big-endian hosts are unsupported");

namespace ampkit::nn {

namespace {

constexpr char kMagic[8] = {'A', 'M', 'P', 'K', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is, const char* what) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error(std::string("checkpoint: truncated while reading ") + what);
    return v;
}

void write_floats(std::ostream& os, const std::vector<float>& v) {
    os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(float)));
}

void read_floats(std::istream& is, std::vector<float>& v, const char* what) {
    is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(float)));
    if (!is) throw std::runtime_error(std::string("checkpoint: truncated while reading ") + what);
}

} // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
    ckpt.lstm.check_shapes();
    if (ckpt.lstm.input != static_cast<int>(ckpt.control_names.size()) + 1)
        throw std::invalid_argument("checkpoint: model input size must equal control count + 1");
    if (static_cast<int>(ckpt.head.w.size()) != ckpt.lstm.hidden)
        throw std::invalid_argument("checkpoint: head size must equal hidden size");

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("checkpoint: cannot open for writing: " + path.string());
    os.write(kMagic, sizeof(kMagic));
    write_pod(os, kVersion);
    write_pod(os, static_cast<std::uint32_t>(ckpt.lstm.hidden));
    write_pod(os, static_cast<std::uint32_t>(ckpt.control_names.size()));
    write_pod(os, ckpt.sample_rate);
    for (const auto& name : ckpt.control_names) {
        write_pod(os, static_cast<std::uint32_t>(name.size()));
        os.write(name.data(), static_cast<std::streamsize>(name.size()));
    }
    write_floats(os, ckpt.lstm.w_in);
    write_floats(os, ckpt.lstm.w_rec);
    write_floats(os, ckpt.lstm.bias);
    write_floats(os, ckpt.head.w);
    write_pod(os, ckpt.head.b);
    if (!os) throw std::runtime_error("checkpoint: write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open: " + path.string());

    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("checkpoint: bad magic (not a checkpoint file): " + path.string());

    const auto version = read_pod<std::uint32_t>(is, "version");
    if (version != kVersion)
        throw std::runtime_error("checkpoint: unsupported format version " + std::to_string(version) +
                                 " (this build reads version " + std::to_string(kVersion) + ")");

    const auto hidden = read_pod<std::uint32_t>(is, "hidden size");
    const auto num_controls = read_pod<std::uint32_t>(is, "control count");
    if (hidden == 0 || hidden > (1u << 20) || num_controls > (1u << 16))
        throw std::runtime_error("checkpoint: implausible dimensions, file is corrupt");

    Checkpoint ckpt;
    ckpt.version = version;
    ckpt.sample_rate = read_pod<double>(is, "sample rate");
    ckpt.control_names.resize(num_controls);
    for (auto& name : ckpt.control_names) {
        const auto len = read_pod<std::uint32_t>(is, "control name length");
        if (len > (1u << 12)) throw std::runtime_error("checkpoint: implausible control name length");
        name.resize(len);
        is.read(name.data(), len);
        if (!is) throw std::runtime_error("checkpoint: truncated while reading control name");
    }

    const int h = static_cast<int>(hidden);
    const int d = static_cast<int>(num_controls) + 1;
    ckpt.lstm = LstmParams<float>::zeros(h, d);
    ckpt.head = DenseParams<float>::zeros(h);
    read_floats(is, ckpt.lstm.w_in, "input weights");
    read_floats(is, ckpt.lstm.w_rec, "recurrent weights");
    read_floats(is, ckpt.lstm.bias, "biases");
    read_floats(is, ckpt.head.w, "head weights");
    ckpt.head.b = read_pod<float>(is, "head bias");
    return ckpt;
}

} // namespace ampkit::nn
