#include "ampkit/wav.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

static_assert(std::endian::native == std::endian::little, "WAV I/O assumes a little-endian host");

namespace ampkit::audio {

namespace {

struct ChunkHeader {
    char id[4];
    std::uint32_t size;
};

void write_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
void write_u16(std::ostream& os, std::uint16_t v) { os.write(reinterpret_cast<const char*>(&v), 2); }

struct FmtChunk {
    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits_per_sample = 0;
    bool seen = false;
};

FmtChunk parse_headers(std::ifstream& is, const std::filesystem::path& path, std::uint32_t* data_size,
                       std::streampos* data_pos) {
    char riff[12];
    is.read(riff, 12);
    if (!is || std::memcmp(riff, "RIFF", 4) != 0 || std::memcmp(riff + 8, "WAVE", 4) != 0)
        throw std::runtime_error("wav: not a RIFF/WAVE file: " + path.string());

    FmtChunk fmt;
    *data_size = 0;
    while (is) {
        ChunkHeader ch;
        is.read(reinterpret_cast<char*>(&ch), sizeof(ch));
        if (!is) break;
        if (std::memcmp(ch.id, "fmt ", 4) == 0) {
            char buf[16];
            if (ch.size < 16) throw std::runtime_error("wav: malformed fmt chunk: " + path.string());
            is.read(buf, 16);
            std::memcpy(&fmt.format, buf + 0, 2);
            std::memcpy(&fmt.channels, buf + 2, 2);
            std::memcpy(&fmt.sample_rate, buf + 4, 4);
            std::memcpy(&fmt.bits_per_sample, buf + 14, 2);
            fmt.seen = true;
            is.seekg(ch.size - 16 + (ch.size & 1), std::ios::cur);
        } else if (std::memcmp(ch.id, "data", 4) == 0) {
            *data_size = ch.size;
            *data_pos = is.tellg();
            is.seekg(ch.size + (ch.size & 1), std::ios::cur);
        } else {
            is.seekg(ch.size + (ch.size & 1), std::ios::cur);
        }
    }
    is.clear();
    if (!fmt.seen) throw std::runtime_error("wav: missing fmt chunk: " + path.string());
    if (fmt.channels != 1)
        throw std::runtime_error("wav: expected mono, got " + std::to_string(fmt.channels) +
                                 " channels: " + path.string());
    return fmt;
}

std::uint32_t frame_count(const FmtChunk& fmt, std::uint32_t data_size, const std::filesystem::path& path) {
    const std::uint32_t bytes_per_sample = fmt.bits_per_sample / 8;
    if (bytes_per_sample == 0) throw std::runtime_error("wav: zero bits per sample: " + path.string());
    return data_size / bytes_per_sample;
}

} // namespace

void write_wav(const std::filesystem::path& path, const std::vector<float>& samples, double sample_rate) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("wav: cannot open for writing: " + path.string());

    const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * sizeof(float));
    const std::uint32_t rate = static_cast<std::uint32_t>(sample_rate);
    // RIFF size: WAVE + fmt(24) + fact(12) + data header(8) + payload
    write_u32(os, 0x46464952u); // "RIFF"
    write_u32(os, 4 + 24 + 12 + 8 + data_bytes);
    write_u32(os, 0x45564157u); // "WAVE"

    write_u32(os, 0x20746d66u); // "fmt "
    write_u32(os, 16);
    write_u16(os, 3); // IEEE float
    write_u16(os, 1); // mono
    write_u32(os, rate);
    write_u32(os, rate * sizeof(float));
    write_u16(os, sizeof(float));
    write_u16(os, 32);

    write_u32(os, 0x74636166u); // "fact"
    write_u32(os, 4);
    write_u32(os, static_cast<std::uint32_t>(samples.size()));

    write_u32(os, 0x61746164u); // "data"
    write_u32(os, data_bytes);
    os.write(reinterpret_cast<const char*>(samples.data()), data_bytes);
    if (!os) throw std::runtime_error("wav: write failed: " + path.string());
}

std::vector<float> read_wav(const std::filesystem::path& path, double* sample_rate) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("wav: cannot open: " + path.string());

    std::uint32_t data_size = 0;
    std::streampos data_pos;
    const FmtChunk fmt = parse_headers(is, path, &data_size, &data_pos);
    if (data_size == 0) throw std::runtime_error("wav: missing data chunk: " + path.string());
    if (sample_rate != nullptr) *sample_rate = static_cast<double>(fmt.sample_rate);

    const std::uint32_t n = frame_count(fmt, data_size, path);
    std::vector<float> samples(n);
    is.seekg(data_pos);
    if (fmt.format == 3 && fmt.bits_per_sample == 32) {
        is.read(reinterpret_cast<char*>(samples.data()), static_cast<std::streamsize>(n * sizeof(float)));
    } else if (fmt.format == 1 && fmt.bits_per_sample == 16) {
        std::vector<std::int16_t> raw(n);
        is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n * sizeof(std::int16_t)));
        for (std::uint32_t i = 0; i < n; ++i) samples[i] = static_cast<float>(raw[i]) / 32768.0f;
    } else {
        throw std::runtime_error("wav: unsupported encoding (format=" + std::to_string(fmt.format) +
                                 ", bits=" + std::to_string(fmt.bits_per_sample) + "): " + path.string());
    }
    if (!is) throw std::runtime_error("wav: truncated sample data: " + path.string());
    return samples;
}

WavInfo read_wav_info(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("wav: cannot open: " + path.string());
    std::uint32_t data_size = 0;
    std::streampos data_pos;
    const FmtChunk fmt = parse_headers(is, path, &data_size, &data_pos);
    WavInfo info;
    info.sample_rate = static_cast<double>(fmt.sample_rate);
    info.num_samples = frame_count(fmt, data_size, path);
    return info;
}

} // namespace ampkit::audio
