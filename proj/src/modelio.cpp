#include "olid/modelio.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "olid/errors.hpp"

namespace olid {

namespace {

constexpr char kMagic[4] = {'O', 'L', 'I', 'D'};
constexpr std::size_t kEntrySize = 12;
constexpr std::size_t kChecksumSize = 4;

class Writer {
public:
    void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
    void u16(std::uint16_t v) { put_le(v, 2); }
    void u32(std::uint32_t v) { put_le(v, 4); }
    void u64(std::uint64_t v) { put_le(v, 8); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void bytes(const char* p, std::size_t n) { out_.append(p, n); }
    std::string& buffer() { return out_; }

private:
    void put_le(std::uint64_t v, int n) {
        for (int i = 0; i < n; ++i) {
            out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
        }
    }
    std::string out_;
};

class Reader {
public:
    explicit Reader(std::span<const char> bytes) : bytes_(bytes) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(get_le(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(get_le(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(get_le(4)); }
    std::uint64_t u64() { return get_le(8); }
    double f64() { return std::bit_cast<double>(u64()); }
    void seek(std::size_t pos) { pos_ = pos; }

private:
    std::uint64_t get_le(int n) {
        if (pos_ + static_cast<std::size_t>(n) > bytes_.size()) {
            throw TruncatedFile("model file ends unexpectedly");
        }
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        }
        pos_ += static_cast<std::size_t>(n);
        return v;
    }
    std::span<const char> bytes_;
    std::size_t pos_ = 0;
};

std::uint32_t crc32_of(std::span<const char> bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size()));
    return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::string serialize_model(const OneClassModel& model) {
    const TrainConfig& cfg = model.config();
    Writer w;
    w.bytes(kMagic, sizeof kMagic);
    w.u8(kModelFormatVersion);
    w.u8(static_cast<std::uint8_t>(cfg.hash.hash_bits));
    w.u16(0);
    w.u32(cfg.hash.seed);
    w.u32(cfg.ngram_order);
    w.f64(cfg.nu);
    w.f64(cfg.tol);
    w.u64(cfg.max_iter);
    w.f64(model.rho());
    w.u64(model.n_train());
    w.u64(model.sv_count());
    w.u64(model.iterations());
    w.u8(model.converged() ? 1 : 0);
    w.u8(0);
    w.u16(0);

    const auto weights = model.weights();
    std::uint32_t nnz = 0;
    for (const double v : weights) {
        nnz += v != 0.0 ? 1 : 0;
    }
    w.u32(nnz);
    for (std::uint32_t i = 0; i < weights.size(); ++i) {
        if (weights[i] != 0.0) {
            w.u32(i);
            w.f64(weights[i]);
        }
    }
    w.u32(crc32_of(w.buffer()));
    return std::move(w.buffer());
}

OneClassModel deserialize_model(std::span<const char> bytes) {
    if (bytes.size() < 5) {
        throw TruncatedFile(fmt::format("model file is {} bytes, too short for a header", bytes.size()));
    }
    if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
        throw FormatError("not an .olid model file (bad magic)");
    }
    const auto version = static_cast<std::uint8_t>(bytes[4]);
    if (version != kModelFormatVersion) {
        throw VersionMismatch(
            fmt::format("model format version {} is not supported (expected {})", version,
                        kModelFormatVersion));
    }
    if (bytes.size() < kModelHeaderSize + kChecksumSize) {
        throw TruncatedFile(fmt::format("model file is {} bytes, header needs {}", bytes.size(),
                                        kModelHeaderSize + kChecksumSize));
    }

    Reader r(bytes);
    r.seek(kModelHeaderSize - 4);
    const std::uint64_t nnz = r.u32();
    const std::uint64_t expected = kModelHeaderSize + nnz * kEntrySize + kChecksumSize;
    if (bytes.size() < expected) {
        throw TruncatedFile(
            fmt::format("model file is {} bytes, expected {}", bytes.size(), expected));
    }
    if (bytes.size() > expected) {
        throw FormatError(fmt::format("model file has {} trailing bytes", bytes.size() - expected));
    }
    const std::size_t body = bytes.size() - kChecksumSize;
    r.seek(body);
    const std::uint32_t stored_crc = r.u32();
    if (crc32_of(bytes.first(body)) != stored_crc) {
        throw ChecksumMismatch("model file checksum does not match its contents");
    }

    r.seek(5);
    TrainConfig cfg;
    cfg.hash.hash_bits = r.u8();
    r.u16();
    cfg.hash.seed = r.u32();
    cfg.ngram_order = r.u32();
    cfg.nu = r.f64();
    cfg.tol = r.f64();
    cfg.max_iter = r.u64();
    const double rho = r.f64();
    const std::uint64_t n_train = r.u64();
    const std::uint64_t sv_count = r.u64();
    const std::uint64_t iterations = r.u64();
    const std::uint8_t converged = r.u8();
    try {
        cfg.validate();
    } catch (const InvalidConfig& e) {
        throw FormatError(fmt::format("model file holds an invalid config: {}", e.what()));
    }

    std::vector<double> weights(cfg.hash.dim(), 0.0);
    r.seek(kModelHeaderSize);
    std::int64_t previous = -1;
    for (std::uint64_t k = 0; k < nnz; ++k) {
        const std::uint32_t index = r.u32();
        const double value = r.f64();
        if (index >= weights.size() || static_cast<std::int64_t>(index) <= previous) {
            throw FormatError(fmt::format("weight index {} out of order or range", index));
        }
        weights[index] = value;
        previous = index;
    }
    return OneClassModel(cfg, std::move(weights), rho, n_train, sv_count, converged != 0, iterations);
}

void save_model(const OneClassModel& model, const std::filesystem::path& path) {
    const std::string bytes = serialize_model(model);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError(fmt::format("write to '{}' failed", path.string()));
    }
}

OneClassModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open model '{}'", path.string()));
    }
    const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) {
        throw IoError(fmt::format("read error on '{}'", path.string()));
    }
    return deserialize_model(bytes);
}

}  // namespace olid
