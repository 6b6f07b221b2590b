/**
 * Feature hashing for character n-grams.
 *
 * Every n-gram, including ones built from code points never seen in
 * training, maps to an index of a fixed 2^hash_bits space. There is no
 * vocabulary and nothing is discarded.
 */
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "olid/textpipe.hpp"

namespace olid {

/// MurmurHash3 x86_32 (Austin Appleby's reference algorithm).
std::uint32_t murmur3_x86_32(std::string_view data, std::uint32_t seed) noexcept;

/// The same hash reinterpreted as a two's-complement signed integer.
inline std::int32_t murmur3_32(std::string_view data, std::uint32_t seed) noexcept {
    return static_cast<std::int32_t>(murmur3_x86_32(data, seed));
}

struct HashConfig {
    static constexpr unsigned kMinBits = 8;
    static constexpr unsigned kMaxBits = 31;

    unsigned hash_bits = 18;
    std::uint32_t seed = 0;

    std::uint32_t dim() const noexcept { return std::uint32_t{1} << hash_bits; }
    std::uint32_t mask() const noexcept { return dim() - 1; }
    /// Throws InvalidConfig when hash_bits is outside [8, 31].
    void validate() const;

    friend bool operator==(const HashConfig&, const HashConfig&) = default;
};

/// Fixed-dimension sparse vector. Entries are kept sorted by index with no
/// stored zeros.
class SparseVector {
public:
    using Entry = std::pair<std::uint32_t, double>;

    SparseVector() = default;
    explicit SparseVector(std::uint32_t dim) : dim_(dim) {}

    /// Builds from unordered (index, value) pairs. Values at the same index
    /// are summed; entries that sum to zero are dropped. Throws
    /// DimensionMismatch if an index is >= dim.
    static SparseVector from_entries(std::uint32_t dim, std::vector<Entry> entries);

    std::uint32_t dim() const noexcept { return dim_; }
    std::size_t nnz() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::span<const Entry> entries() const noexcept { return entries_; }

    double squared_norm() const noexcept;
    double norm() const noexcept;
    /// Scales to unit L2 norm; a zero vector stays zero.
    void normalize() noexcept;

    /// Sparse-sparse dot product (merge over sorted indices).
    double dot(const SparseVector& other) const;
    /// Dot with a dense vector of the same dimension; touches only the
    /// nonzeros of *this.
    double dot(std::span<const double> dense) const;

    friend bool operator==(const SparseVector&, const SparseVector&) = default;

private:
    std::uint32_t dim_ = 0;
    std::vector<Entry> entries_;
};

/// Signed hashing trick: index = unsigned(h) & (2^bits - 1), value = +count
/// for h >= 0 and -count otherwise, colliding contributions summed, result
/// L2-normalized.
SparseVector vectorize(const NGramCounts& grams, const HashConfig& cfg);

/// normalize -> extract_ngrams -> vectorize for an already normalized
/// sentence.
SparseVector featurize(const Sentence& sentence, unsigned ngram_order, const HashConfig& cfg);

}  // namespace olid
