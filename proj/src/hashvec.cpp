#include "olid/hashvec.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "olid/errors.hpp"

namespace olid {

void HashConfig::validate() const {
    if (hash_bits < kMinBits || hash_bits > kMaxBits) {
        throw InvalidConfig(
            fmt::format("hash_bits must be in [{}, {}], got {}", kMinBits, kMaxBits, hash_bits));
    }
}

SparseVector SparseVector::from_entries(std::uint32_t dim, std::vector<Entry> entries) {
    for (const auto& [index, value] : entries) {
        if (index >= dim) {
            throw DimensionMismatch(fmt::format("index {} out of range for dim {}", index, dim));
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });

    SparseVector v(dim);
    v.entries_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size();) {
        const std::uint32_t index = entries[i].first;
        double sum = 0.0;
        for (; i < entries.size() && entries[i].first == index; ++i) {
            sum += entries[i].second;
        }
        if (sum != 0.0) {
            v.entries_.emplace_back(index, sum);
        }
    }
    return v;
}

double SparseVector::squared_norm() const noexcept {
    double s = 0.0;
    for (const auto& [index, value] : entries_) {
        s += value * value;
    }
    return s;
}

double SparseVector::norm() const noexcept {
    return std::sqrt(squared_norm());
}

void SparseVector::normalize() noexcept {
    const double n = norm();
    if (n == 0.0) {
        return;
    }
    for (auto& entry : entries_) {
        entry.second /= n;
    }
}

double SparseVector::dot(const SparseVector& other) const {
    if (other.dim_ != dim_) {
        throw DimensionMismatch(fmt::format("dot of dim {} with dim {}", dim_, other.dim_));
    }
    double s = 0.0;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() && b != other.entries_.end()) {
        if (a->first < b->first) {
            ++a;
        } else if (b->first < a->first) {
            ++b;
        } else {
            s += a->second * b->second;
            ++a;
            ++b;
        }
    }
    return s;
}

double SparseVector::dot(std::span<const double> dense) const {
    if (dense.size() != dim_) {
        throw DimensionMismatch(fmt::format("dot of dim {} with dense dim {}", dim_, dense.size()));
    }
    double s = 0.0;
    for (const auto& [index, value] : entries_) {
        s += value * dense[index];
    }
    return s;
}

SparseVector vectorize(const NGramCounts& grams, const HashConfig& cfg) {
    cfg.validate();
    std::vector<SparseVector::Entry> raw;
    raw.reserve(grams.entries.size());
    const std::uint32_t mask = cfg.mask();
    for (const auto& [gram, count] : grams.entries) {
        const std::int32_t h = murmur3_32(gram, cfg.seed);
        const auto index = static_cast<std::uint32_t>(h) & mask;
        const double c = static_cast<double>(count);
        raw.emplace_back(index, h >= 0 ? c : -c);
    }
    // Counts are integers, so per-index sums are exact and independent of
    // iteration order; the norm is then taken over index-sorted entries.
    SparseVector v = SparseVector::from_entries(cfg.dim(), std::move(raw));
    v.normalize();
    return v;
}

SparseVector featurize(const Sentence& sentence, unsigned ngram_order, const HashConfig& cfg) {
    return vectorize(extract_ngrams(sentence, ngram_order), cfg);
}

}  // namespace olid
