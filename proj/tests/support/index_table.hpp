// Dictionary vectorizer used only to reproduce the failure modes of a fixed
// feature index table: n-grams missing from the table are dropped.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "olid/hashvec.hpp"
#include "olid/ocsvm.hpp"
#include "olid/textpipe.hpp"

namespace olid::testing {

class IndexTableVectorizer {
public:
    IndexTableVectorizer(std::span<const Sentence> training, unsigned order) : order_(order) {
        for (const auto& s : training) {
            for (const auto& [gram, count] : extract_ngrams(s, order_).entries) {
                table_.try_emplace(gram, static_cast<std::uint32_t>(table_.size()));
            }
        }
    }

    std::uint32_t dim() const { return static_cast<std::uint32_t>(table_.size()); }

    SparseVector vectorize(const Sentence& s) const {
        std::vector<SparseVector::Entry> entries;
        for (const auto& [gram, count] : extract_ngrams(s, order_).entries) {
            if (const auto it = table_.find(gram); it != table_.end()) {
                entries.emplace_back(it->second, static_cast<double>(count));
            }
        }
        SparseVector v = SparseVector::from_entries(dim(), std::move(entries));
        v.normalize();
        return v;
    }

    /// Fraction of a sentence's n-gram occurrences found in the table.
    double coverage(const Sentence& s) const {
        const NGramCounts g = extract_ngrams(s, order_);
        std::uint64_t known = 0;
        for (const auto& [gram, count] : g.entries) {
            known += table_.contains(gram) ? count : 0;
        }
        return g.total() == 0 ? 0.0 : static_cast<double>(known) / static_cast<double>(g.total());
    }

private:
    unsigned order_;
    std::unordered_map<std::string, std::uint32_t> table_;
};

// A one-class model over the index-table features, scored directly from the
// dual solution.
class IndexTableModel {
public:
    IndexTableModel(std::span<const Sentence> training, const TrainConfig& cfg)
        : table_(training, cfg.ngram_order), weights_(table_.dim(), 0.0) {
        std::vector<SparseVector> points;
        for (const auto& s : training) {
            points.push_back(table_.vectorize(s));
        }
        const DualSolution sol = solve_dual(points, cfg.nu, cfg.tol, cfg.iteration_cap(points.size()));
        for (std::size_t i = 0; i < points.size(); ++i) {
            for (const auto& [index, value] : points[i].entries()) {
                weights_[index] += sol.alpha[i] * value;
            }
        }
        rho_ = sol.rho;
    }

    double decision(std::string_view raw) const {
        return table_.vectorize(normalize(raw)).dot(std::span<const double>(weights_)) - rho_;
    }
    double coverage(std::string_view raw) const { return table_.coverage(normalize(raw)); }

private:
    IndexTableVectorizer table_;
    std::vector<double> weights_;
    double rho_ = 0.0;
};

}  // namespace olid::testing
