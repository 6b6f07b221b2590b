/**
 * Open-set evaluation: one model per language, trained on a split of that
 * language only and tested on its held-out part plus every sentence of
 * every other language.
 *
 * Reports precision, recall and F1. Accuracy is intentionally not reported:
 * with one positive class against many negatives it is dominated by the
 * negatives.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "olid/corpusio.hpp"
#include "olid/ocsvm.hpp"

namespace olid {

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Zero denominators yield 0 for the affected metric.
Metrics prf1(const ConfusionCounts& c) noexcept;

/// Quantiles of a set of decision scores.
struct ScoreSummary {
    std::size_t count = 0;
    double min = 0.0;
    double q05 = 0.0;
    double median = 0.0;
    double q95 = 0.0;
    double max = 0.0;
};

ScoreSummary summarize_scores(std::vector<double> scores);

struct LanguageResult {
    Metrics metrics;
    ConfusionCounts counts;
    std::size_t train_size = 0;
    std::size_t positive_test_size = 0;
    std::size_t negative_test_size = 0;
    std::uint64_t sv_count = 0;
    bool converged = false;
    ScoreSummary positive_scores;
    ScoreSummary negative_scores;
};

struct EvalReport {
    std::map<std::string, LanguageResult> per_language;
    /// Unweighted means over languages.
    Metrics macro;
    std::uint64_t split_seed = 0;
    double train_fraction = 0.9;
};

struct ProtocolOptions {
    double train_fraction = 0.9;
    /// Worker threads for per-language runs; 0 picks hardware concurrency.
    unsigned jobs = 0;
};

/// Minimum corpus size accepted by run_protocol.
inline constexpr std::size_t kMinCorpusSentences = 10;

/// Deterministic for a given split_seed regardless of `jobs`. Throws
/// InsufficientData for fewer than two languages or a corpus with fewer
/// than ten sentences, InvalidConfig for duplicate tags.
EvalReport run_protocol(std::span<const Corpus> corpora, const TrainConfig& config,
                        std::uint64_t split_seed, const ProtocolOptions& options = {});

/// Recomputes the macro average from per_language.
Metrics macro_average(const std::map<std::string, LanguageResult>& per_language);

/// Fixed-width table: Language, P, R, F1 and an Average row, 3 decimals.
/// Throws InsufficientData for an empty report.
std::string render_table(const EvalReport& report);

/// Flat key=value lines, one per language plus a macro line. Byte-identical
/// for identical reports.
std::string render_machine_report(const EvalReport& report);

void write_machine_report(const EvalReport& report, const std::filesystem::path& path);

}  // namespace olid
