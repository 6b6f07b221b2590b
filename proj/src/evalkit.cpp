#include "olid/evalkit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "olid/errors.hpp"

namespace olid {

Metrics prf1(const ConfusionCounts& c) noexcept {
    Metrics m;
    const auto ratio = [](std::uint64_t num, std::uint64_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    m.precision = ratio(c.tp, c.tp + c.fp);
    m.recall = ratio(c.tp, c.tp + c.fn);
    const double sum = m.precision + m.recall;
    m.f1 = sum == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / sum;
    return m;
}

ScoreSummary summarize_scores(std::vector<double> scores) {
    ScoreSummary s;
    s.count = scores.size();
    if (scores.empty()) {
        return s;
    }
    std::sort(scores.begin(), scores.end());
    // Nearest-rank quantile.
    const auto at = [&](double q) {
        const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(scores.size())));
        return scores[std::clamp<std::size_t>(rank, 1, scores.size()) - 1];
    };
    s.min = scores.front();
    s.q05 = at(0.05);
    s.median = at(0.5);
    s.q95 = at(0.95);
    s.max = scores.back();
    return s;
}

Metrics macro_average(const std::map<std::string, LanguageResult>& per_language) {
    Metrics m;
    if (per_language.empty()) {
        return m;
    }
    for (const auto& [tag, r] : per_language) {
        m.precision += r.metrics.precision;
        m.recall += r.metrics.recall;
        m.f1 += r.metrics.f1;
    }
    const auto n = static_cast<double>(per_language.size());
    m.precision /= n;
    m.recall /= n;
    m.f1 /= n;
    return m;
}

namespace {

// Runs body(i) for i in [0, count) on up to `jobs` threads. The first
// exception thrown is rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t count, unsigned jobs, Body&& body) {
    if (jobs == 0) {
        jobs = std::max(1u, std::thread::hardware_concurrency());
    }
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                    next = count;
                }
            }
        });
    }
    workers.clear();
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace

EvalReport run_protocol(std::span<const Corpus> corpora, const TrainConfig& config,
                        std::uint64_t split_seed, const ProtocolOptions& options) {
    config.validate();
    if (corpora.size() < 2) {
        throw InsufficientData(
            fmt::format("the protocol needs at least 2 languages, got {}", corpora.size()));
    }
    std::set<std::string> tags;
    for (const auto& c : corpora) {
        if (c.language_tag.empty()) {
            throw InvalidConfig("corpus has an empty language tag");
        }
        if (!tags.insert(c.language_tag).second) {
            throw InvalidConfig(fmt::format("duplicate language tag '{}'", c.language_tag));
        }
        if (c.sentences.size() < kMinCorpusSentences) {
            throw InsufficientData(fmt::format("corpus '{}' has {} sentences, need at least {}",
                                               c.language_tag, c.sentences.size(),
                                               kMinCorpusSentences));
        }
    }

    const std::size_t n_lang = corpora.size();
    // Featurization does not depend on the model, so every sentence is
    // vectorized once and reused as a negative for the other languages.
    std::vector<std::vector<SparseVector>> features(n_lang);
    parallel_for(n_lang, options.jobs, [&](std::size_t l) {
        auto& out = features[l];
        out.reserve(corpora[l].sentences.size());
        for (const auto& s : corpora[l].sentences) {
            out.push_back(featurize(s, config.ngram_order, config.hash));
        }
    });

    const unsigned jobs =
        options.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.jobs;
    SolverOptions solver;
    solver.cache_bytes = std::max<std::size_t>((std::size_t{512} << 20) / jobs,
                                               std::size_t{32} << 20);

    std::vector<LanguageResult> results(n_lang);
    parallel_for(n_lang, options.jobs, [&](std::size_t l) {
        const auto& own = features[l];
        const auto [train_idx, test_idx] = split_indices(own.size(), options.train_fraction, split_seed);
        std::vector<SparseVector> train_set;
        train_set.reserve(train_idx.size());
        for (const std::size_t i : train_idx) {
            train_set.push_back(own[i]);
        }
        const TrainResult trained = train_vectors(train_set, config, solver);
        train_set.clear();
        const OneClassModel& model = trained.model;

        LanguageResult r;
        r.train_size = train_idx.size();
        r.sv_count = model.sv_count();
        r.converged = model.converged();

        std::vector<double> pos_scores;
        pos_scores.reserve(test_idx.size());
        for (const std::size_t i : test_idx) {
            const double score = model.decision(own[i]);
            pos_scores.push_back(score);
            (score > 0.0 ? r.counts.tp : r.counts.fn) += 1;
        }
        std::vector<double> neg_scores;
        for (std::size_t other = 0; other < n_lang; ++other) {
            if (other == l) {
                continue;
            }
            for (const auto& x : features[other]) {
                const double score = model.decision(x);
                neg_scores.push_back(score);
                (score > 0.0 ? r.counts.fp : r.counts.tn) += 1;
            }
        }
        r.positive_test_size = pos_scores.size();
        r.negative_test_size = neg_scores.size();
        r.metrics = prf1(r.counts);
        r.positive_scores = summarize_scores(std::move(pos_scores));
        r.negative_scores = summarize_scores(std::move(neg_scores));
        results[l] = r;
    });

    EvalReport report;
    report.split_seed = split_seed;
    report.train_fraction = options.train_fraction;
    for (std::size_t l = 0; l < n_lang; ++l) {
        report.per_language.emplace(corpora[l].language_tag, results[l]);
    }
    report.macro = macro_average(report.per_language);
    return report;
}

std::string render_table(const EvalReport& report) {
    if (report.per_language.empty()) {
        throw InsufficientData("cannot render an empty report");
    }
    std::size_t width = std::string_view("Language").size();
    for (const auto& [tag, r] : report.per_language) {
        width = std::max(width, tag.size());
    }
    std::string out;
    const auto row = [&](std::string_view name, const Metrics& m) {
        out += fmt::format("{:<{}}  {:>5.3f}  {:>5.3f}  {:>5.3f}\n", name, width, m.precision,
                           m.recall, m.f1);
    };
    out += fmt::format("{:<{}}  {:>5}  {:>5}  {:>5}\n", "Language", width, "P", "R", "F1");
    for (const auto& [tag, r] : report.per_language) {
        row(tag, r.metrics);
    }
    row("Average", report.macro);
    return out;
}

std::string render_machine_report(const EvalReport& report) {
    std::string out = "# olid evaluation report v1\n";
    out += fmt::format("split_seed={}\n", report.split_seed);
    out += fmt::format("train_fraction={}\n", report.train_fraction);
    for (const auto& [tag, r] : report.per_language) {
        const auto& c = r.counts;
        out += fmt::format(
            "language={} p={:.9f} r={:.9f} f1={:.9f} tp={} fp={} tn={} fn={} train={} sv={} "
            "converged={} pos_median={:.9g} pos_q05={:.9g} neg_median={:.9g} neg_q95={:.9g}\n",
            tag, r.metrics.precision, r.metrics.recall, r.metrics.f1, c.tp, c.fp, c.tn, c.fn,
            r.train_size, r.sv_count, r.converged ? 1 : 0, r.positive_scores.median,
            r.positive_scores.q05, r.negative_scores.median, r.negative_scores.q95);
    }
    out += fmt::format("macro p={:.9f} r={:.9f} f1={:.9f}\n", report.macro.precision,
                       report.macro.recall, report.macro.f1);
    return out;
}

void write_machine_report(const EvalReport& report, const std::filesystem::path& path) {
    const std::string text = render_machine_report(report);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    }
    out << text;
    if (!out) {
        throw IoError(fmt::format("write to '{}' failed", path.string()));
    }
}

}  // namespace olid
