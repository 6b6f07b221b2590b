#include "olid/corpusio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "olid/errors.hpp"

namespace olid {

Corpus read_corpus(std::istream& in, std::string language_tag) {
    Corpus corpus;
    corpus.language_tag = std::move(language_tag);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        try {
            Sentence s = normalize(line);
            if (!s.empty()) {
                corpus.sentences.push_back(std::move(s));
            }
        } catch (const InvalidEncoding& e) {
            throw InvalidEncoding(fmt::format("line {}: {}", line_no, e.what()), line_no);
        }
    }
    if (in.bad()) {
        throw IoError("read error");
    }
    return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, std::string language_tag) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open corpus '{}'", path.string()));
    }
    if (language_tag.empty()) {
        language_tag = path.stem().string();
    }
    try {
        return read_corpus(in, std::move(language_tag));
    } catch (const InvalidEncoding& e) {
        throw InvalidEncoding(fmt::format("{}: {}", path.string(), e.what()), e.line());
    }
}

std::vector<Corpus> load_corpus_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw IoError(fmt::format("'{}' is not a directory", dir.string()));
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            files.push_back(entry.path());
        }
    }
    if (files.empty()) {
        throw InsufficientData(fmt::format("no *.txt corpora in '{}'", dir.string()));
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.stem().string() < b.stem().string(); });

    std::vector<Corpus> corpora;
    corpora.reserve(files.size());
    for (const auto& f : files) {
        corpora.push_back(load_corpus(f));
    }
    return corpora;
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    // mt19937_64 output is fully specified by the standard; the distributions
    // are not, so bounded draws use rejection sampling on raw output.
    std::mt19937_64 rng(seed);
    const auto uniform_below = [&rng](std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t r;
        do {
            r = rng();
        } while (r >= limit);
        return r % bound;
    };
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = uniform_below(i);
        std::swap(order[i - 1], order[j]);
    }
    return order;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t n,
                                                                            double train_fraction,
                                                                            std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw InvalidConfig(fmt::format("split fraction must be in (0, 1), got {}", train_fraction));
    }
    if (n < 2) {
        throw InsufficientData(fmt::format("cannot split {} sentences", n));
    }
    // The epsilon absorbs representation error, e.g. 100 * (1 - 0.9) = 9.999...
    const double raw_test = static_cast<double>(n) * (1.0 - train_fraction);
    std::size_t n_test = static_cast<std::size_t>(std::floor(raw_test + 1e-9));
    n_test = std::max<std::size_t>(n_test, 1);
    if (n_test >= n) {
        throw InsufficientData(
            fmt::format("split of {} sentences at {} leaves no training data", n, train_fraction));
    }

    std::vector<std::size_t> order = seeded_permutation(n, seed);
    std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(n - n_test), order.end());
    order.resize(n - n_test);
    return {std::move(order), std::move(test)};
}

Split split_corpus(std::span<const Sentence> sentences, double train_fraction, std::uint64_t seed) {
    const auto [train_idx, test_idx] = split_indices(sentences.size(), train_fraction, seed);
    Split out;
    out.train.reserve(train_idx.size());
    out.test.reserve(test_idx.size());
    for (const std::size_t i : train_idx) {
        out.train.push_back(sentences[i]);
    }
    for (const std::size_t i : test_idx) {
        out.test.push_back(sentences[i]);
    }
    return out;
}

}  // namespace olid
