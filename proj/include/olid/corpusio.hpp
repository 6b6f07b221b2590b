#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "olid/textpipe.hpp"

namespace olid {

/// One language's sentences, normalized at load time.
struct Corpus {
    std::string language_tag;
    std::vector<Sentence> sentences;
};

/// Reads UTF-8 text, one sentence per line. Lines that normalize to nothing
/// are skipped. Throws InvalidEncoding carrying the 1-based line number.
Corpus read_corpus(std::istream& in, std::string language_tag);

/// Loads a corpus file; the tag defaults to the filename stem. Throws
/// IoError when the file cannot be opened.
Corpus load_corpus(const std::filesystem::path& path, std::string language_tag = {});

/// Every `*.txt` file in `dir`, ordered by tag. Throws InsufficientData when
/// there are none and IoError when `dir` is not a directory.
std::vector<Corpus> load_corpus_dir(const std::filesystem::path& dir);

struct Split {
    std::vector<Sentence> train;
    std::vector<Sentence> test;
};

/// Seeded Fisher-Yates permutation of [0, n). Stable across platforms and
/// standard libraries.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

/// Index form of split_corpus: positions of the train and test sentences.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t n,
                                                                            double train_fraction,
                                                                            std::uint64_t seed);

/// Shuffles with `seed` and cuts off floor(n * (1 - train_fraction)) test
/// sentences (at least one). Throws InvalidConfig unless
/// 0 < train_fraction < 1 and InsufficientData when either side would be
/// empty.
Split split_corpus(std::span<const Sentence> sentences, double train_fraction, std::uint64_t seed);

}  // namespace olid
