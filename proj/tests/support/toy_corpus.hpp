// Small synthetic corpora: random sentences over a fixed word list, so a
// held-out sentence shares most of its n-grams with the training part.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "olid/corpusio.hpp"

namespace olid::testing {

inline constexpr std::string_view kEnglishWords[] = {
    "the", "house", "is", "small", "and", "the", "garden", "was", "green", "we", "walked",
    "to", "school", "every", "morning", "with", "our", "friends", "they", "would", "never",
    "have", "thought", "about", "that", "weather", "today", "looks", "nice", "people",
    "often", "read", "books", "in", "the", "evening", "after", "dinner", "which", "should",
    // Entity names frequent enough to read like news text.
    "John Smith", "New York", "John Smith", "New York", "John Smith", "New York",
    "John Smith", "New York",
};

inline constexpr std::string_view kRussianWords[] = {
    "дом", "был", "маленький", "и", "сад", "зелёный", "мы", "шли", "в", "школу", "каждое",
    "утро", "с", "нашими", "друзьями", "они", "никогда", "не", "думали", "об", "этом",
    "погода", "сегодня", "хорошая", "люди", "часто", "читают", "книги", "вечером", "после",
    "ужина", "который", "должен", "город", "большой", "река", "течёт", "медленно",
};

inline constexpr std::string_view kFrenchWords[] = {
    "la", "maison", "est", "petite", "et", "le", "jardin", "était", "vert", "nous", "allions",
    "à", "l'école", "chaque", "matin", "avec", "nos", "amis", "ils", "n'auraient", "jamais",
    "pensé", "que", "le", "temps", "aujourd'hui", "semble", "beau", "les", "gens", "lisent",
    "souvent", "des", "livres", "le", "soir", "après", "le", "dîner", "qui", "devrait",
};

inline Corpus toy_corpus(std::string tag, std::span<const std::string_view> words, std::size_t n,
                         std::uint32_t seed, std::size_t min_words = 6, std::size_t max_words = 15) {
    std::mt19937 rng(seed);
    Corpus c{std::move(tag), {}};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t length = min_words + rng() % (max_words - min_words + 1);
        std::string line;
        for (std::size_t k = 0; k < length; ++k) {
            if (k != 0) {
                line += ' ';
            }
            line += words[rng() % words.size()];
        }
        c.sentences.push_back(normalize(line + "."));
    }
    return c;
}

}  // namespace olid::testing
