// Random Unicode text generators for property tests.
#pragma once

#include <random>
#include <string>

namespace olid::testing {

inline void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

/// A code point drawn from a mix of scripts: ASCII, Latin-1, combining
/// marks, Greek, Cyrillic, Arabic, Devanagari, Hangul, CJK, supplementary
/// planes and whitespace. Surrogates are never produced.
inline char32_t random_code_point(std::mt19937& rng, bool with_whitespace) {
    struct Range {
        char32_t lo, hi;
    };
    static constexpr Range kRanges[] = {
        {0x21, 0x7E},     {0xC0, 0xFF},     {0x300, 0x36F},   {0x391, 0x3C9},
        {0x410, 0x44F},   {0x621, 0x64A},   {0x905, 0x939},   {0x1100, 0x1112},
        {0x1161, 0x1175}, {0xAC00, 0xD7A3}, {0x4E00, 0x9FFF}, {0x1F600, 0x1F64F},
        {0x10000, 0x1007F}, {0xE000, 0xF8FF},
    };
    if (with_whitespace && rng() % 8 == 0) {
        static constexpr char32_t kSpaces[] = {U' ', U'\t', U'\n', 0xA0, 0x3000};
        return kSpaces[rng() % std::size(kSpaces)];
    }
    const Range& r = kRanges[rng() % std::size(kRanges)];
    return r.lo + static_cast<char32_t>(rng() % (r.hi - r.lo + 1));
}

inline std::string random_utf8(std::mt19937& rng, std::size_t code_points, bool with_whitespace) {
    std::string out;
    for (std::size_t i = 0; i < code_points; ++i) {
        append_utf8(out, random_code_point(rng, with_whitespace));
    }
    return out;
}

}  // namespace olid::testing
