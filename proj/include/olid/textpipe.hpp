/**
 * Text pipeline: UTF-8 validation, canonical normalization and character
 * n-gram extraction.
 *
 * All n-gram windows are taken over Unicode code points, never bytes, so a
 * sentence of k Cyrillic letters yields exactly as many windows as k ASCII
 * letters.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>

namespace olid {

/// A normalized unit of text: valid UTF-8 in NFC, whitespace runs collapsed to
/// a single U+0020, no leading or trailing whitespace. Only `normalize`
/// constructs one, so holding a Sentence means the invariants hold.
class Sentence {
public:
    Sentence() = default;

    const std::string& text() const noexcept { return text_; }
    bool empty() const noexcept { return text_.empty(); }
    /// Length in code points.
    std::size_t length() const noexcept { return length_; }

    friend bool operator==(const Sentence&, const Sentence&) = default;

private:
    friend Sentence normalize(std::string_view raw);
    Sentence(std::string text, std::size_t length) : text_(std::move(text)), length_(length) {}

    std::string text_;
    std::size_t length_ = 0;
};

/// Validates `raw` as UTF-8 and returns its canonical form.
///
/// Canonically equivalent inputs (e.g. U+00D6 vs U+004F U+0308) produce
/// byte-identical results. No case folding is applied. Throws
/// InvalidEncoding on malformed input; bytes are never silently replaced.
Sentence normalize(std::string_view raw);

/// True when `bytes` is well-formed UTF-8 (no overlongs, surrogates or code
/// points above U+10FFFF).
bool is_valid_utf8(std::string_view bytes) noexcept;

/// Number of code points in a valid UTF-8 string.
std::size_t count_code_points(std::string_view utf8) noexcept;

/// Multiset of character n-grams. Keys are UTF-8 encoded.
struct NGramCounts {
    unsigned order = 0;
    std::unordered_map<std::string, std::uint32_t> entries;

    std::uint64_t total() const noexcept;
};

/// Overlapping sliding window of `order` code points, no padding. A nonempty
/// sentence shorter than `order` yields one entry holding the whole text; an
/// empty sentence yields no entries. Throws InvalidConfig when order == 0.
NGramCounts extract_ngrams(const Sentence& sentence, unsigned order);

}  // namespace olid
