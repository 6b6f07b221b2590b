#include "olid/textpipe.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <vector>

#include <fmt/format.h>

#include "olid/errors.hpp"

namespace olid {

namespace {

// Length of the UTF-8 sequence starting at bytes[pos], or 0 if malformed.
std::size_t utf8_sequence_length(std::string_view bytes, std::size_t pos) noexcept {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(bytes[i]); };
    const auto continuation = [&](std::size_t i) {
        return i < bytes.size() && (byte(i) & 0xC0u) == 0x80u;
    };

    const unsigned char lead = byte(pos);
    if (lead < 0x80u) {
        return 1;
    }
    if (lead >= 0xC2u && lead <= 0xDFu) {
        return continuation(pos + 1) ? 2 : 0;
    }
    if (lead >= 0xE0u && lead <= 0xEFu) {
        if (!continuation(pos + 1) || !continuation(pos + 2)) {
            return 0;
        }
        const unsigned char second = byte(pos + 1);
        if (lead == 0xE0u && second < 0xA0u) {
            return 0;  // overlong
        }
        if (lead == 0xEDu && second >= 0xA0u) {
            return 0;  // surrogate
        }
        return 3;
    }
    if (lead >= 0xF0u && lead <= 0xF4u) {
        if (!continuation(pos + 1) || !continuation(pos + 2) || !continuation(pos + 3)) {
            return 0;
        }
        const unsigned char second = byte(pos + 1);
        if (lead == 0xF0u && second < 0x90u) {
            return 0;  // overlong
        }
        if (lead == 0xF4u && second >= 0x90u) {
            return 0;  // above U+10FFFF
        }
        return 4;
    }
    return 0;
}

char32_t decode_at(std::string_view s, std::size_t pos, std::size_t len) noexcept {
    const auto b = [&](std::size_t i) { return static_cast<char32_t>(static_cast<unsigned char>(s[pos + i])); };
    switch (len) {
        case 1: return b(0);
        case 2: return ((b(0) & 0x1Fu) << 6) | (b(1) & 0x3Fu);
        case 3: return ((b(0) & 0x0Fu) << 12) | ((b(1) & 0x3Fu) << 6) | (b(2) & 0x3Fu);
        default:
            return ((b(0) & 0x07u) << 18) | ((b(1) & 0x3Fu) << 12) | ((b(2) & 0x3Fu) << 6) |
                   (b(3) & 0x3Fu);
    }
}

std::size_t first_invalid_offset(std::string_view bytes) noexcept {
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        const std::size_t len = utf8_sequence_length(bytes, pos);
        if (len == 0) {
            return pos;
        }
        pos += len;
    }
    return bytes.size();
}

const icu::Normalizer2& nfc() {
    static const icu::Normalizer2* instance = [] {
        UErrorCode status = U_ZERO_ERROR;
        const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
        if (U_FAILURE(status) || n == nullptr) {
            throw Error(fmt::format("cannot load NFC normalizer: {}", u_errorName(status)));
        }
        return n;
    }();
    return *instance;
}

}  // namespace

bool is_valid_utf8(std::string_view bytes) noexcept {
    return first_invalid_offset(bytes) == bytes.size();
}

std::size_t count_code_points(std::string_view utf8) noexcept {
    std::size_t n = 0;
    for (const char c : utf8) {
        if ((static_cast<unsigned char>(c) & 0xC0u) != 0x80u) {
            ++n;
        }
    }
    return n;
}

Sentence normalize(std::string_view raw) {
    if (const std::size_t bad = first_invalid_offset(raw); bad != raw.size()) {
        throw InvalidEncoding(fmt::format("invalid UTF-8 at byte offset {}", bad));
    }

    std::string composed;
    if (raw.empty()) {
        return Sentence{};
    }
    {
        UErrorCode status = U_ZERO_ERROR;
        const auto src = icu::UnicodeString::fromUTF8(
            icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
        const icu::UnicodeString out = nfc().normalize(src, status);
        if (U_FAILURE(status)) {
            throw Error(fmt::format("NFC normalization failed: {}", u_errorName(status)));
        }
        out.toUTF8String(composed);
    }

    std::string text;
    text.reserve(composed.size());
    std::size_t length = 0;
    bool pending_space = false;
    for (std::size_t pos = 0; pos < composed.size();) {
        const std::size_t len = utf8_sequence_length(composed, pos);
        const char32_t cp = decode_at(composed, pos, len);
        if (u_isUWhiteSpace(static_cast<UChar32>(cp))) {
            pending_space = !text.empty();
        } else {
            if (pending_space) {
                text.push_back(' ');
                ++length;
                pending_space = false;
            }
            text.append(composed, pos, len);
            ++length;
        }
        pos += len;
    }
    return Sentence(std::move(text), length);
}

std::uint64_t NGramCounts::total() const noexcept {
    std::uint64_t sum = 0;
    for (const auto& [gram, count] : entries) {
        sum += count;
    }
    return sum;
}

NGramCounts extract_ngrams(const Sentence& sentence, unsigned order) {
    if (order == 0) {
        throw InvalidConfig("n-gram order must be at least 1");
    }
    NGramCounts counts;
    counts.order = order;
    const std::string& text = sentence.text();
    if (text.empty()) {
        return counts;
    }
    if (sentence.length() < order) {
        counts.entries.emplace(text, 1u);
        return counts;
    }

    // Byte offset of every code point, plus the end sentinel.
    std::vector<std::size_t> offsets;
    offsets.reserve(sentence.length() + 1);
    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        if ((static_cast<unsigned char>(text[pos]) & 0xC0u) != 0x80u) {
            offsets.push_back(pos);
        }
    }
    offsets.push_back(text.size());

    const std::size_t windows = sentence.length() - order + 1;
    counts.entries.reserve(windows);
    for (std::size_t i = 0; i < windows; ++i) {
        const std::size_t begin = offsets[i];
        const std::size_t end = offsets[i + order];
        ++counts.entries[text.substr(begin, end - begin)];
    }
    return counts;
}

}  // namespace olid
