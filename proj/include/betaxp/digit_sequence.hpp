#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "betaxp/errors.hpp"

namespace betaxp {

enum class TailKind { zeros, ones, periodic };

namespace detail {

inline void validate_digits(const std::vector<std::uint8_t>& d, const char* what) {
    for (std::uint8_t v : d)
        if (v > 1) throw DomainError(std::string(what) + ": digit out of {0,1}");
}

inline std::string digits_to_string(const std::vector<std::uint8_t>& d) {
    std::string out;
    out.reserve(d.size());
    for (std::uint8_t v : d) out.push_back(v ? '1' : '0');
    return out;
}

inline std::vector<std::uint8_t> parse_digit_word(std::string_view text) {
    std::vector<std::uint8_t> out;
    out.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw ParseError(std::string("bad digit '") + c + "' in digit word");
        out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
}

} // namespace detail

/// An infinite 0/1 coefficient sequence: a finite prefix followed by a tail
/// descriptor (all zeros, all ones, or a repeating word).  A periodic word
/// of all zeros or all ones is normalized to the corresponding tail kind, so
/// representations are never trivially reducible.
class DigitSequence {
public:
    DigitSequence() = default;

    static DigitSequence zeros_tail(std::vector<std::uint8_t> prefix) {
        detail::validate_digits(prefix, "prefix");
        DigitSequence s;
        s.prefix_ = std::move(prefix);
        s.tail_ = TailKind::zeros;
        return s;
    }

    static DigitSequence ones_tail(std::vector<std::uint8_t> prefix) {
        detail::validate_digits(prefix, "prefix");
        DigitSequence s;
        s.prefix_ = std::move(prefix);
        s.tail_ = TailKind::ones;
        return s;
    }

    static DigitSequence periodic_tail(std::vector<std::uint8_t> prefix, std::vector<std::uint8_t> word) {
        detail::validate_digits(prefix, "prefix");
        detail::validate_digits(word, "period word");
        if (word.empty()) throw DomainError("periodic tail word must be nonempty");
        bool any0 = false, any1 = false;
        for (std::uint8_t v : word) (v ? any1 : any0) = true;
        if (!any1) return zeros_tail(std::move(prefix));
        if (!any0) return ones_tail(std::move(prefix));
        DigitSequence s;
        s.prefix_ = std::move(prefix);
        s.tail_ = TailKind::periodic;
        s.word_ = std::move(word);
        return s;
    }

    /// Text format: 0/1 prefix plus optional tail suffix `:z` (zeros, the
    /// default), `:o` (ones), or `:(w)` (repeating word w).
    static DigitSequence parse(std::string_view text) {
        std::size_t colon = text.find(':');
        std::vector<std::uint8_t> prefix = detail::parse_digit_word(text.substr(0, colon));
        if (colon == std::string_view::npos) return zeros_tail(std::move(prefix));
        std::string_view tail = text.substr(colon + 1);
        if (tail == "z") return zeros_tail(std::move(prefix));
        if (tail == "o") return ones_tail(std::move(prefix));
        if (tail.size() >= 3 && tail.front() == '(' && tail.back() == ')')
            return periodic_tail(std::move(prefix),
                                 detail::parse_digit_word(tail.substr(1, tail.size() - 2)));
        throw ParseError("bad tail descriptor ':" + std::string(tail) +
                         "' (expected :z, :o, or :(word))");
    }

    std::string str() const {
        std::string out = detail::digits_to_string(prefix_);
        switch (tail_) {
            case TailKind::zeros: out += ":z"; break;
            case TailKind::ones: out += ":o"; break;
            case TailKind::periodic: out += ":(" + detail::digits_to_string(word_) + ")"; break;
        }
        return out;
    }

    const std::vector<std::uint8_t>& prefix() const noexcept { return prefix_; }
    TailKind tail_kind() const noexcept { return tail_; }
    const std::vector<std::uint8_t>& period_word() const noexcept { return word_; }

    std::size_t prefix_size() const noexcept { return prefix_.size(); }

    /// Length of the repeating unit (1 for the constant tails).
    std::size_t period_size() const noexcept {
        return tail_ == TailKind::periodic ? word_.size() : 1;
    }

    /// Digit at 0-based position i of the infinite sequence.
    std::uint8_t at(std::size_t i) const noexcept {
        if (i < prefix_.size()) return prefix_[i];
        switch (tail_) {
            case TailKind::zeros: return 0;
            case TailKind::ones: return 1;
            default: return word_[(i - prefix_.size()) % word_.size()];
        }
    }

private:
    std::vector<std::uint8_t> prefix_;
    TailKind tail_ = TailKind::zeros;
    std::vector<std::uint8_t> word_;
};

} // namespace betaxp
