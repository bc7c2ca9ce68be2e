#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "betaxp/beta.hpp"
#include "betaxp/digit_sequence.hpp"
#include "betaxp/errors.hpp"
#include "betaxp/polynomial.hpp"
#include "betaxp/root_isolation.hpp"

namespace betaxp {

/// A complementary word pair (w, w-bar) of length n with w[0] = 1 (canonical
/// orientation), its signed polynomial sum (2 w_i - 1) beta^(n-i), and the
/// bases in (1,2) where swapping w for w-bar preserves value.
struct SwapRule {
    std::vector<std::uint8_t> word;
    std::vector<std::uint8_t> complement;
    IntegerPolynomial polynomial;
    std::vector<Interval> bases;
};

/// All 2^(n-1) complementary pairs of length n whose word starts with 1, in
/// ascending binary order of the word.
inline std::vector<std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>>>
swap_candidates(std::size_t n) {
    if (n < 1 || n > 16) throw DomainError("swap word length must be in [1, 16]");
    std::vector<std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>>> out;
    out.reserve(std::size_t{1} << (n - 1));
    for (std::uint32_t v = std::uint32_t{1} << (n - 1); v < (std::uint32_t{1} << n); ++v) {
        std::vector<std::uint8_t> w(n), wb(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = static_cast<std::uint8_t>((v >> (n - 1 - i)) & 1u);
            wb[i] = static_cast<std::uint8_t>(1 - w[i]);
        }
        out.emplace_back(std::move(w), std::move(wb));
    }
    return out;
}

/// The polynomial sum_{i=1..n} (2 w_i - 1) beta^(n-i) whose roots are
/// exactly the bases where sum w_i beta^(-i) = sum wbar_i beta^(-i).
inline IntegerPolynomial swap_polynomial(const std::vector<std::uint8_t>& word,
                                         const std::vector<std::uint8_t>& complement) {
    if (word.empty() || word.size() != complement.size())
        throw DomainError("swap pair must be two nonempty words of equal length");
    std::vector<long long> coeffs(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] > 1 || complement[i] > 1 || word[i] + complement[i] != 1)
            throw DomainError("swap pair must be elementwise complementary 0/1 words");
        coeffs[i] = 2 * static_cast<long long>(word[i]) - 1;
    }
    return IntegerPolynomial(std::move(coeffs));
}

/// Every candidate pair of length n with its polynomial and certified bases
/// (possibly empty).
inline std::vector<SwapRule> swap_catalog(std::size_t n, long precision_bits = 256) {
    std::vector<SwapRule> out;
    for (auto& [w, wb] : swap_candidates(n)) {
        IntegerPolynomial p = swap_polynomial(w, wb);
        std::vector<Interval> bases = roots_in_interval(p, mpq_class(1), mpq_class(2), precision_bits);
        out.push_back(SwapRule{std::move(w), std::move(wb), std::move(p), std::move(bases)});
    }
    return out;
}

/// Only the rules admissible somewhere in (1,2), i.e. with at least one base.
inline std::vector<SwapRule> admissible_swaps(std::size_t n, long precision_bits = 256) {
    std::vector<SwapRule> out;
    for (auto& rule : swap_catalog(n, precision_bits))
        if (!rule.bases.empty()) out.push_back(std::move(rule));
    return out;
}

/// All non-overlapping matches of the rule's word or complement inside the
/// prefix of s, scanned greedily left to right.  Returns 1-based start
/// positions.
inline std::vector<std::size_t> find_occurrences(const DigitSequence& s, const SwapRule& rule) {
    std::size_t n = rule.word.size();
    std::vector<std::size_t> out;
    const std::vector<std::uint8_t>& p = s.prefix();
    for (std::size_t i = 0; n > 0 && i + n <= p.size();) {
        bool hit_w = true, hit_c = true;
        for (std::size_t j = 0; j < n && (hit_w || hit_c); ++j) {
            hit_w = hit_w && p[i + j] == rule.word[j];
            hit_c = hit_c && p[i + j] == rule.complement[j];
        }
        if (hit_w || hit_c) {
            out.push_back(i + 1);
            i += n;
        } else {
            ++i;
        }
    }
    return out;
}

/// Replace the block at each 1-based occurrence by the partner word (word
/// becomes complement and vice versa).  Occurrences must match exactly, lie
/// within the prefix, and not overlap.
inline DigitSequence apply_swap(const DigitSequence& s, const SwapRule& rule,
                                const std::vector<std::size_t>& occurrences) {
    std::size_t n = rule.word.size();
    std::vector<std::uint8_t> prefix = s.prefix();
    std::vector<std::size_t> occ = occurrences;
    std::sort(occ.begin(), occ.end());
    std::size_t last_end = 0;  // exclusive end of previous block, 0-based
    for (std::size_t start1 : occ) {
        if (start1 < 1) throw DomainError("occurrence indices are 1-based");
        std::size_t i = start1 - 1;
        if (i + n > prefix.size())
            throw DomainError("occurrence at " + std::to_string(start1) +
                              " extends past the prefix into the tail");
        if (i < last_end)
            throw DomainError("occurrences overlap at " + std::to_string(start1));
        bool is_w = true, is_c = true;
        for (std::size_t j = 0; j < n; ++j) {
            is_w = is_w && prefix[i + j] == rule.word[j];
            is_c = is_c && prefix[i + j] == rule.complement[j];
        }
        if (!is_w && !is_c)
            throw DomainError("sequence does not match the rule's word or complement at " +
                              std::to_string(start1));
        const std::vector<std::uint8_t>& target = is_w ? rule.complement : rule.word;
        for (std::size_t j = 0; j < n; ++j) prefix[i + j] = target[j];
        last_end = i + n;
    }
    switch (s.tail_kind()) {
        case TailKind::zeros: return DigitSequence::zeros_tail(std::move(prefix));
        case TailKind::ones: return DigitSequence::ones_tail(std::move(prefix));
        default: return DigitSequence::periodic_tail(std::move(prefix), s.period_word());
    }
}

} // namespace betaxp
