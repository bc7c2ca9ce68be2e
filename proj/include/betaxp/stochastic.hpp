#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "betaxp/beta.hpp"
#include "betaxp/digit_sequence.hpp"
#include "betaxp/errors.hpp"
#include "betaxp/expansion.hpp"

namespace betaxp {

/// Deterministic fair-coin digit sequence: one mt19937_64 draw per digit,
/// low bit taken.  Raw engine words (not a distribution adapter) so the
/// output is byte-identical across platforms for a fixed seed.
inline DigitSequence coin_toss_sequence(std::size_t length, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::vector<std::uint8_t> digits(length);
    for (std::size_t i = 0; i < length; ++i)
        digits[i] = static_cast<std::uint8_t>(engine() & 1u);
    return DigitSequence::zeros_tail(std::move(digits));
}

/// Counts of target blocks over the aligned block partition of a prefix.
/// A block at position k (1-based) covers digits (k-1)*block_len+1 ..
/// k*block_len; it is a hit when it equals the target word or its
/// elementwise complement.
struct BlockStats {
    std::size_t total_blocks = 0;
    std::size_t hits = 0;
    std::vector<std::size_t> hit_indices;  // 1-based block numbers, increasing
    bool dropped_partial = false;          // prefix length was not divisible by block_len
    std::size_t block_len = 3;
    std::vector<std::uint8_t> target;

    double frequency() const {
        return total_blocks == 0 ? 0.0
                                 : static_cast<double>(hits) / static_cast<double>(total_blocks);
    }
};

inline BlockStats block_stats(const DigitSequence& s, std::size_t block_len = 3,
                              std::vector<std::uint8_t> target = {1, 0, 0}) {
    if (block_len == 0) throw DomainError("block length must be positive");
    if (target.size() != block_len)
        throw DomainError("target word length must equal the block length");
    detail::validate_digits(target, "target word");

    BlockStats st;
    st.block_len = block_len;
    st.target = std::move(target);
    const std::vector<std::uint8_t>& p = s.prefix();
    st.total_blocks = p.size() / block_len;
    st.dropped_partial = p.size() % block_len != 0;
    for (std::size_t b = 0; b < st.total_blocks; ++b) {
        bool hit_t = true, hit_c = true;
        for (std::size_t j = 0; j < block_len && (hit_t || hit_c); ++j) {
            std::uint8_t d = p[b * block_len + j];
            hit_t = hit_t && d == st.target[j];
            hit_c = hit_c && d == 1 - st.target[j];
        }
        if (hit_t || hit_c) {
            ++st.hits;
            st.hit_indices.push_back(b + 1);
        }
    }
    return st;
}

/// One bit per flagged block: bit k selects which of the two swap words
/// occupies the k-th hit block.
struct SelectorString {
    std::vector<std::uint8_t> bits;
};

/// Rewrite the flagged blocks of s: the k-th hit block becomes the target
/// word when selector bit k is 0, or its complement when 1.  All other
/// digits are untouched.
inline DigitSequence expansion_family_member(const DigitSequence& s, const BlockStats& stats,
                                             const SelectorString& selector) {
    if (selector.bits.size() != stats.hits)
        throw DomainError("selector length " + std::to_string(selector.bits.size()) +
                          " does not match hit count " + std::to_string(stats.hits));
    detail::validate_digits(selector.bits, "selector");
    std::vector<std::uint8_t> prefix = s.prefix();
    for (std::size_t k = 0; k < stats.hits; ++k) {
        std::size_t start = (stats.hit_indices[k] - 1) * stats.block_len;
        if (start + stats.block_len > prefix.size())
            throw DomainError("block stats do not match the sequence");
        for (std::size_t j = 0; j < stats.block_len; ++j) {
            std::uint8_t t = stats.target[j];
            prefix[start + j] = selector.bits[k] ? static_cast<std::uint8_t>(1 - t) : t;
        }
    }
    switch (s.tail_kind()) {
        case TailKind::zeros: return DigitSequence::zeros_tail(std::move(prefix));
        case TailKind::ones: return DigitSequence::ones_tail(std::move(prefix));
        default: return DigitSequence::periodic_tail(std::move(prefix), s.period_word());
    }
}

/// All 2^vary selectors that run through every assignment of the first
/// `vary` flagged blocks while keeping the remaining flagged blocks exactly
/// as they appear in s.  Ascending binary order; the identity selector is
/// included.
inline std::vector<SelectorString> all_selectors(const DigitSequence& s, const BlockStats& stats,
                                                 std::size_t vary) {
    if (vary > stats.hits)
        throw DomainError("cannot vary " + std::to_string(vary) + " blocks; only " +
                          std::to_string(stats.hits) + " are flagged");
    if (vary > 20) throw DomainError("selector family capped at 2^20 members");
    SelectorString base;
    base.bits.resize(stats.hits);
    const std::vector<std::uint8_t>& p = s.prefix();
    for (std::size_t k = 0; k < stats.hits; ++k) {
        std::size_t start = (stats.hit_indices[k] - 1) * stats.block_len;
        base.bits[k] = p[start] == stats.target[0] ? 0 : 1;
    }
    std::vector<SelectorString> out;
    out.reserve(std::size_t{1} << vary);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << vary); ++v) {
        SelectorString sel = base;
        for (std::size_t k = 0; k < vary; ++k)
            sel.bits[k] = static_cast<std::uint8_t>((v >> (vary - 1 - k)) & 1u);
        out.push_back(std::move(sel));
    }
    return out;
}

struct FamilyReport {
    bool all_equal_value = true;
    bool all_distinct = true;
    BigFloat max_value_gap;  // upper bound over all member-value differences
    std::size_t members_checked = 0;
};

/// Check the selector family at the golden ratio: members must be pairwise
/// digit-distinct yet reconstruct the same value (the 100 <-> 011 swap
/// preserves value exactly when beta^2 = beta + 1).
inline FamilyReport verify_family(const BetaValue& beta, const DigitSequence& s,
                                  const std::vector<SelectorString>& selectors) {
    // Reject any base not certifiably compatible with x^2 - x - 1 = 0.
    IntegerPolynomial golden({1, -1, -1});
    if (!golden.eval(beta.value, static_cast<mpfr_prec_t>(beta.precision_bits)).contains_zero())
        throw DomainError("verify_family requires the golden ratio base");

    {
        std::vector<std::vector<std::uint8_t>> seen;
        seen.reserve(selectors.size());
        for (const auto& sel : selectors) seen.push_back(sel.bits);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw DomainError("selectors must be pairwise distinct");
    }

    FamilyReport rep;
    rep.max_value_gap = BigFloat::of(0, static_cast<mpfr_prec_t>(beta.precision_bits));
    rep.members_checked = selectors.size();
    if (selectors.empty()) return rep;

    BlockStats stats = block_stats(s);
    std::vector<std::string> reprs;
    reprs.reserve(selectors.size());
    bool first = true;
    BigFloat vlo(static_cast<mpfr_prec_t>(beta.precision_bits));
    BigFloat vhi(static_cast<mpfr_prec_t>(beta.precision_bits));
    for (const auto& sel : selectors) {
        DigitSequence member = expansion_family_member(s, stats, sel);
        reprs.push_back(member.str());
        Interval v = value_of(beta, member);
        if (first) {
            vlo = v.lo();
            vhi = v.hi();
            first = false;
        } else {
            vlo = min(vlo, v.lo());
            vhi = max(vhi, v.hi());
        }
    }
    rep.max_value_gap = sub(vhi, vlo, MPFR_RNDU);
    rep.all_equal_value = rep.max_value_gap <= BigFloat::pow2(-beta.precision_bits + 24);
    std::sort(reprs.begin(), reprs.end());
    rep.all_distinct = std::adjacent_find(reprs.begin(), reprs.end()) == reprs.end();
    return rep;
}

} // namespace betaxp
