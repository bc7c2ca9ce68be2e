#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "betaxp/beta.hpp"
#include "betaxp/digit_sequence.hpp"
#include "betaxp/errors.hpp"
#include "betaxp/expansion.hpp"

namespace betaxp {

enum class VerdictStatus { holds, fails, undetermined };

inline const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::holds: return "holds";
        case VerdictStatus::fails: return "fails";
        default: return "undetermined";
    }
}

/// Outcome of a characterization check.  fails carries the smallest witness
/// position k (1-based); undetermined carries why (a depth or precision
/// budget was the obstacle, never a guess).
struct Verdict {
    VerdictStatus status = VerdictStatus::undetermined;
    std::optional<std::size_t> witness;
    std::optional<std::string> reason;

    static Verdict holds() { return Verdict{VerdictStatus::holds, std::nullopt, std::nullopt}; }
    static Verdict fails(std::size_t k) { return Verdict{VerdictStatus::fails, k, std::nullopt}; }
    static Verdict undetermined(std::string why) {
        return Verdict{VerdictStatus::undetermined, std::nullopt, std::move(why)};
    }
};

/// Work limits for the characterization scans.  max_k caps the positions k
/// examined (default: prefix length + 2 * period, which covers every
/// distinct shifted tail); tail_terms caps the period length the closed-form
/// tail evaluation will touch; precision_bits caps the certification
/// precision of value comparisons.
struct CheckBudget {
    std::optional<std::size_t> max_k;
    std::size_t tail_terms = 256;
    long precision_bits = 256;
};

/// First-difference lexicographic comparison.  Decidable exactly: both
/// sequences are eventually periodic, so agreement up to the combined
/// prefix-plus-two-periods horizon implies equality.
inline std::strong_ordering lex_compare(const DigitSequence& s, const DigitSequence& t) {
    std::size_t horizon = std::max(s.prefix_size(), t.prefix_size()) +
                          2 * std::lcm(s.period_size(), t.period_size());
    for (std::size_t i = 0; i < horizon; ++i) {
        std::uint8_t a = s.at(i), b = t.at(i);
        if (a != b) return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

/// Drop the first k digits, renormalizing the prefix/tail split.
inline DigitSequence shift(const DigitSequence& s, std::size_t k) {
    if (k <= s.prefix_size()) {
        std::vector<std::uint8_t> p(s.prefix().begin() + static_cast<std::ptrdiff_t>(k),
                                    s.prefix().end());
        switch (s.tail_kind()) {
            case TailKind::zeros: return DigitSequence::zeros_tail(std::move(p));
            case TailKind::ones: return DigitSequence::ones_tail(std::move(p));
            default: return DigitSequence::periodic_tail(std::move(p), s.period_word());
        }
    }
    if (s.tail_kind() != TailKind::periodic)
        return s.tail_kind() == TailKind::zeros ? DigitSequence::zeros_tail({})
                                                : DigitSequence::ones_tail({});
    std::size_t r = (k - s.prefix_size()) % s.period_word().size();
    std::vector<std::uint8_t> word(s.period_word().begin() + static_cast<std::ptrdiff_t>(r),
                                   s.period_word().end());
    word.insert(word.end(), s.period_word().begin(),
                s.period_word().begin() + static_cast<std::ptrdiff_t>(r));
    return DigitSequence::periodic_tail({}, std::move(word));
}

/// Elementwise 1 - digit; zeros and ones tails swap roles.
inline DigitSequence complement(const DigitSequence& s) {
    std::vector<std::uint8_t> p = s.prefix();
    for (auto& d : p) d = static_cast<std::uint8_t>(1 - d);
    switch (s.tail_kind()) {
        case TailKind::zeros: return DigitSequence::ones_tail(std::move(p));
        case TailKind::ones: return DigitSequence::zeros_tail(std::move(p));
        default: {
            std::vector<std::uint8_t> w = s.period_word();
            for (auto& d : w) d = static_cast<std::uint8_t>(1 - d);
            return DigitSequence::periodic_tail(std::move(p), std::move(w));
        }
    }
}

namespace detail {

inline void validate_budget(const CheckBudget& b) {
    if (b.max_k && *b.max_k == 0) throw DomainError("max_k must be positive");
    if (b.tail_terms == 0) throw DomainError("tail_terms must be positive");
    if (b.precision_bits < 64) throw DomainError("precision_bits must be at least 64");
}

/// Run `check` at every position k <= budget with digit a_k = digit_value.
/// Eventual periodicity means prefix + 2*period positions cover all distinct
/// shifted tails; `holds` is only reported when that horizon was covered.
template <typename CheckFn>
Verdict scan_positions(const DigitSequence& s, const CheckBudget& budget, std::uint8_t digit_value,
                       CheckFn&& check) {
    validate_budget(budget);
    if (s.period_size() > budget.tail_terms)
        return Verdict::undetermined("depth: period length " + std::to_string(s.period_size()) +
                                     " exceeds the tail_terms budget " +
                                     std::to_string(budget.tail_terms));
    std::size_t needed = s.prefix_size() + 2 * s.period_size();
    std::size_t K = std::min(budget.max_k.value_or(needed), needed);
    for (std::size_t k = 1; k <= K; ++k) {
        if (s.at(k - 1) != digit_value) continue;
        if (std::optional<Verdict> v = check(k)) return *v;
    }
    if (K < needed)
        return Verdict::undetermined("depth: checked k <= " + std::to_string(K) + " of " +
                                     std::to_string(needed) + " required for completeness");
    return Verdict::holds();
}

inline long certification_bits(const BetaValue& beta, const CheckBudget& budget) {
    return std::min(beta.precision_bits, budget.precision_bits);
}

} // namespace detail

/// Tail test for greediness (valid for expansions of any x): the sequence is
/// greedy iff sum a_{k+i} beta^(-i) < 1 strictly at every k with a_k = 0.  A
/// tail summing to exactly 1 is a failure, not an ambiguity, once certified.
inline Verdict is_greedy(const BetaValue& beta, const DigitSequence& s,
                         const CheckBudget& budget = {}) {
    BigFloat eps = snap_eps(detail::certification_bits(beta, budget));
    Interval one = Interval::point(1, static_cast<mpfr_prec_t>(beta.precision_bits));
    return detail::scan_positions(s, budget, 0, [&](std::size_t k) -> std::optional<Verdict> {
        CertifiedOrdering c = compare_snapped(value_of(beta, shift(s, k)), one, eps);
        if (c.relation == Relation::less) return std::nullopt;
        if (c.relation == Relation::ambiguous)
            return Verdict::undetermined("precision: tail value at k=" + std::to_string(k) +
                                         " within " + c.margin.str(6) + " of 1");
        return Verdict::fails(k);
    });
}

/// Tail test for laziness: sum (1 - a_{k+i}) beta^(-i) < 1 strictly at every
/// k with a_k = 1.
inline Verdict is_lazy(const BetaValue& beta, const DigitSequence& s,
                       const CheckBudget& budget = {}) {
    BigFloat eps = snap_eps(detail::certification_bits(beta, budget));
    Interval one = Interval::point(1, static_cast<mpfr_prec_t>(beta.precision_bits));
    return detail::scan_positions(s, budget, 1, [&](std::size_t k) -> std::optional<Verdict> {
        CertifiedOrdering c = compare_snapped(value_of(beta, complement(shift(s, k))), one, eps);
        if (c.relation == Relation::less) return std::nullopt;
        if (c.relation == Relation::ambiguous)
            return Verdict::undetermined("precision: complemented tail value at k=" +
                                         std::to_string(k) + " within " + c.margin.str(6) + " of 1");
        return Verdict::fails(k);
    });
}

namespace detail {

/// Certify value_of(s) = 1 up to the snap margin.  A certified mismatch
/// throws; wide ambiguity yields an undetermined verdict.
inline std::optional<Verdict> require_value_one(const BetaValue& beta, const DigitSequence& s,
                                                const CheckBudget& budget) {
    BigFloat eps = snap_eps(certification_bits(beta, budget));
    Interval one = Interval::point(1, static_cast<mpfr_prec_t>(beta.precision_bits));
    CertifiedOrdering c = compare_snapped(value_of(beta, s), one, eps);
    if (c.relation == Relation::equal) return std::nullopt;
    if (c.relation == Relation::ambiguous)
        return Verdict::undetermined("precision: cannot certify value_of(s) = 1 (margin " +
                                     c.margin.str(6) + ")");
    throw DomainError("value-not-one: value_of(s) is certifiably " +
                      std::string(c.relation == Relation::less ? "below" : "above") + " 1");
}

} // namespace detail

enum class Theorem1Variant { greedy, unique };

/// Lexicographic characterization of expansions of 1.  greedy variant:
/// shift(s,k) <_L s at every k with a_k = 0.  unique variant:
/// complement(shift(s,k)) <_L s at every k with a_k = 1.  The two conditions
/// are exposed separately so either (or their conjunction) can be tested.
/// Precondition value_of(s) = 1 is certified first.
inline Verdict check_theorem1(const BetaValue& beta, const DigitSequence& s,
                              Theorem1Variant variant, const CheckBudget& budget = {}) {
    detail::validate_budget(budget);
    if (std::optional<Verdict> v = detail::require_value_one(beta, s, budget)) return *v;
    if (variant == Theorem1Variant::greedy)
        return detail::scan_positions(s, budget, 0, [&](std::size_t k) -> std::optional<Verdict> {
            if (lex_compare(shift(s, k), s) == std::strong_ordering::less) return std::nullopt;
            return Verdict::fails(k);
        });
    return detail::scan_positions(s, budget, 1, [&](std::size_t k) -> std::optional<Verdict> {
        if (lex_compare(complement(shift(s, k)), s) == std::strong_ordering::less)
            return std::nullopt;
        return Verdict::fails(k);
    });
}

/// Base regime relative to the golden ratio: low = (1, phi], high = (phi, 2).
enum class LazyRegime { low, high };

inline const char* to_string(LazyRegime r) { return r == LazyRegime::low ? "low" : "high"; }

/// Verdicts for "s is the lazy expansion of 1".
struct LazyOneReport {
    Verdict sufficient;        // complement(shift(s,k)) <_L s at every a_k = 1
    LazyRegime regime = LazyRegime::low;
    Verdict regime_necessary;  // high: same condition; low: shift(s,k) >_L s at every a_k = 0
};

inline LazyOneReport check_lazy_one(const BetaValue& beta, const DigitSequence& s,
                                    const CheckBudget& budget = {}) {
    detail::validate_budget(budget);
    LazyOneReport rep;

    BetaValue golden = beta_from_polynomial(IntegerPolynomial({1, -1, -1}), beta.precision_bits);
    BigFloat eps = snap_eps(detail::certification_bits(beta, budget));
    CertifiedOrdering c = compare_snapped(beta.value, golden.value, eps);
    if (c.relation == Relation::ambiguous)
        throw PrecisionExhaustion("cannot place the base relative to the golden ratio");
    rep.regime = c.relation == Relation::greater ? LazyRegime::high : LazyRegime::low;

    if (std::optional<Verdict> v = detail::require_value_one(beta, s, budget)) {
        rep.sufficient = *v;
        rep.regime_necessary = *v;
        return rep;
    }

    rep.sufficient = detail::scan_positions(s, budget, 1, [&](std::size_t k) -> std::optional<Verdict> {
        if (lex_compare(complement(shift(s, k)), s) == std::strong_ordering::less)
            return std::nullopt;
        return Verdict::fails(k);
    });

    if (rep.regime == LazyRegime::high) {
        rep.regime_necessary = rep.sufficient;  // above phi the condition is also necessary
    } else {
        rep.regime_necessary =
            detail::scan_positions(s, budget, 0, [&](std::size_t k) -> std::optional<Verdict> {
                if (lex_compare(shift(s, k), s) == std::strong_ordering::greater)
                    return std::nullopt;
                return Verdict::fails(k);
            });
    }
    return rep;
}

} // namespace betaxp
