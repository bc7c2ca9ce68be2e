#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "betaxp/beta.hpp"
#include "betaxp/digit_sequence.hpp"
#include "betaxp/errors.hpp"
#include "betaxp/interval.hpp"

namespace betaxp {

enum class ExpansionMap { greedy, lazy };

inline const char* to_string(ExpansionMap m) {
    return m == ExpansionMap::greedy ? "greedy" : "lazy";
}

/// Orbit value after `step` applications of the digit map.
struct OrbitState {
    std::size_t step = 0;
    Interval value;
};

/// Full orbit transcript: digits[i] is digit i+1, states[i] is the value
/// before emitting it (states[0] = x, states[n] = final).  Once the state
/// snaps to exact zero both maps emit zeros forever; `terminated_at` records
/// the first step whose outgoing state is exactly zero.
struct OrbitRecord {
    std::vector<std::uint8_t> digits;
    std::vector<Interval> states;
    bool terminated = false;
    std::optional<std::size_t> terminated_at;
};

struct ExpansionResult {
    std::vector<std::uint8_t> digits;
    OrbitState final_state;
    bool terminated = false;
};

/// 1-based indices of the 1-digits of a greedy expansion.
struct PositionList {
    std::vector<std::size_t> positions;
    bool terminated = false;  // orbit reached exact zero (expansion is finite)
};

namespace detail {

/// Throws unless x is certifiably inside [0, 1/(beta-1)] up to the snap
/// margin (boundary-touching enclosures pass).
inline void check_domain(const Interval& x, const ThresholdSet& th, const BigFloat& eps) {
    Interval zero(x.precision());
    CertifiedOrdering lo = compare_snapped(x, zero, eps);
    if (lo.relation == Relation::less)
        throw DomainError("x is negative; domain is [0, 1/(beta-1)]");
    CertifiedOrdering hi = compare_snapped(x, th.max_value, eps);
    if (hi.relation == Relation::greater)
        throw DomainError("x exceeds 1/(beta-1), the largest representable value");
}

/// Decide one digit of the map.  Greedy: 1 iff state >= 1/beta (boundary
/// inclusive).  Lazy: 0 iff state <= 1/(beta(beta-1)) (boundary inclusive).
/// A comparison ambiguous beyond the snap margin surfaces the 1-based digit
/// index instead of guessing.
inline int decide_digit(ExpansionMap m, const Interval& state, const ThresholdSet& th,
                        const BigFloat& eps, std::size_t index) {
    const Interval& threshold = m == ExpansionMap::greedy ? th.inv_beta : th.switch_hi;
    CertifiedOrdering c = compare_snapped(state, threshold, eps);
    if (c.relation == Relation::ambiguous)
        throw UndeterminedDigit(index, "digit " + std::to_string(index) +
                                           " undecidable: state within " + c.margin.str(6) +
                                           " of the threshold; raise precision");
    if (m == ExpansionMap::greedy)
        return c.relation == Relation::less ? 0 : 1;   // >= threshold emits 1
    return c.relation == Relation::greater ? 1 : 0;    // <= threshold emits 0
}

} // namespace detail

/// Run a digit map for n steps, recording every digit and orbit state.
inline OrbitRecord expand_orbit(ExpansionMap m, const BetaValue& beta, const Interval& x,
                                std::size_t n) {
    ThresholdSet th = thresholds(beta);
    BigFloat eps = snap_eps(beta.precision_bits);
    detail::check_domain(x, th, eps);

    OrbitRecord rec;
    rec.digits.reserve(n);
    rec.states.reserve(n + 1);

    Interval state = x;
    Interval zero(state.precision());
    if (state.mag() <= eps) {  // input indistinguishable from zero
        state = zero;
        rec.terminated = true;
        rec.terminated_at = 0;
    }
    rec.states.push_back(state);

    for (std::size_t i = 1; i <= n; ++i) {
        if (rec.terminated) {  // exact fixed point: zeros forever
            rec.digits.push_back(0);
            rec.states.push_back(state);
            continue;
        }
        int digit = detail::decide_digit(m, state, th, eps, i);
        state = beta.value * state;
        if (digit) state = state - Interval::point(1, state.precision());
        if (state.mag() <= eps) {
            state = zero;
            rec.terminated = true;
            rec.terminated_at = i;
        }
        rec.digits.push_back(static_cast<std::uint8_t>(digit));
        rec.states.push_back(state);
    }
    return rec;
}

inline ExpansionResult from_orbit(OrbitRecord&& rec, std::size_t n) {
    return ExpansionResult{std::move(rec.digits), OrbitState{n, rec.states.back()}, rec.terminated};
}

/// First n digits of the greedy expansion of x (digit 1 whenever the orbit
/// state is >= 1/beta), plus the final orbit state T^(n)(x).
inline ExpansionResult greedy_digits(const BetaValue& beta, const Interval& x, std::size_t n) {
    return from_orbit(expand_orbit(ExpansionMap::greedy, beta, x, n), n);
}

/// First n digits of the lazy expansion of x (digit 0 whenever the orbit
/// state is <= 1/(beta(beta-1))), plus the final orbit state R^(n)(x).
inline ExpansionResult lazy_digits(const BetaValue& beta, const Interval& x, std::size_t n) {
    return from_orbit(expand_orbit(ExpansionMap::lazy, beta, x, n), n);
}

/// Exponent positions m_1 < m_2 < ... of the greedy expansion
/// (x = sum beta^(-m_i)), truncated at max_terms entries or at termination.
inline PositionList greedy_positions(const BetaValue& beta, const Interval& x,
                                     std::size_t max_terms) {
    ThresholdSet th = thresholds(beta);
    BigFloat eps = snap_eps(beta.precision_bits);
    detail::check_domain(x, th, eps);

    PositionList out;
    Interval state = x;
    if (state.mag() <= eps) {
        out.terminated = true;
        return out;
    }
    // Between two 1-digits the state grows by a factor beta, so the next
    // position arrives within a precision-dependent number of steps; the cap
    // below only trips for bases pathologically close to 1.
    const std::size_t step_cap = 200000;
    for (std::size_t i = 1; out.positions.size() < max_terms; ++i) {
        if (i > step_cap)
            throw PrecisionExhaustion("greedy_positions: no further 1-digit within " +
                                      std::to_string(step_cap) + " steps");
        int digit = detail::decide_digit(ExpansionMap::greedy, state, th, eps, i);
        state = beta.value * state;
        if (digit) {
            state = state - Interval::point(1, state.precision());
            out.positions.push_back(i);
        }
        if (state.mag() <= eps) {
            out.terminated = true;
            break;
        }
    }
    return out;
}

/// Value sum a_i beta^(-i) of a full digit sequence: finite prefix by Horner
/// plus the closed-form tail (zeros: 0; ones: beta^(-k)/(beta-1); repeating
/// word w of length p: beta^(-k) value(w) / (1 - beta^(-p))).
inline Interval value_of(const BetaValue& beta, const DigitSequence& s) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(beta.precision_bits);
    const Interval& b = beta.value;
    Interval one = Interval::point(1, prec);

    auto horner = [&](const std::vector<std::uint8_t>& digits) {
        Interval acc(prec);
        for (std::size_t i = digits.size(); i-- > 0;) {
            if (digits[i]) acc = acc + one;
            acc = acc / b;
        }
        return acc;
    };

    Interval acc = horner(s.prefix());
    std::size_t k = s.prefix_size();
    switch (s.tail_kind()) {
        case TailKind::zeros:
            break;
        case TailKind::ones:
            acc = acc + one / (pow_ui(b, static_cast<unsigned long>(k)) * (b - one));
            break;
        case TailKind::periodic: {
            Interval wv = horner(s.period_word());
            Interval denom = one - one / pow_ui(b, static_cast<unsigned long>(s.period_word().size()));
            acc = acc + wv / (pow_ui(b, static_cast<unsigned long>(k)) * denom);
            break;
        }
    }
    return acc;
}

/// Truncated sum of the first n digits only.
inline Interval prefix_value(const BetaValue& beta, const DigitSequence& s, std::size_t n) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(beta.precision_bits);
    const Interval& b = beta.value;
    Interval one = Interval::point(1, prec);
    Interval acc(prec);
    for (std::size_t i = n; i-- > 0;) {
        if (s.at(i)) acc = acc + one;
        acc = acc / b;
    }
    return acc;
}

/// beta^(-n)/(beta-1): the largest possible gap between x and the n-digit
/// prefix sum of any valid expansion of x.
inline Interval reconstruction_error_bound(const BetaValue& beta, std::size_t n) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(beta.precision_bits);
    Interval one = Interval::point(1, prec);
    return one / (pow_ui(beta.value, static_cast<unsigned long>(n)) * (beta.value - one));
}

/// Infer a tail descriptor from a recorded orbit: exact termination yields a
/// zeros tail; otherwise the earliest state recurrence (up to the snap
/// margin) that is consistent with the recorded digits yields a periodic
/// tail.  Returns nullopt when neither is visible within the record.
inline std::optional<DigitSequence> detect_tail(const OrbitRecord& rec, const BetaValue& beta) {
    if (rec.terminated) {
        std::vector<std::uint8_t> prefix(rec.digits.begin(),
                                         rec.digits.begin() +
                                             static_cast<std::ptrdiff_t>(*rec.terminated_at));
        while (!prefix.empty() && prefix.back() == 0) prefix.pop_back();
        return DigitSequence::zeros_tail(std::move(prefix));
    }
    BigFloat eps = snap_eps(beta.precision_bits);
    std::size_t n = rec.digits.size();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t len = 1; j + len <= n; ++len) {
            CertifiedOrdering c = compare_snapped(rec.states[j], rec.states[j + len], eps);
            if (c.relation != Relation::equal) continue;
            bool consistent = true;
            for (std::size_t t = j; t + len < n && consistent; ++t)
                consistent = rec.digits[t] == rec.digits[t + len];
            if (!consistent) continue;
            std::vector<std::uint8_t> prefix(rec.digits.begin(),
                                             rec.digits.begin() + static_cast<std::ptrdiff_t>(j));
            std::vector<std::uint8_t> word(rec.digits.begin() + static_cast<std::ptrdiff_t>(j),
                                           rec.digits.begin() + static_cast<std::ptrdiff_t>(j + len));
            return DigitSequence::periodic_tail(std::move(prefix), std::move(word));
        }
    }
    return std::nullopt;
}

} // namespace betaxp
