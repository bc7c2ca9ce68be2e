#pragma once

#include <cstdint>
#include <vector>

#include "betaxp/beta.hpp"
#include "betaxp/errors.hpp"
#include "betaxp/expansion.hpp"
#include "betaxp/interval.hpp"

namespace betaxp {

/// Digits admissible from an orbit state.  Never both false: digit 1 is
/// valid iff state >= 1/beta, digit 0 iff state <= 1/(beta(beta-1)), and the
/// two regions overlap on the switch region.  `uncertain` marks decisions
/// that rested on an unresolved (wide-ambiguity) threshold comparison, in
/// which case the digit is kept rather than dropped.
struct DigitChoice {
    bool zero = false;
    bool one = false;
    bool uncertain = false;
};

inline DigitChoice valid_digits(const ThresholdSet& th, const Interval& state, const BigFloat& eps) {
    DigitChoice d;
    CertifiedOrdering c1 = compare_snapped(state, th.inv_beta, eps);
    if (c1.relation == Relation::ambiguous) {
        d.one = true;
        d.uncertain = true;
    } else {
        d.one = c1.relation != Relation::less;
    }
    CertifiedOrdering c0 = compare_snapped(state, th.switch_hi, eps);
    if (c0.relation == Relation::ambiguous) {
        d.zero = true;
        d.uncertain = true;
    } else {
        d.zero = c0.relation != Relation::greater;
    }
    return d;
}

inline DigitChoice valid_digits(const BetaValue& beta, const Interval& state) {
    return valid_digits(thresholds(beta), state, snap_eps(beta.precision_bits));
}

struct PrefixEntry {
    std::vector<std::uint8_t> digits;
    bool uncertain = false;  // some branch decision on the path was unresolved
};

struct EnumerationResult {
    std::vector<PrefixEntry> prefixes;  // lexicographically descending
    bool truncated = false;
};

/// All length-`depth` digit prefixes extendable to valid expansions of x,
/// by depth-first search taking digit 1 before digit 0 (so the output is
/// lexicographically descending and the greedy prefix comes first, the lazy
/// prefix last).  Output is capped at `limit` entries with an explicit
/// truncation flag.
inline EnumerationResult enumerate_prefixes(const BetaValue& beta, const Interval& x,
                                            std::size_t depth, std::uint64_t limit = 1u << 20) {
    ThresholdSet th = thresholds(beta);
    BigFloat eps = snap_eps(beta.precision_bits);
    detail::check_domain(x, th, eps);

    EnumerationResult out;
    std::vector<std::uint8_t> path;
    path.reserve(depth);
    Interval one = Interval::point(1, static_cast<mpfr_prec_t>(beta.precision_bits));

    auto dfs = [&](auto&& self, const Interval& state, std::size_t d, bool uncertain) -> bool {
        if (d == depth) {
            if (out.prefixes.size() == limit) {
                out.truncated = true;
                return false;
            }
            out.prefixes.push_back(PrefixEntry{path, uncertain});
            return true;
        }
        DigitChoice c = valid_digits(th, state, eps);
        if (c.one) {
            path.push_back(1);
            bool go = self(self, beta.value * state - one, d + 1, uncertain || c.uncertain);
            path.pop_back();
            if (!go) return false;
        }
        if (c.zero) {
            path.push_back(0);
            bool go = self(self, beta.value * state, d + 1, uncertain || c.uncertain);
            path.pop_back();
            if (!go) return false;
        }
        return true;
    };
    dfs(dfs, x, 0, false);
    return out;
}

/// Number of length-`depth` prefixes, counted without materializing them.
/// Throws DomainError if the count would exceed `limit`.
inline std::uint64_t count_prefixes(const BetaValue& beta, const Interval& x, std::size_t depth,
                                    std::uint64_t limit = 1u << 20) {
    ThresholdSet th = thresholds(beta);
    BigFloat eps = snap_eps(beta.precision_bits);
    detail::check_domain(x, th, eps);

    std::uint64_t count = 0;
    Interval one = Interval::point(1, static_cast<mpfr_prec_t>(beta.precision_bits));
    auto dfs = [&](auto&& self, const Interval& state, std::size_t d) -> void {
        if (d == depth) {
            if (++count > limit)
                throw DomainError("count_prefixes: more than " + std::to_string(limit) +
                                  " prefixes; lower the depth or raise the limit");
            return;
        }
        DigitChoice c = valid_digits(th, state, eps);
        if (c.one) self(self, beta.value * state - one, d + 1);
        if (c.zero) self(self, beta.value * state, d + 1);
    };
    dfs(dfs, x, 0);
    return count;
}

} // namespace betaxp
