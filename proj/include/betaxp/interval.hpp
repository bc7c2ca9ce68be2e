#pragma once

#include <string>
#include <string_view>

#include "betaxp/bigfloat.hpp"
#include "betaxp/errors.hpp"

namespace betaxp {

/// Closed interval [lo, hi] with outward-rounded endpoints: every operation
/// rounds the lower endpoint toward -inf and the upper toward +inf, so the
/// true real result is always contained.  Invariant: lo <= hi.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 256) : lo_(prec), hi_(prec) {}

    Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_ > hi_) throw DomainError("interval endpoints out of order");
    }

    static Interval point(long value, mpfr_prec_t prec) {
        BigFloat v = BigFloat::of(value, prec);
        return Interval(v, v);
    }

    /// Tight enclosure of a decimal literal.
    static Interval parse(std::string_view text, mpfr_prec_t prec) {
        return Interval(BigFloat::parse(text, prec, MPFR_RNDD),
                        BigFloat::parse(text, prec, MPFR_RNDU));
    }

    /// Tight enclosure of an exact rational.
    static Interval from_mpq(const mpq_t q, mpfr_prec_t prec) {
        return Interval(BigFloat::from_mpq(q, prec, MPFR_RNDD),
                        BigFloat::from_mpq(q, prec, MPFR_RNDU));
    }

    const BigFloat& lo() const noexcept { return lo_; }
    const BigFloat& hi() const noexcept { return hi_; }
    mpfr_prec_t precision() const noexcept { return result_prec(lo_, hi_); }

    bool is_point() const noexcept { return lo_ == hi_; }
    bool contains_zero() const noexcept { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool certainly_positive() const noexcept { return lo_.sign() > 0; }
    bool certainly_negative() const noexcept { return hi_.sign() < 0; }

    BigFloat width() const { return sub(hi_, lo_, MPFR_RNDU); }

    BigFloat mid() const {
        BigFloat m(precision());
        mpfr_add(m.raw(), lo_.raw(), hi_.raw(), MPFR_RNDN);
        mpfr_div_2ui(m.raw(), m.raw(), 1, MPFR_RNDN);
        return m;
    }

    /// Upper bound on |x| over the interval.
    BigFloat mag() const { return betaxp::max(abs(lo_), abs(hi_)); }

private:
    BigFloat lo_, hi_;
};

inline Interval operator+(const Interval& a, const Interval& b) {
    return Interval(add(a.lo(), b.lo(), MPFR_RNDD), add(a.hi(), b.hi(), MPFR_RNDU));
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return Interval(sub(a.lo(), b.hi(), MPFR_RNDD), sub(a.hi(), b.lo(), MPFR_RNDU));
}

inline Interval operator-(const Interval& a) {
    return Interval(neg(a.hi()), neg(a.lo()));
}

/// Product via all four endpoint pairings under both roundings.
inline Interval operator*(const Interval& a, const Interval& b) {
    const BigFloat* xs[2] = {&a.lo(), &a.hi()};
    const BigFloat* ys[2] = {&b.lo(), &b.hi()};
    BigFloat lo = mul(a.lo(), b.lo(), MPFR_RNDD);
    BigFloat hi = mul(a.lo(), b.lo(), MPFR_RNDU);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (i == 0 && j == 0) continue;
            lo = min(lo, mul(*xs[i], *ys[j], MPFR_RNDD));
            hi = max(hi, mul(*xs[i], *ys[j], MPFR_RNDU));
        }
    return Interval(std::move(lo), std::move(hi));
}

/// Quotient; the divisor must be certifiably nonzero.
inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero())
        throw PrecisionExhaustion("interval division by an interval containing zero");
    const BigFloat* xs[2] = {&a.lo(), &a.hi()};
    const BigFloat* ys[2] = {&b.lo(), &b.hi()};
    BigFloat lo = div(a.lo(), b.lo(), MPFR_RNDD);
    BigFloat hi = div(a.lo(), b.lo(), MPFR_RNDU);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (i == 0 && j == 0) continue;
            lo = min(lo, div(*xs[i], *ys[j], MPFR_RNDD));
            hi = max(hi, div(*xs[i], *ys[j], MPFR_RNDU));
        }
    return Interval(std::move(lo), std::move(hi));
}

/// a^e for a certainly-positive base (monotone, so endpoints suffice).
inline Interval pow_ui(const Interval& a, unsigned long e) {
    if (!a.certainly_positive())
        throw DomainError("pow_ui requires a certainly-positive interval");
    return Interval(pow_ui(a.lo(), e, MPFR_RNDD), pow_ui(a.hi(), e, MPFR_RNDU));
}

enum class Relation { less, equal, greater, ambiguous };

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::less: return "less";
        case Relation::equal: return "equal";
        case Relation::greater: return "greater";
        default: return "ambiguous";
    }
}

/// Outcome of a certified comparison.  `margin` is zero for a certified
/// relation; for `ambiguous` it bounds |a - b| from above, i.e. the overlap
/// scale that prevented certification.
struct CertifiedOrdering {
    Relation relation;
    BigFloat margin;
};

/// Compare two enclosures.  `equal` is only ever certified for coincident
/// point intervals; overlapping non-point enclosures are `ambiguous`.
inline CertifiedOrdering compare(const Interval& a, const Interval& b) {
    mpfr_prec_t prec = std::max(a.precision(), b.precision());
    if (a.hi() < b.lo()) return {Relation::less, BigFloat::of(0, prec)};
    if (a.lo() > b.hi()) return {Relation::greater, BigFloat::of(0, prec)};
    if (a.is_point() && b.is_point() && a.lo() == b.lo())
        return {Relation::equal, BigFloat::of(0, prec)};
    BigFloat m = max(sub(a.hi(), b.lo(), MPFR_RNDU), sub(b.hi(), a.lo(), MPFR_RNDU));
    return {Relation::ambiguous, std::move(m)};
}

/// Ambiguity band half-width used to resolve boundary hits: 2^(-prec+16).
inline BigFloat snap_eps(long precision_bits) {
    return BigFloat::pow2(-precision_bits + 16);
}

/// Certified comparison with boundary snapping: an ambiguous outcome whose
/// margin is within `eps` is resolved as `equal` (the enclosures are
/// indistinguishable from a boundary hit at the working precision); wider
/// ambiguity is reported unresolved.
inline CertifiedOrdering compare_snapped(const Interval& a, const Interval& b, const BigFloat& eps) {
    CertifiedOrdering c = compare(a, b);
    if (c.relation == Relation::ambiguous && c.margin <= eps)
        return {Relation::equal, std::move(c.margin)};
    return c;
}

} // namespace betaxp
