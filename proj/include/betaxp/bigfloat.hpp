#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "betaxp/errors.hpp"

namespace betaxp {

/// Arbitrary-precision binary float: a thin RAII wrapper over mpfr_t.
/// Every arithmetic helper takes an explicit rounding mode; value objects are
/// immutable from the caller's point of view once returned.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 256) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }

    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN); // same precision: exact
    }

    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }

    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }

    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat of(long value, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, value, MPFR_RNDN); // prec >= 2 holds any long here
        return r;
    }

    /// 2^exp, exact at any precision.
    static BigFloat pow2(long exp, mpfr_prec_t prec = 64) {
        BigFloat r(prec);
        mpfr_set_ui_2exp(r.v_, 1, exp, MPFR_RNDN);
        return r;
    }

    /// Parse a decimal literal with the given rounding direction.
    /// Throws ParseError unless the whole string is a valid number.
    static BigFloat parse(std::string_view text, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        std::string s(text);
        char* end = nullptr;
        mpfr_strtofr(r.v_, s.c_str(), &end, 10, rnd);
        if (end == s.c_str() || *end != '\0')
            throw ParseError("not a decimal number: '" + s + "'");
        return r;
    }

    static BigFloat from_mpq(const mpq_t q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, q, rnd);
        return r;
    }

    mpfr_srcptr raw() const noexcept { return v_; }
    mpfr_ptr raw() noexcept { return v_; }
    mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }

    int sign() const noexcept { return mpfr_sgn(v_); }
    bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
    double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Decimal scientific rendering with `digits` significant digits.
    std::string str(int digits = 30) const {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

    friend int cmp(const BigFloat& a, const BigFloat& b) noexcept { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) noexcept { return cmp(a, b) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) noexcept { return cmp(a, b) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) noexcept { return cmp(a, b) > 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) noexcept { return cmp(a, b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) noexcept { return cmp(a, b) == 0; }

private:
    mpfr_t v_;
};

inline mpfr_prec_t result_prec(const BigFloat& a, const BigFloat& b) {
    return std::max(a.precision(), b.precision());
}

inline BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
    BigFloat r(result_prec(a, b));
    mpfr_add(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

inline BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
    BigFloat r(result_prec(a, b));
    mpfr_sub(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

inline BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
    BigFloat r(result_prec(a, b));
    mpfr_mul(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

inline BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
    BigFloat r(result_prec(a, b));
    mpfr_div(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

inline BigFloat neg(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN); // exact
    return r;
}

inline BigFloat abs(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDN); // exact
    return r;
}

inline BigFloat min(const BigFloat& a, const BigFloat& b) { return a <= b ? a : b; }
inline BigFloat max(const BigFloat& a, const BigFloat& b) { return a >= b ? a : b; }

inline BigFloat pow_ui(const BigFloat& a, unsigned long e, mpfr_rnd_t rnd) {
    BigFloat r(a.precision());
    mpfr_pow_ui(r.raw(), a.raw(), e, rnd);
    return r;
}

} // namespace betaxp
