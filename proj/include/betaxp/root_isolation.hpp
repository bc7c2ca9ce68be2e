#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <utility>
#include <vector>

#include "betaxp/errors.hpp"
#include "betaxp/interval.hpp"
#include "betaxp/polynomial.hpp"

namespace betaxp {

struct RootIsolationOptions {
    int initial_cells = 1024;       // uniform sampling cells over the interval
    int max_depth = 128;            // per-cell split budget before giving up
    mpfr_prec_t certificate_prec = 128; // working precision for interval certificates
};

namespace detail {

inline Interval cell_enclosure(const mpq_class& a, const mpq_class& b, mpfr_prec_t prec) {
    return Interval(BigFloat::from_mpq(a.get_mpq_t(), prec, MPFR_RNDD),
                    BigFloat::from_mpq(b.get_mpq_t(), prec, MPFR_RNDU));
}

/// True when q provably does not vanish on [a, b].
inline bool sign_constant_on(const IntegerPolynomial& q, const mpq_class& a, const mpq_class& b,
                             mpfr_prec_t prec) {
    return !q.eval(cell_enclosure(a, b, prec), prec).contains_zero();
}

/// Exact synthetic division of p by (x - r) for a certified rational root r,
/// with denominators cleared.  Returns q with p = (x - r) q up to a positive
/// rational factor, so the root set away from r is unchanged.
inline IntegerPolynomial deflate_root(const IntegerPolynomial& p, const mpq_class& r) {
    const auto& c = p.coefficients();
    std::size_t n = p.degree();
    std::vector<mpq_class> q(n);
    mpq_class acc(static_cast<long>(c[0]));
    q[0] = acc;
    for (std::size_t i = 1; i < n; ++i) {
        acc = acc * r + static_cast<long>(c[i]);
        q[i] = acc;
    }
    mpz_class mult(1);
    for (const auto& qi : q) mult = lcm(mult, mpz_class(qi.get_den()));
    std::vector<long long> zc(n);
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class z = mpz_class(q[i].get_num()) * (mult / mpz_class(q[i].get_den()));
        if (!z.fits_slong_p())
            throw PrecisionExhaustion("coefficient overflow while deflating an endpoint root");
        zc[i] = z.get_si();
    }
    return IntegerPolynomial(std::move(zc));
}

/// Bisect a sign-change bracket down to `target_w`; an exact rational hit
/// collapses the bracket to a point.
inline std::pair<mpq_class, mpq_class> refine_bracket(const IntegerPolynomial& p, mpq_class a,
                                                      mpq_class b, int sa, const mpq_class& target_w) {
    while (b - a > target_w) {
        mpq_class m = (a + b) / 2;
        int sm = p.sign_at(m);
        if (sm == 0) return {m, m};
        if (sm == sa)
            a = std::move(m);
        else
            b = std::move(m);
    }
    return {std::move(a), std::move(b)};
}

struct IsolationCtx {
    const IntegerPolynomial& p;
    const IntegerPolynomial& dp;
    mpfr_prec_t cprec;
    int max_depth;
    mpq_class target_w;
    std::vector<std::pair<mpq_class, mpq_class>>& roots;
};

/// Certify a cell: either prove it holds no root beyond its (already
/// recorded) endpoint zeros, or isolate the single simple root it contains,
/// or split.  Failure to certify within the depth budget means a multiple
/// root or near-tangency: reported, never guessed.
inline void certify_cell(IsolationCtx& ctx, const mpq_class& a, const mpq_class& b, int sa, int sb,
                         int depth) {
    if (depth > ctx.max_depth)
        throw PrecisionExhaustion(
            "root isolation: no certificate within depth budget (multiple root or tangency?)");
    if (sa != 0 && sb != 0) {
        if (sa != sb) {
            // Monotone across a sign change: exactly one simple root.
            if (sign_constant_on(ctx.dp, a, b, ctx.cprec)) {
                ctx.roots.push_back(refine_bracket(ctx.p, a, b, sa, ctx.target_w));
                return;
            }
        } else {
            if (sign_constant_on(ctx.p, a, b, ctx.cprec)) return;   // image excludes zero
            if (sign_constant_on(ctx.dp, a, b, ctx.cprec)) return;  // monotone, same-sign ends
        }
    } else if (!(sa == 0 && sb == 0)) {
        // One endpoint is an exact root; monotonicity rules out any other.
        if (sign_constant_on(ctx.dp, a, b, ctx.cprec)) return;
    }
    mpq_class m = (a + b) / 2;
    int sm = ctx.p.sign_at(m);
    if (sm == 0) ctx.roots.emplace_back(m, m);
    certify_cell(ctx, a, m, sa, sm, depth + 1);
    certify_cell(ctx, m, b, sm, sb, depth + 1);
}

} // namespace detail

/// All real roots of p in the open interval (lo, hi), as disjoint certified
/// enclosures in ascending order.  Each enclosure has width at most
/// 2^-(precision_bits+16) and satisfies |p| <= 2^-(precision_bits+16) over
/// the whole enclosure.  Rational roots exactly at lo or hi are deflated
/// away exactly (they are outside the open interval); interior multiple
/// roots fail certification and raise PrecisionExhaustion.
inline std::vector<Interval> roots_in_interval(const IntegerPolynomial& p_in, const mpq_class& lo,
                                               const mpq_class& hi, long precision_bits,
                                               const RootIsolationOptions& opt = {}) {
    if (!(lo < hi)) throw DomainError("roots_in_interval: endpoints out of order");
    if (precision_bits < 8) throw DomainError("roots_in_interval: precision_bits too small");

    IntegerPolynomial p = p_in;
    while (!p.is_constant() && p.sign_at(lo) == 0) p = detail::deflate_root(p, lo);
    while (!p.is_constant() && p.sign_at(hi) == 0) p = detail::deflate_root(p, hi);
    if (p.is_constant()) return {};
    IntegerPolynomial dp = p.derivative();

    const int N = opt.initial_cells;
    mpq_class step = (hi - lo) / N;
    std::vector<mpq_class> grid(static_cast<std::size_t>(N) + 1);
    std::vector<int> sign(static_cast<std::size_t>(N) + 1);
    for (int j = 0; j <= N; ++j) {
        grid[j] = lo + step * j;
        sign[j] = p.sign_at(grid[j]);
    }

    std::vector<std::pair<mpq_class, mpq_class>> roots;
    for (int j = 1; j < N; ++j)
        if (sign[j] == 0) roots.emplace_back(grid[j], grid[j]);

    mpq_class target_w(mpz_class(1), mpz_class(1) << static_cast<unsigned long>(precision_bits + 16));
    detail::IsolationCtx ctx{p, dp, opt.certificate_prec, opt.max_depth, target_w, roots};
    for (int j = 0; j < N; ++j)
        detail::certify_cell(ctx, grid[j], grid[j + 1], sign[j], sign[j + 1], 0);

    std::sort(roots.begin(), roots.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    // Tighten until the residual bound |p| <= 2^-(precision_bits+16) holds
    // over the reported enclosure (large coefficients need extra narrowing).
    BigFloat residual_bound = BigFloat::pow2(-precision_bits + 16);
    std::vector<Interval> out;
    out.reserve(roots.size());
    for (auto& [aq, bq] : roots) {
        mpfr_prec_t conv = static_cast<mpfr_prec_t>(precision_bits) + 64;
        for (int guard = 0;; ++guard) {
            if (guard > 400)
                throw PrecisionExhaustion("root isolation: residual bound unreachable at root");
            Interval enc = detail::cell_enclosure(aq, bq, conv);
            if (p.eval(enc, conv).mag() <= residual_bound) {
                out.push_back(std::move(enc));
                break;
            }
            if (aq < bq) {
                mpq_class m = (aq + bq) / 2;
                int sm = p.sign_at(m);
                if (sm == 0) {
                    aq = m;
                    bq = m;
                } else if (sm == p.sign_at(aq)) {
                    aq = std::move(m);
                } else {
                    bq = std::move(m);
                }
            } else {
                conv += 64; // exact rational root: only the conversion width shrinks
            }
        }
    }
    return out;
}

} // namespace betaxp
