#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "betaxp/errors.hpp"
#include "betaxp/interval.hpp"

namespace betaxp {

/// Polynomial with integer coefficients, stored highest degree first.
/// Invariant: nonempty and the leading coefficient is nonzero (the zero
/// polynomial is rejected — it has no well-defined root set).
class IntegerPolynomial {
public:
    explicit IntegerPolynomial(std::vector<long long> coeffs) : c_(std::move(coeffs)) {
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0) ++lead;
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        if (c_.empty())
            throw DomainError("zero polynomial has no defined root set");
    }

    std::size_t degree() const noexcept { return c_.size() - 1; }
    bool is_constant() const noexcept { return c_.size() == 1; }

    /// Coefficient of x^k (0 for k > degree).
    long long coefficient(std::size_t k) const noexcept {
        return k <= degree() ? c_[degree() - k] : 0;
    }

    /// Coefficients, highest degree first.
    const std::vector<long long>& coefficients() const noexcept { return c_; }

    IntegerPolynomial derivative() const {
        if (is_constant())
            throw DomainError("derivative of a constant is the zero polynomial");
        std::vector<long long> d(c_.size() - 1);
        for (std::size_t i = 0; i + 1 < c_.size(); ++i)
            d[i] = c_[i] * static_cast<long long>(c_.size() - 1 - i);
        return IntegerPolynomial(std::move(d));
    }

    /// Exact value at a rational point (Horner).
    mpq_class eval(const mpq_class& x) const {
        mpq_class acc(static_cast<long>(c_[0]));
        for (std::size_t i = 1; i < c_.size(); ++i) {
            acc *= x;
            acc += static_cast<long>(c_[i]);
        }
        return acc;
    }

    /// Exact sign at a rational point: -1, 0, or +1.
    int sign_at(const mpq_class& x) const { return static_cast<int>(sgn(eval(x))); }

    /// Enclosure of the image of an interval (interval Horner; not the exact
    /// range, but a superset of it).
    Interval eval(const Interval& x, mpfr_prec_t prec) const {
        Interval acc = Interval::point(static_cast<long>(c_[0]), prec);
        for (std::size_t i = 1; i < c_.size(); ++i)
            acc = acc * x + Interval::point(static_cast<long>(c_[i]), prec);
        return acc;
    }

    /// Human-readable rendering, e.g. "x^2 - x - 1".
    std::string str(const std::string& var = "x") const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            long long c = c_[i];
            if (c == 0) continue;
            std::size_t p = degree() - i;
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            long long a = c < 0 ? -c : c;
            if (a != 1 || p == 0) out += std::to_string(a);
            if (p > 0) {
                if (a != 1) out += "*";
                out += var;
                if (p > 1) out += "^" + std::to_string(p);
            }
        }
        return out.empty() ? "0" : out;
    }

    friend bool operator==(const IntegerPolynomial& a, const IntegerPolynomial& b) {
        return a.c_ == b.c_;
    }

private:
    std::vector<long long> c_;
};

} // namespace betaxp
