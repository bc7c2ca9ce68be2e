#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "betaxp/errors.hpp"
#include "betaxp/interval.hpp"
#include "betaxp/polynomial.hpp"
#include "betaxp/root_isolation.hpp"

namespace betaxp {

/// A base beta in (1,2): certified enclosure, optional integer defining
/// polynomial, and the precision the enclosure was produced at.
struct BetaValue {
    Interval value;
    std::optional<IntegerPolynomial> defining_poly;
    long precision_bits = 256;
    std::optional<std::string> label;
};

/// Region boundaries of the expansion domain [0, 1/(beta-1)]:
/// digit 1 is admissible at states >= 1/beta, digit 0 at states
/// <= 1/(beta(beta-1)); both inside the switch region between them.
struct ThresholdSet {
    Interval inv_beta;   // 1/beta
    Interval switch_hi;  // 1/(beta(beta-1))
    Interval max_value;  // 1/(beta-1)
};

namespace detail {

inline std::string trim(std::string_view v) {
    std::size_t a = 0, b = v.size();
    while (a < b && std::isspace(static_cast<unsigned char>(v[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(v[b - 1]))) --b;
    return std::string(v.substr(a, b - a));
}

inline std::vector<long long> parse_coeff_list(std::string_view body) {
    std::vector<long long> coeffs;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string item = trim(body.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                 : comma - pos));
        if (item.empty()) throw ParseError("empty coefficient in polynomial spec");
        long long v = 0;
        auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || p != item.data() + item.size())
            throw ParseError("bad integer coefficient: '" + item + "'");
        coeffs.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (coeffs.empty()) throw ParseError("polynomial spec has no coefficients");
    return coeffs;
}

inline bool valid_name(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
    return true;
}

} // namespace detail

/// Named bases mapping label -> defining polynomial.  The builtin registry
/// carries "golden" (x^2-x-1) and "tribonacci" (x^3-x^2-x-1); more names can
/// be loaded from a config file of `name = poly:<coeffs>` lines.
class BaseRegistry {
public:
    static const BaseRegistry& builtin() {
        static const BaseRegistry reg = [] {
            BaseRegistry r;
            r.add("golden", IntegerPolynomial({1, -1, -1}));
            r.add("tribonacci", IntegerPolynomial({1, -1, -1, -1}));
            return r;
        }();
        return reg;
    }

    void add(const std::string& name, IntegerPolynomial p) {
        if (!detail::valid_name(name)) throw ParseError("bad base name: '" + name + "'");
        entries_.insert_or_assign(name, std::move(p));
    }

    void load_stream(std::istream& in) {
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string t = detail::trim(line);
            if (t.empty() || t[0] == '#') continue;
            std::size_t eq = t.find('=');
            if (eq == std::string::npos)
                throw ParseError("base config line " + std::to_string(lineno) + ": missing '='");
            std::string name = detail::trim(std::string_view(t).substr(0, eq));
            std::string rhs = detail::trim(std::string_view(t).substr(eq + 1));
            if (!rhs.starts_with("poly:"))
                throw ParseError("base config line " + std::to_string(lineno) +
                                 ": right-hand side must be poly:<coeffs>");
            add(name, IntegerPolynomial(detail::parse_coeff_list(std::string_view(rhs).substr(5))));
        }
    }

    void load_file(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw ParseError("cannot open base config file: " + path);
        load_stream(f);
    }

    const IntegerPolynomial* find(const std::string& name) const {
        auto it = entries_.find(name);
        return it == entries_.end() ? nullptr : &it->second;
    }

    const std::map<std::string, IntegerPolynomial>& entries() const { return entries_; }

private:
    std::map<std::string, IntegerPolynomial> entries_;
};

/// The unique root of p in (1,2) as a BetaValue.  Errors when p has no root
/// or several roots there.
inline BetaValue beta_from_polynomial(const IntegerPolynomial& p, long precision_bits,
                                      std::optional<std::string> label = std::nullopt) {
    if (precision_bits < 64) throw DomainError("precision_bits must be at least 64");
    // Isolate 16 bits finer than requested so the defining-polynomial
    // residual bound 2^(-precision_bits+8) holds with room to spare.
    std::vector<Interval> roots = roots_in_interval(p, mpq_class(1), mpq_class(2), precision_bits + 16);
    if (roots.empty())
        throw DomainError("polynomial " + p.str() + " has no root in (1,2)");
    if (roots.size() > 1)
        throw DomainError("polynomial " + p.str() + " has " + std::to_string(roots.size()) +
                          " roots in (1,2); base is not unique");
    return BetaValue{roots[0], p, precision_bits, std::move(label)};
}

/// Parse a base spec: registry name | decimal literal | "poly:<c_k,...,c_0>".
inline BetaValue parse_beta(const std::string& spec, long precision_bits = 256,
                            const BaseRegistry& registry = BaseRegistry::builtin()) {
    if (precision_bits < 64) throw DomainError("precision_bits must be at least 64");
    std::string s = detail::trim(spec);
    if (s.empty()) throw ParseError("empty base spec");

    if (const IntegerPolynomial* p = registry.find(s))
        return beta_from_polynomial(*p, precision_bits, s);

    if (s.starts_with("poly:"))
        return beta_from_polynomial(IntegerPolynomial(detail::parse_coeff_list(std::string_view(s).substr(5))),
                                    precision_bits);

    if (detail::valid_name(s))
        throw ParseError("unknown base name '" + s +
                         "' (expected a registry name, a decimal literal, or poly:<coeffs>)");

    Interval v = Interval::parse(s, static_cast<mpfr_prec_t>(precision_bits));
    if (!(v.lo() > BigFloat::of(1, 8)) || !(v.hi() < BigFloat::of(2, 8)))
        throw DomainError("base " + s + " is not certifiably inside (1,2)");
    return BetaValue{std::move(v), std::nullopt, precision_bits, std::nullopt};
}

inline ThresholdSet thresholds(const BetaValue& beta) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(beta.precision_bits);
    Interval one = Interval::point(1, prec);
    Interval bm1 = beta.value - one;
    return ThresholdSet{one / beta.value, one / (beta.value * bm1), one / bm1};
}

/// Parse an expansion argument: "one", "max" (= 1/(beta-1)), or a decimal
/// literal.  Domain membership is checked by the consuming operation.
inline Interval parse_point(const std::string& spec, const BetaValue& beta) {
    std::string s = detail::trim(spec);
    if (s == "one") return Interval::point(1, static_cast<mpfr_prec_t>(beta.precision_bits));
    if (s == "max") return thresholds(beta).max_value;
    Interval v = Interval::parse(s, static_cast<mpfr_prec_t>(beta.precision_bits));
    if (v.lo().sign() < 0 && v.hi().sign() < 0)
        throw DomainError("point " + s + " is negative; domain is [0, 1/(beta-1)]");
    return v;
}

} // namespace betaxp
