#include <catch_amalgamated.hpp>

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>

#include "betaxp/beta.hpp"
#include "betaxp/expansion.hpp"

using namespace betaxp;

namespace {

std::string digit_str(const std::vector<std::uint8_t>& d) { return detail::digits_to_string(d); }

BetaValue golden() { return parse_beta("golden"); }

bool snap_equal(const Interval& a, const Interval& b, long prec = 150) {
    return compare_snapped(a, b, BigFloat::pow2(-prec + 16)).relation == Relation::equal;
}

} // namespace

TEST_CASE("greedy expansion of 1 at the golden ratio terminates after 11") {
    BetaValue g = golden();
    ExpansionResult r = greedy_digits(g, Interval::point(1, 256), 5);
    REQUIRE(digit_str(r.digits) == "11000");
    REQUIRE(r.terminated);
    REQUIRE(r.final_state.value.mag().is_zero());

    OrbitRecord rec = expand_orbit(ExpansionMap::greedy, g, Interval::point(1, 256), 5);
    REQUIRE(rec.states.size() == 6);
    REQUIRE(rec.terminated);
    REQUIRE(rec.terminated_at == 2);
    REQUIRE(rec.states[0].is_point());
    REQUIRE(rec.states[0].lo().to_double() == 1.0);
    // After the orbit dies every further digit is 0 and the state stays 0.
    REQUIRE(rec.states[3].mag().is_zero());
    REQUIRE(rec.states[5].mag().is_zero());
}

TEST_CASE("lazy expansion of 1 at the golden ratio is 0111...") {
    BetaValue g = golden();
    ExpansionResult r = lazy_digits(g, Interval::point(1, 256), 6);
    REQUIRE(digit_str(r.digits) == "011111");
    REQUIRE(!r.terminated);
    // The state is pinned at beta from step 1 on.
    REQUIRE(snap_equal(r.final_state.value, g.value, 256));
}

TEST_CASE("tribonacci expansions of 1") {
    BetaValue t = parse_beta("tribonacci");

    SECTION("greedy hits the boundary exactly and terminates") {
        ExpansionResult r = greedy_digits(t, Interval::point(1, 256), 6);
        REQUIRE(digit_str(r.digits) == "111000");
        REQUIRE(r.terminated);
    }

    SECTION("lazy cycles through the word 110") {
        ExpansionResult r = lazy_digits(t, Interval::point(1, 256), 9);
        REQUIRE(digit_str(r.digits) == "110110110");
        REQUIRE(!r.terminated);
        // The state returns to exactly 1 every three steps.
        REQUIRE(snap_equal(r.final_state.value, Interval::point(1, 256), 256));
    }
}

TEST_CASE("edge points of the expansion domain") {
    BetaValue g = golden();

    SECTION("zero expands to all zeros and is flagged terminated") {
        ExpansionResult r = greedy_digits(g, Interval::point(0, 256), 4);
        REQUIRE(digit_str(r.digits) == "0000");
        REQUIRE(r.terminated);
        ExpansionResult rl = lazy_digits(g, Interval::point(0, 256), 4);
        REQUIRE(digit_str(rl.digits) == "0000");
    }

    SECTION("the domain maximum is a fixed point with all-ones digits") {
        Interval mx = thresholds(g).max_value;
        REQUIRE(digit_str(greedy_digits(g, mx, 5).digits) == "11111");
        REQUIRE(digit_str(lazy_digits(g, mx, 5).digits) == "11111");
    }

    SECTION("points above the maximum are rejected") {
        REQUIRE_THROWS_AS(greedy_digits(g, Interval::point(3, 256), 4), DomainError);
        REQUIRE_THROWS_AS(lazy_digits(g, Interval::point(-1, 256), 4), DomainError);
    }
}

TEST_CASE("greedy and lazy agree outside the switch region") {
    // beta = 3/2, x = 1/2: the first digit is forced to 0 (x < 2/3), after
    // which the orbit stays below the switch threshold for a while.
    BetaValue b = parse_beta("1.5");
    ExpansionResult r = greedy_digits(b, Interval::parse("0.5", 256), 6);
    REQUIRE(digit_str(r.digits) == "010000");
    PositionList pos = greedy_positions(b, Interval::parse("0.5", 256), 1);
    REQUIRE(pos.positions == std::vector<std::size_t>{2});
}

TEST_CASE("greedy 1-digit positions") {
    BetaValue g = golden();
    PositionList p = greedy_positions(g, Interval::point(1, 256), 10);
    REQUIRE(p.positions == std::vector<std::size_t>{1, 2});
    REQUIRE(p.terminated);

    PositionList z = greedy_positions(g, Interval::point(0, 256), 10);
    REQUIRE(z.positions.empty());
    REQUIRE(z.terminated);

    // Requesting fewer terms stops early without a termination claim.
    PositionList capped = greedy_positions(g, thresholds(g).max_value, 4);
    REQUIRE(capped.positions == std::vector<std::size_t>{1, 2, 3, 4});
    REQUIRE(!capped.terminated);
}

TEST_CASE("values of digit sequences") {
    BetaValue g = golden();
    Interval one = Interval::point(1, 256);

    SECTION("expansions of 1 in the golden base") {
        REQUIRE(snap_equal(value_of(g, DigitSequence::parse("11:z")), one, 256));
        REQUIRE(snap_equal(value_of(g, DigitSequence::parse("0:o")), one, 256));
        REQUIRE(snap_equal(value_of(g, DigitSequence::parse(":(10)")), one, 256));
        REQUIRE(snap_equal(value_of(g, DigitSequence::parse("1011:z")), one, 256));
    }

    SECTION("closed forms") {
        REQUIRE(snap_equal(value_of(g, DigitSequence::parse(":o")), thresholds(g).max_value, 256));
        REQUIRE(snap_equal(value_of(g, DigitSequence::parse("1:z")), thresholds(g).inv_beta, 256));
        REQUIRE(value_of(g, DigitSequence::parse(":z")).mag().is_zero());

        BetaValue b = parse_beta("1.5");
        Interval v = value_of(b, DigitSequence::parse("1:z"));  // 1/1.5 = 2/3
        REQUIRE(snap_equal(v * Interval::point(3, 256), Interval::point(2, 256), 256));
    }

    SECTION("prefix sums converge to the full value") {
        DigitSequence s = DigitSequence::parse("10:(01)");
        Interval full = value_of(g, s);
        for (std::size_t n : {4u, 16u, 48u}) {
            Interval p = prefix_value(g, s, n);
            Interval bound = reconstruction_error_bound(g, n);
            REQUIRE(p.lo() <= full.hi());
            REQUIRE(add(p.hi(), bound.hi(), MPFR_RNDU) >= full.lo());
        }
    }
}

TEST_CASE("orbit digits reconstruct the input point") {
    std::mt19937_64 rng(99);
    const char* bases[] = {"golden", "tribonacci", "1.5", "1.9", "poly:1,-2,1,-1"};
    for (int t = 0; t < 40; ++t) {
        BetaValue b = parse_beta(bases[t % 5]);
        // Random x in [0, max): scale max by r in [0,1) with 9 decimal digits.
        std::ostringstream frac;
        frac << "0." << std::setw(9) << std::setfill('0') << rng() % 1000000000u;
        Interval x = thresholds(b).max_value * Interval::parse(frac.str(), 256);
        std::size_t n = 8 + rng() % 40;

        for (ExpansionMap m : {ExpansionMap::greedy, ExpansionMap::lazy}) {
            OrbitRecord rec = expand_orbit(m, b, x, n);
            DigitSequence s = DigitSequence::zeros_tail(rec.digits);
            // x = sum of the first n digit terms + beta^(-n) * state_n.
            Interval recon = prefix_value(b, s, n) +
                             rec.states[n] / pow_ui(b.value, static_cast<unsigned long>(n));
            REQUIRE(compare_snapped(recon, x, BigFloat::pow2(-150)).relation == Relation::equal);
            // And the plain prefix sum lands within the tail bound.
            double gap = std::abs(prefix_value(b, s, n).mid().to_double() - x.mid().to_double());
            REQUIRE(gap <= reconstruction_error_bound(b, n).hi().to_double() + 1e-25);
        }
    }
}

TEST_CASE("orbit states stay inside the expansion domain") {
    std::mt19937_64 rng(5);
    BetaValue b = parse_beta("1.7");
    ThresholdSet th = thresholds(b);
    BigFloat eps = snap_eps(b.precision_bits);
    for (int t = 0; t < 20; ++t) {
        std::ostringstream frac;
        frac << "0." << std::setw(9) << std::setfill('0') << rng() % 1000000000u;
        Interval x = th.max_value * Interval::parse(frac.str(), 256);
        OrbitRecord rec = expand_orbit(ExpansionMap::greedy, b, x, 30);
        for (const Interval& st : rec.states) {
            REQUIRE(!st.certainly_negative());
            REQUIRE(compare_snapped(st, th.max_value, eps).relation != Relation::greater);
        }
    }
}

TEST_CASE("greedy dominates lazy digit-wise in the lexicographic order") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 25; ++t) {
        BetaValue b = parse_beta(t % 2 ? "golden" : "1.8");
        std::ostringstream frac;
        frac << "0." << std::setw(9) << std::setfill('0') << rng() % 1000000000u;
        Interval x = thresholds(b).max_value * Interval::parse(frac.str(), 256);
        auto gd = greedy_digits(b, x, 24).digits;
        auto ld = lazy_digits(b, x, 24).digits;
        // At the first disagreement the greedy digit must be the 1.
        for (std::size_t i = 0; i < gd.size(); ++i) {
            if (gd[i] != ld[i]) {
                REQUIRE(gd[i] == 1);
                break;
            }
        }
    }
}

TEST_CASE("an inflated state straddling the threshold is reported, not guessed") {
    BetaValue b = parse_beta("1.8");
    Interval inv = thresholds(b).inv_beta;
    BigFloat pad = BigFloat::pow2(-90);
    Interval straddle(sub(inv.lo(), pad, MPFR_RNDD), add(inv.hi(), pad, MPFR_RNDU));
    try {
        greedy_digits(b, straddle, 4);
        FAIL("expected UndeterminedDigit");
    } catch (const UndeterminedDigit& e) {
        REQUIRE(e.index == 1);
        REQUIRE(std::string(e.what()).find("digit 1") != std::string::npos);
    }
}

TEST_CASE("tail detection from recorded orbits") {
    BetaValue g = golden();

    SECTION("terminated orbit yields a zeros tail") {
        OrbitRecord rec = expand_orbit(ExpansionMap::greedy, g, Interval::point(1, 256), 8);
        auto tail = detect_tail(rec, g);
        REQUIRE(tail.has_value());
        REQUIRE(tail->str() == "11:z");
    }

    SECTION("fixed point yields a ones tail") {
        OrbitRecord rec = expand_orbit(ExpansionMap::lazy, g, Interval::point(1, 256), 8);
        auto tail = detect_tail(rec, g);
        REQUIRE(tail.has_value());
        REQUIRE(tail->str() == "0:o");
    }

    SECTION("three-cycle yields the repeating word") {
        BetaValue t = parse_beta("tribonacci");
        OrbitRecord rec = expand_orbit(ExpansionMap::lazy, t, Interval::point(1, 256), 9);
        auto tail = detect_tail(rec, t);
        REQUIRE(tail.has_value());
        REQUIRE(tail->str() == ":(110)");
        REQUIRE(snap_equal(value_of(t, *tail), Interval::point(1, 256), 256));
    }

    SECTION("non-recurring orbit yields nothing") {
        BetaValue b = parse_beta("1.9");
        OrbitRecord rec = expand_orbit(ExpansionMap::greedy, b, Interval::point(1, 256), 40);
        REQUIRE(!detect_tail(rec, b).has_value());
    }

    SECTION("detected tails reproduce the recorded digits") {
        BetaValue t = parse_beta("tribonacci");
        OrbitRecord rec = expand_orbit(ExpansionMap::lazy, t, Interval::point(1, 256), 9);
        DigitSequence s = *detect_tail(rec, t);
        for (std::size_t i = 0; i < rec.digits.size(); ++i) REQUIRE(s.at(i) == rec.digits[i]);
    }
}

TEST_CASE("digit sequence text format round trips") {
    for (const char* text : {"11:z", "0:o", "10:(01)", ":(110)", ":z", ":o", "1100110:z"}) {
        REQUIRE(DigitSequence::parse(text).str() == text);
    }
    // Plain digit strings default to a zeros tail.
    REQUIRE(DigitSequence::parse("110").str() == "110:z");
    // Constant periodic words normalize to the closed-form tails.
    REQUIRE(DigitSequence::parse("1:(0)").str() == "1:z");
    REQUIRE(DigitSequence::parse("1:(11)").str() == "1:o");

    REQUIRE_THROWS_AS(DigitSequence::parse("12"), DomainError);
    REQUIRE_THROWS_AS(DigitSequence::parse("1:("), ParseError);
    REQUIRE_THROWS_AS(DigitSequence::parse("1:()"), DomainError);
    REQUIRE_THROWS_AS(DigitSequence::parse("1:x"), ParseError);

    DigitSequence s = DigitSequence::parse("10:(011)");
    REQUIRE(s.prefix_size() == 2);
    REQUIRE(s.period_size() == 3);
    REQUIRE(s.at(0) == 1);
    REQUIRE(s.at(1) == 0);
    REQUIRE(s.at(2) == 0);
    REQUIRE(s.at(3) == 1);
    REQUIRE(s.at(4) == 1);
    REQUIRE(s.at(5) == 0);
    REQUIRE(s.at(2 + 3 * 1000) == 0);
}
