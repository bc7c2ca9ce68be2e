#include <catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "betaxp/beta.hpp"
#include "betaxp/expansion.hpp"
#include "betaxp/stochastic.hpp"

using namespace betaxp;

TEST_CASE("coin-toss sequences are deterministic in the seed") {
    DigitSequence a = coin_toss_sequence(64, 7);
    DigitSequence b = coin_toss_sequence(64, 7);
    REQUIRE(a.str() == b.str());
    REQUIRE(a.tail_kind() == TailKind::zeros);
    REQUIRE(a.prefix_size() == 64);

    DigitSequence c = coin_toss_sequence(64, 8);
    REQUIRE(a.str() != c.str());

    // A longer draw from the same seed extends the shorter one.
    DigitSequence longer = coin_toss_sequence(96, 7);
    for (std::size_t i = 0; i < 64; ++i) REQUIRE(longer.at(i) == a.at(i));

    REQUIRE(coin_toss_sequence(0, 1).prefix_size() == 0);
    REQUIRE(coin_toss_sequence(0, 1).str() == ":z");
}

TEST_CASE("coin tosses are roughly balanced") {
    DigitSequence s = coin_toss_sequence(100000, 42);
    std::size_t ones = 0;
    for (std::uint8_t d : s.prefix()) ones += d;
    REQUIRE(ones > 48000);
    REQUIRE(ones < 52000);
}

TEST_CASE("block statistics over the aligned partition") {
    SECTION("mixed example") {
        BlockStats st = block_stats(DigitSequence::parse("100011101:z"));
        REQUIRE(st.total_blocks == 3);
        REQUIRE(st.hits == 2);  // 100 then 011; 101 is neither
        REQUIRE(st.hit_indices == std::vector<std::size_t>{1, 2});
        REQUIRE(!st.dropped_partial);
        REQUIRE(st.frequency() == Catch::Approx(2.0 / 3.0));
    }

    SECTION("partial final block is dropped and flagged") {
        BlockStats st = block_stats(DigitSequence::parse("1000111:z"));
        REQUIRE(st.total_blocks == 2);
        REQUIRE(st.hits == 2);
        REQUIRE(st.dropped_partial);
    }

    SECTION("custom block length and target") {
        BlockStats st = block_stats(DigitSequence::parse("10011100:z"), 2, {1, 0});
        REQUIRE(st.total_blocks == 4);
        REQUIRE(st.hits == 2);  // 10 and 01; 11 and 00 are neither
        REQUIRE(st.hit_indices == std::vector<std::size_t>{1, 2});
    }

    SECTION("degenerate inputs") {
        BlockStats st = block_stats(DigitSequence::parse(":z"));
        REQUIRE(st.total_blocks == 0);
        REQUIRE(st.frequency() == 0.0);
        REQUIRE_THROWS_AS(block_stats(DigitSequence::parse("100:z"), 0), DomainError);
        REQUIRE_THROWS_AS(block_stats(DigitSequence::parse("100:z"), 3, {1, 0}), DomainError);
        REQUIRE_THROWS_AS(block_stats(DigitSequence::parse("100:z"), 2, {1, 2}), DomainError);
    }
}

TEST_CASE("family members rewrite exactly the flagged blocks") {
    DigitSequence s = DigitSequence::parse("100011101:z");
    BlockStats st = block_stats(s);

    auto member = [&](std::vector<std::uint8_t> bits) {
        return expansion_family_member(s, st, SelectorString{std::move(bits)}).str();
    };
    REQUIRE(member({0, 0}) == "100100101:z");
    REQUIRE(member({1, 1}) == "011011101:z");
    REQUIRE(member({1, 0}) == "011100101:z");
    REQUIRE(member({0, 1}) == "100011101:z");  // identity assignment

    REQUIRE_THROWS_AS(member({0}), DomainError);        // wrong selector length
    REQUIRE_THROWS_AS(member({0, 0, 1}), DomainError);
    REQUIRE_THROWS_AS(member({0, 2}), DomainError);     // non-binary bit

    SECTION("tail kind survives the rewrite") {
        DigitSequence p = DigitSequence::parse("100100:(01)");
        BlockStats pst = block_stats(p);
        REQUIRE(expansion_family_member(p, pst, SelectorString{{1, 1}}).str() == "011011:(01)");
    }
}

TEST_CASE("selector enumeration varies a chosen prefix of the flagged blocks") {
    DigitSequence s = DigitSequence::parse("100011101100:z");  // hits at blocks 1,2,4
    BlockStats st = block_stats(s);
    REQUIRE(st.hits == 3);
    REQUIRE(st.hit_indices == std::vector<std::size_t>{1, 2, 4});

    std::vector<SelectorString> sels = all_selectors(s, st, 2);
    REQUIRE(sels.size() == 4);
    // The varied bits sweep 00,01,10,11 while bit 3 keeps the original
    // orientation of block 4 (100 -> 0).
    REQUIRE(sels[0].bits == std::vector<std::uint8_t>{0, 0, 0});
    REQUIRE(sels[1].bits == std::vector<std::uint8_t>{0, 1, 0});
    REQUIRE(sels[2].bits == std::vector<std::uint8_t>{1, 0, 0});
    REQUIRE(sels[3].bits == std::vector<std::uint8_t>{1, 1, 0});

    // The identity selector is in the family: it reconstructs s itself.
    bool found_identity = false;
    for (const SelectorString& sel : sels)
        found_identity |= expansion_family_member(s, st, sel).str() == s.str();
    REQUIRE(found_identity);

    REQUIRE_THROWS_AS(all_selectors(s, st, 4), DomainError);   // only 3 hits
    REQUIRE(all_selectors(s, st, 0).size() == 1);
}

TEST_CASE("family members are pairwise distinct digit strings") {
    DigitSequence s = coin_toss_sequence(600, 12);
    BlockStats st = block_stats(s);
    REQUIRE(st.hits >= 10);
    std::vector<SelectorString> sels = all_selectors(s, st, 10);
    std::set<std::string> reprs;
    for (const SelectorString& sel : sels)
        reprs.insert(expansion_family_member(s, st, sel).str());
    REQUIRE(reprs.size() == 1024);
}

TEST_CASE("the golden-ratio family shares a single value") {
    BetaValue g = parse_beta("golden");
    DigitSequence s = coin_toss_sequence(3000, 1);
    BlockStats st = block_stats(s);
    REQUIRE(st.hits >= 16);

    FamilyReport rep = verify_family(g, s, all_selectors(s, st, 4));
    REQUIRE(rep.members_checked == 16);
    REQUIRE(rep.all_distinct);
    REQUIRE(rep.all_equal_value);
    REQUIRE(rep.max_value_gap <= BigFloat::pow2(-200));

    SECTION("two members differing in one block really differ in value elsewhere") {
        BetaValue other = parse_beta("1.5");
        DigitSequence a = expansion_family_member(s, st, all_selectors(s, st, 1)[0]);
        DigitSequence b = expansion_family_member(s, st, all_selectors(s, st, 1)[1]);
        REQUIRE(compare_snapped(value_of(other, a), value_of(other, b),
                                snap_eps(other.precision_bits))
                    .relation != Relation::equal);
    }
}

TEST_CASE("family verification rejects bad inputs") {
    DigitSequence s = coin_toss_sequence(300, 3);
    BlockStats st = block_stats(s);
    std::vector<SelectorString> sels = all_selectors(s, st, 2);

    REQUIRE_THROWS_AS(verify_family(parse_beta("1.8"), s, sels), DomainError);
    REQUIRE_THROWS_AS(verify_family(parse_beta("tribonacci"), s, sels), DomainError);

    std::vector<SelectorString> dup = {sels[0], sels[0]};
    REQUIRE_THROWS_AS(verify_family(parse_beta("golden"), s, dup), DomainError);

    FamilyReport empty = verify_family(parse_beta("golden"), s, {});
    REQUIRE(empty.members_checked == 0);
    REQUIRE(empty.all_equal_value);
}
