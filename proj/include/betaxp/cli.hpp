#pragma once

#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "betaxp/beta.hpp"
#include "betaxp/characterize.hpp"
#include "betaxp/digit_sequence.hpp"
#include "betaxp/enumeration.hpp"
#include "betaxp/errors.hpp"
#include "betaxp/expansion.hpp"
#include "betaxp/stochastic.hpp"
#include "betaxp/swaps.hpp"

namespace betaxp {

namespace cli_detail {

using nlohmann::json;

constexpr int schema_version = 1;

inline json interval_json(const Interval& v) {
    return json{{"mid", v.mid().str(40)}, {"width", v.width().str(6)}};
}

inline std::string interval_text(const Interval& v, int digits = 40) {
    return v.mid().str(digits) + " (width " + v.width().str(6) + ")";
}

inline json beta_json(const std::string& spec, const BetaValue& b) {
    json j{{"spec", spec},
           {"precision_bits", b.precision_bits},
           {"value", interval_json(b.value)}};
    if (b.label) j["label"] = *b.label;
    if (b.defining_poly) {
        json coeffs = json::array();
        for (long long c : b.defining_poly->coefficients()) coeffs.push_back(c);
        j["defining_poly"] = json{{"coefficients", coeffs}, {"text", b.defining_poly->str()}};
    }
    return j;
}

inline json verdict_json(const Verdict& v) {
    json j{{"status", to_string(v.status)}};
    if (v.witness) j["witness"] = *v.witness;
    if (v.reason) j["reason"] = *v.reason;
    return j;
}

inline std::string verdict_text(const Verdict& v) {
    std::string s = to_string(v.status);
    if (v.witness) s += " (witness " + std::to_string(*v.witness) + ")";
    if (v.reason) s += " [" + *v.reason + "]";
    return s;
}

inline int verdict_exit(const Verdict& v) {
    switch (v.status) {
        case VerdictStatus::holds: return 0;
        case VerdictStatus::fails: return 1;
        default: return 2;
    }
}

inline json lazy_one_json(const LazyOneReport& rep) {
    return json{{"sufficient", verdict_json(rep.sufficient)},
                {"regime", to_string(rep.regime)},
                {"regime_necessary", verdict_json(rep.regime_necessary)}};
}

} // namespace cli_detail

/// Entry point behind the betaxp executable.  Streams are injected so tests
/// can capture output.  Exit codes: 0 success/holds, 1 fails, 2 undetermined
/// or precision-limited, 64 usage error, 65 domain or parse error,
/// 70 internal error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using cli_detail::json;
    using cli_detail::verdict_exit;
    using cli_detail::verdict_json;
    using cli_detail::verdict_text;

    CLI::App app{"beta-expansion toolkit for bases 1 < beta < 2"};
    app.name("betaxp");

    long precision = 256;
    if (const char* env = std::getenv("BETAXP_PRECISION_BITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0) {
            err << "error: BETAXP_PRECISION_BITS is not a positive integer\n";
            return 65;
        }
        precision = v;
    }
    std::string format = "text";
    std::string bases_file;
    app.add_option("--precision", precision, "working precision in bits (>= 64)")
        ->capture_default_str();
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--bases", bases_file, "named-base config file (name = poly:<coeffs> lines)");
    app.require_subcommand(1);
    // Let global options (--format, --precision, --bases) appear after the
    // subcommand name as well as before it.
    app.fallthrough();

    // expand
    std::string e_beta, e_x, e_algo;
    std::size_t e_digits = 0;
    bool e_positions = false;
    CLI::App* expand_cmd = app.add_subcommand("expand", "greedy or lazy digit expansion of x");
    expand_cmd->add_option("--beta", e_beta, "base spec")->required();
    expand_cmd->add_option("--x", e_x, "point to expand (decimal, one, max)")->required();
    expand_cmd->add_option("--algorithm", e_algo, "digit map")
        ->check(CLI::IsMember({"greedy", "lazy"}))
        ->required();
    expand_cmd->add_option("--digits", e_digits, "number of digits")->required();
    expand_cmd->add_flag("--positions", e_positions, "also print 1-digit positions (greedy only)");

    // enumerate
    std::string n_beta, n_x;
    std::size_t n_depth = 0;
    std::uint64_t n_limit = std::uint64_t{1} << 20;
    CLI::App* enum_cmd = app.add_subcommand("enumerate", "all valid digit prefixes of x");
    enum_cmd->add_option("--beta", n_beta)->required();
    enum_cmd->add_option("--x", n_x)->required();
    enum_cmd->add_option("--depth", n_depth, "prefix length")->required();
    enum_cmd->add_option("--limit", n_limit, "output cap")->check(CLI::PositiveNumber);

    // swaps
    std::size_t s_length = 0;
    bool s_all = false;
    CLI::App* swaps_cmd = app.add_subcommand("swaps", "admissible word-swap catalog");
    swaps_cmd->add_option("--length", s_length, "word length n")->required();
    swaps_cmd->add_flag("--all", s_all, "include pairs with no admissible base");

    // check
    std::string c_beta, c_digits, c_property, c_target;
    std::optional<std::size_t> c_max_k;
    std::size_t c_tail_terms = 256;
    CLI::App* check_cmd = app.add_subcommand("check", "characterization verdict for a sequence");
    check_cmd->add_option("--beta", c_beta)->required();
    check_cmd->add_option("--digits", c_digits, "digit string, e.g. 1100:z, 0:o, 10:(01)")
        ->required();
    check_cmd->add_option("--property", c_property, "greedy | lazy | greedy1 | unique | lazy1")
        ->check(CLI::IsMember({"greedy", "lazy", "greedy1", "unique", "lazy1"}))
        ->required();
    check_cmd->add_option("--target", c_target, "expected value of the sequence (cross-check)");
    check_cmd->add_option("--max-k", c_max_k, "cap on examined positions");
    check_cmd->add_option("--tail-terms", c_tail_terms, "cap on period length")
        ->check(CLI::PositiveNumber);

    // sample
    std::size_t m_length = 0;
    std::uint64_t m_seed = 0;
    std::size_t m_block = 3;
    std::optional<std::size_t> m_family;
    CLI::App* sample_cmd = app.add_subcommand("sample", "coin-toss sequence block statistics");
    sample_cmd->add_option("--length", m_length, "number of digits")->required();
    sample_cmd->add_option("--seed", m_seed, "PRNG seed")->required();
    sample_cmd->add_option("--block-len", m_block)->check(CLI::PositiveNumber);
    sample_cmd->add_option("--verify-family", m_family,
                           "verify the 2^H swap-selector family at golden (H = blocks varied)");

    // char1
    std::string o_beta;
    std::size_t o_depth = 64;
    CLI::App* char1_cmd =
        app.add_subcommand("char1", "expansions of 1 with tail detection and verdicts");
    char1_cmd->add_option("--beta", o_beta)->required();
    char1_cmd->add_option("--depth", o_depth, "orbit length to examine")->capture_default_str();

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("betaxp");
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help / --version
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 64;
    }

    try {
        if (precision < 64) throw DomainError("precision must be at least 64 bits");
        BaseRegistry registry = BaseRegistry::builtin();
        if (!bases_file.empty()) registry.load_file(bases_file);
        const bool as_json = format == "json";

        if (expand_cmd->parsed()) {
            BetaValue beta = parse_beta(e_beta, precision, registry);
            Interval x = parse_point(e_x, beta);
            if (e_positions && e_algo != "greedy") {
                err << "usage error: --positions applies to the greedy algorithm only\n";
                return 64;
            }
            ExpansionResult res = e_algo == "greedy" ? greedy_digits(beta, x, e_digits)
                                                     : lazy_digits(beta, x, e_digits);
            Interval bound = reconstruction_error_bound(beta, e_digits);
            std::string dstr = detail::digits_to_string(res.digits);
            std::vector<std::size_t> positions;
            for (std::size_t i = 0; i < res.digits.size(); ++i)
                if (res.digits[i]) positions.push_back(i + 1);
            if (as_json) {
                json j{{"schema_version", cli_detail::schema_version},
                       {"command", "expand"},
                       {"beta", cli_detail::beta_json(e_beta, beta)},
                       {"x", e_x},
                       {"algorithm", e_algo},
                       {"digits", dstr},
                       {"terminated", res.terminated},
                       {"final_state", cli_detail::interval_json(res.final_state.value)},
                       {"error_bound", cli_detail::interval_json(bound)}};
                if (e_positions) j["positions"] = positions;
                out << j.dump(2) << "\n";
            } else {
                out << "beta: " << e_beta << " = " << beta.value.mid().str(40) << "\n";
                out << "algorithm: " << e_algo << "\n";
                out << "digits: " << dstr << "\n";
                out << "terminated: " << (res.terminated ? "true" : "false") << "\n";
                out << "final_state: " << cli_detail::interval_text(res.final_state.value) << "\n";
                out << "error_bound: " << bound.hi().str(6) << "\n";
                if (e_positions) {
                    out << "positions:";
                    for (std::size_t p : positions) out << " " << p;
                    out << "\n";
                }
            }
            return 0;
        }

        if (enum_cmd->parsed()) {
            BetaValue beta = parse_beta(n_beta, precision, registry);
            Interval x = parse_point(n_x, beta);
            EnumerationResult res = enumerate_prefixes(beta, x, n_depth, n_limit);
            if (as_json) {
                json prefixes = json::array();
                for (const PrefixEntry& p : res.prefixes)
                    prefixes.push_back(json{{"digits", detail::digits_to_string(p.digits)},
                                            {"uncertain", p.uncertain}});
                json j{{"schema_version", cli_detail::schema_version},
                       {"command", "enumerate"},
                       {"beta", cli_detail::beta_json(n_beta, beta)},
                       {"x", n_x},
                       {"depth", n_depth},
                       {"count", res.prefixes.size()},
                       {"truncated", res.truncated},
                       {"prefixes", prefixes}};
                out << j.dump(2) << "\n";
            } else {
                for (const PrefixEntry& p : res.prefixes) {
                    out << detail::digits_to_string(p.digits);
                    if (p.uncertain) out << " (uncertain)";
                    out << "\n";
                }
                out << "count: " << res.prefixes.size() << "\n";
                out << "truncated: " << (res.truncated ? "true" : "false") << "\n";
            }
            return 0;
        }

        if (swaps_cmd->parsed()) {
            std::vector<SwapRule> rules =
                s_all ? swap_catalog(s_length, precision) : admissible_swaps(s_length, precision);
            if (as_json) {
                json arr = json::array();
                for (const SwapRule& r : rules) {
                    json bases = json::array();
                    for (const Interval& b : r.bases) bases.push_back(cli_detail::interval_json(b));
                    json coeffs = json::array();
                    for (long long c : r.polynomial.coefficients()) coeffs.push_back(c);
                    arr.push_back(json{{"word", detail::digits_to_string(r.word)},
                                       {"complement", detail::digits_to_string(r.complement)},
                                       {"polynomial", json{{"coefficients", coeffs},
                                                           {"text", r.polynomial.str("b")}}},
                                       {"bases", bases}});
                }
                json j{{"schema_version", cli_detail::schema_version},
                       {"command", "swaps"},
                       {"length", s_length},
                       {"rules", arr}};
                out << j.dump(2) << "\n";
            } else {
                for (const SwapRule& r : rules) {
                    out << "rule: " << detail::digits_to_string(r.word) << " <-> "
                        << detail::digits_to_string(r.complement) << "\n";
                    out << "  polynomial: " << r.polynomial.str("b") << "\n";
                    if (r.bases.empty()) {
                        out << "  bases: (none in (1,2))\n";
                    } else {
                        out << "  bases:";
                        for (const Interval& b : r.bases) out << " " << b.mid().str(40);
                        out << "\n";
                    }
                }
                out << "rules: " << rules.size() << "\n";
            }
            return 0;
        }

        if (check_cmd->parsed()) {
            BetaValue beta = parse_beta(c_beta, precision, registry);
            DigitSequence s = DigitSequence::parse(c_digits);
            CheckBudget budget;
            budget.max_k = c_max_k;
            budget.tail_terms = c_tail_terms;
            budget.precision_bits = precision;

            if (c_property == "unique" || c_property == "lazy1") {
                if (!c_target.empty() && c_target != "one")
                    throw DomainError("property " + c_property +
                                      " characterizes expansions of 1; --target must be one");
            } else if (!c_target.empty()) {
                Interval target = parse_point(c_target, beta);
                CertifiedOrdering c = compare_snapped(value_of(beta, s), target,
                                                      snap_eps(beta.precision_bits));
                if (c.relation == Relation::less || c.relation == Relation::greater)
                    throw DomainError("digit sequence value does not match --target " + c_target);
            }

            if (c_property == "lazy1") {
                LazyOneReport rep = check_lazy_one(beta, s, budget);
                if (as_json) {
                    json j{{"schema_version", cli_detail::schema_version},
                           {"command", "check"},
                           {"beta", cli_detail::beta_json(c_beta, beta)},
                           {"digits", s.str()},
                           {"property", c_property},
                           {"report", cli_detail::lazy_one_json(rep)}};
                    out << j.dump(2) << "\n";
                } else {
                    out << "property: lazy1\n";
                    out << "regime: " << to_string(rep.regime) << "\n";
                    out << "sufficient: " << verdict_text(rep.sufficient) << "\n";
                    out << "necessary: " << verdict_text(rep.regime_necessary) << "\n";
                }
                return verdict_exit(rep.sufficient);
            }

            Verdict v;
            if (c_property == "greedy") v = is_greedy(beta, s, budget);
            else if (c_property == "lazy") v = is_lazy(beta, s, budget);
            else if (c_property == "greedy1")
                v = check_theorem1(beta, s, Theorem1Variant::greedy, budget);
            else v = check_theorem1(beta, s, Theorem1Variant::unique, budget);

            if (as_json) {
                json j{{"schema_version", cli_detail::schema_version},
                       {"command", "check"},
                       {"beta", cli_detail::beta_json(c_beta, beta)},
                       {"digits", s.str()},
                       {"property", c_property},
                       {"verdict", verdict_json(v)}};
                out << j.dump(2) << "\n";
            } else {
                out << "property: " << c_property << "\n";
                out << "verdict: " << verdict_text(v) << "\n";
            }
            return verdict_exit(v);
        }

        if (sample_cmd->parsed()) {
            DigitSequence s = coin_toss_sequence(m_length, m_seed);
            BlockStats st = block_stats(s, m_block);
            int exit_code = 0;
            json j{{"schema_version", cli_detail::schema_version},
                   {"command", "sample"},
                   {"seed", m_seed},
                   {"length", m_length},
                   {"block_len", m_block},
                   {"total_blocks", st.total_blocks},
                   {"hits", st.hits},
                   {"frequency", st.frequency()},
                   {"dropped_partial", st.dropped_partial}};
            std::string family_text;
            if (m_family) {
                BetaValue golden = parse_beta("golden", precision, registry);
                std::vector<SelectorString> selectors = all_selectors(s, st, *m_family);
                FamilyReport rep = verify_family(golden, s, selectors);
                j["family"] = json{{"vary", *m_family},
                                   {"members_checked", rep.members_checked},
                                   {"all_distinct", rep.all_distinct},
                                   {"all_equal_value", rep.all_equal_value},
                                   {"max_value_gap", rep.max_value_gap.str(6)}};
                if (!rep.all_distinct || !rep.all_equal_value) exit_code = 1;
                family_text = "family: members " + std::to_string(rep.members_checked) +
                              ", distinct " + (rep.all_distinct ? "true" : "false") +
                              ", equal_value " + (rep.all_equal_value ? "true" : "false") +
                              ", max_gap " + rep.max_value_gap.str(6);
            }
            if (as_json) {
                out << j.dump(2) << "\n";
            } else {
                out << "seed: " << m_seed << "\n";
                out << "length: " << m_length << "\n";
                out << "blocks: " << st.total_blocks << "\n";
                out << "hits: " << st.hits << "\n";
                out << "frequency: " << st.frequency() << "\n";
                out << "dropped_partial: " << (st.dropped_partial ? "true" : "false") << "\n";
                if (!family_text.empty()) out << family_text << "\n";
            }
            return exit_code;
        }

        if (char1_cmd->parsed()) {
            BetaValue beta = parse_beta(o_beta, precision, registry);
            Interval one = Interval::point(1, static_cast<mpfr_prec_t>(beta.precision_bits));
            CheckBudget budget;
            budget.precision_bits = precision;
            bool any_undetermined = false;

            json sides = json::object();
            std::string text;
            for (ExpansionMap m : {ExpansionMap::greedy, ExpansionMap::lazy}) {
                const char* name = to_string(m);
                json side;
                try {
                    OrbitRecord rec = expand_orbit(m, beta, one, o_depth);
                    std::string dstr = detail::digits_to_string(rec.digits);
                    side["digits"] = dstr;
                    side["terminated"] = rec.terminated;
                    text += std::string(name) + " digits: " + dstr + "\n";
                    std::optional<DigitSequence> tail = detect_tail(rec, beta);
                    if (tail) {
                        side["sequence"] = tail->str();
                        text += std::string(name) + " sequence: " + tail->str() + "\n";
                        Verdict t1g = check_theorem1(beta, *tail, Theorem1Variant::greedy, budget);
                        Verdict t1u = check_theorem1(beta, *tail, Theorem1Variant::unique, budget);
                        LazyOneReport rep = check_lazy_one(beta, *tail, budget);
                        side["theorem1_greedy"] = verdict_json(t1g);
                        side["theorem1_unique"] = verdict_json(t1u);
                        side["lazy_one"] = cli_detail::lazy_one_json(rep);
                        text += std::string(name) + " theorem1[greedy]: " + verdict_text(t1g) + "\n";
                        text += std::string(name) + " theorem1[unique]: " + verdict_text(t1u) + "\n";
                        text += std::string(name) + " lazy1[" + to_string(rep.regime) +
                                "]: sufficient " + verdict_text(rep.sufficient) + ", necessary " +
                                verdict_text(rep.regime_necessary) + "\n";
                        for (const Verdict* v : {&t1g, &t1u, &rep.sufficient, &rep.regime_necessary})
                            any_undetermined |= v->status == VerdictStatus::undetermined;
                    } else {
                        side["sequence"] = nullptr;
                        Verdict u = Verdict::undetermined(
                            "tail undetected within depth budget; raise --depth");
                        side["theorem1_greedy"] = verdict_json(u);
                        side["theorem1_unique"] = verdict_json(u);
                        side["lazy_one"] =
                            json{{"sufficient", verdict_json(u)},
                                 {"regime", nullptr},
                                 {"regime_necessary", verdict_json(u)}};
                        text += std::string(name) + " sequence: (tail undetected)\n";
                        text += std::string(name) + " verdicts: " + verdict_text(u) + "\n";
                        any_undetermined = true;
                    }
                } catch (const UndeterminedDigit& e) {
                    side["error"] = e.what();
                    text += std::string(name) + " error: " + e.what() + "\n";
                    any_undetermined = true;
                }
                sides[name] = std::move(side);
            }
            if (as_json) {
                json j{{"schema_version", cli_detail::schema_version},
                       {"command", "char1"},
                       {"beta", cli_detail::beta_json(o_beta, beta)},
                       {"depth", o_depth},
                       {"greedy", sides["greedy"]},
                       {"lazy", sides["lazy"]}};
                out << j.dump(2) << "\n";
            } else {
                out << "beta: " << o_beta << " = " << beta.value.mid().str(40) << "\n";
                out << "depth: " << o_depth << "\n";
                out << text;
            }
            return any_undetermined ? 2 : 0;
        }

        err << "usage error: no subcommand\n";
        return 64;
    } catch (const UndeterminedDigit& e) {
        err << "undetermined: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionExhaustion& e) {
        err << "precision exhausted: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 65;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 70;
    }
}

} // namespace betaxp
