#pragma once

/// @file cli.hpp
/// @brief Command-line front end. Exit codes: 0 clean, 1 mismatches found
/// (reports are still written), 2 usage or domain error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "primeforms/errors.hpp"
#include "primeforms/forms.hpp"
#include "primeforms/harness.hpp"
#include "primeforms/report.hpp"
#include "primeforms/rules.hpp"
#include "primeforms/trinity.hpp"

namespace primeforms {

inline constexpr int exit_clean = 0;
inline constexpr int exit_mismatch = 1;
inline constexpr int exit_usage = 2;

namespace detail {

inline std::string describe(const Witness& w, const FormInstance& inst) {
    std::ostringstream s;
    const std::string lhs = w.multiplier == 1 ? std::to_string(w.target)
                                              : std::to_string(w.multiplier) + "*" + std::to_string(w.target);
    s << lhs << " = ";
    switch (inst.family) {
        case Family::E: s << w.a << "^2 + " << inst.q << "*" << w.b << "^2"; break;
        case Family::H1: s << inst.q << "*" << w.b << "^2 - " << w.a << "^2"; break;
        case Family::H2: s << w.a << "^2 - " << inst.q << "*" << w.b << "^2"; break;
    }
    return s.str();
}

inline bool write_text(const std::string& path, const std::string& text, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot open " << path << " for writing\n";
        return false;
    }
    f << text;
    return static_cast<bool>(f);
}

inline std::vector<std::string> tags_for_q(u64 q) {
    std::vector<std::string> out;
    for (const auto& tag : theorem_tags()) {
        try {
            (void)make_checker(tag, q);
            out.push_back(tag);
        } catch (const std::invalid_argument&) {
        }
    }
    return out;
}

} // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    CLI::App app{"Prime representations by a^2 + q b^2, q b^2 - a^2 and a^2 - q b^2: witnesses, "
                 "characterization rules and range verification"};
    app.name("primeforms");
    app.require_subcommand(1);

    unsigned workers = default_workers();

    // represent
    auto* represent_cmd = app.add_subcommand("represent", "Find a canonical witness for n in a family");
    std::string family_text;
    u64 rep_q = 0, rep_n = 0;
    represent_cmd->add_option("--family", family_text, "E, H1 or H2")->required()->check(
        CLI::IsMember({"E", "H1", "H2"}));
    represent_cmd->add_option("--q", rep_q, "form parameter")->required()->check(CLI::PositiveNumber);
    represent_cmd->add_option("--n", rep_n, "value to represent")->required()->check(CLI::PositiveNumber);

    // check
    auto* check_cmd = app.add_subcommand("check", "Evaluate every applicable characterization at one prime");
    u64 check_q = 0, check_p = 0;
    std::string check_tag;
    check_cmd->add_option("--q", check_q)->required()->check(CLI::PositiveNumber);
    check_cmd->add_option("--p", check_p)->required()->check(CLI::PositiveNumber);
    check_cmd->add_option("--theorem", check_tag)->check(CLI::IsMember(theorem_tags()));

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Verify a characterization over all primes up to a bound");
    std::string verify_tag, verify_out, verify_format = "json";
    u64 verify_q = 0, verify_bound = 0;
    verify_cmd->add_option("--theorem", verify_tag)->required()->check(CLI::IsMember(theorem_tags()));
    verify_cmd->add_option("--q", verify_q)->required()->check(CLI::PositiveNumber);
    verify_cmd->add_option("--bound", verify_bound)->required();
    verify_cmd->add_option("--out", verify_out, "report file (default: standard output)");
    verify_cmd->add_option("--format", verify_format)->check(CLI::IsMember({"json", "csv"}));
    verify_cmd->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

    // explore
    auto* explore_cmd = app.add_subcommand("explore", "Empirical H1/H2 equality explorers");
    explore_cmd->require_subcommand(1);
    auto* p1_cmd = explore_cmd->add_subcommand("problem1", "Compare H1(q) and H2(q) on primes for q <= qmax");
    u64 p1_qmax = 0, p1_bound = 0;
    p1_cmd->add_option("--qmax", p1_qmax)->required()->check(CLI::PositiveNumber);
    p1_cmd->add_option("--bound", p1_bound)->required();
    p1_cmd->add_option("--workers", workers)->check(CLI::PositiveNumber);
    auto* p2_cmd = explore_cmd->add_subcommand("problem2", "Test whether equality for q1, q2 carries to q1*q2");
    u64 p2_q1 = 0, p2_q2 = 0, p2_bound = 0;
    p2_cmd->add_option("--q1", p2_q1)->required()->check(CLI::PositiveNumber);
    p2_cmd->add_option("--q2", p2_q2)->required()->check(CLI::PositiveNumber);
    p2_cmd->add_option("--bound", p2_bound)->required();
    p2_cmd->add_option("--workers", workers)->check(CLI::PositiveNumber);

    // trinity
    auto* trinity_cmd = app.add_subcommand("trinity", "Check the A/B/C inclusions and the 12k+1 prime claim");
    u64 trinity_bound = 0;
    trinity_cmd->add_option("--bound", trinity_bound)->required();

    // tables
    auto* tables_cmd = app.add_subcommand("tables", "Rule table utilities");
    tables_cmd->require_subcommand(1);
    auto* export_cmd = tables_cmd->add_subcommand("export", "Write every rule table as JSON");
    std::string export_out;
    export_cmd->add_option("--out", export_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        out << app.help();
        return exit_clean;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    try {
        if (*represent_cmd) {
            const FormInstance inst(*parse_family(family_text), rep_q);
            auto w = represent(rep_n, inst);
            if (!w) {
                out << "no representation of " << rep_n << " in " << family_text << "(" << rep_q << ")\n";
                return exit_clean;
            }
            out << "witness (" << w->a << "," << w->b << ")\n" << detail::describe(*w, inst) << "\n";
            return exit_clean;
        }

        if (*check_cmd) {
            if (!is_prime(check_p)) {
                err << "error: --p must be prime\n";
                return exit_usage;
            }
            auto tags = check_tag.empty() ? detail::tags_for_q(check_q) : std::vector<std::string>{check_tag};
            if (tags.empty()) {
                err << "error: no characterization on file for q=" << check_q << "\n";
                return exit_usage;
            }
            bool disagreement = false;
            for (const auto& tag : tags) {
                const TheoremChecker checker = make_checker(tag, check_q);
                out << tag << " q=" << check_q << " p=" << check_p << ": ";
                if (!checker.in_domain(check_p)) {
                    out << "outside domain\n";
                    continue;
                }
                const PrimeOutcome o = checker.evaluate(check_p);
                out << "predicate=" << (o.predicate ? "true" : "false") << " witness=";
                if (o.witness)
                    out << "(" << o.witness->a << "," << o.witness->b << ") l=" << o.witness->multiplier;
                else
                    out << "none";
                const bool agree = o.predicate == o.witness_found && !o.exclusivity_violated;
                out << (agree ? " agree" : " DISAGREE") << "\n";
                disagreement = disagreement || !agree;
            }
            return disagreement ? exit_mismatch : exit_clean;
        }

        if (*verify_cmd) {
            const VerificationReport report = verify_theorem(verify_tag, verify_q, verify_bound, workers);
            const std::string text = verify_format == "csv" ? to_csv(report) : to_json(report).dump(2) + "\n";
            if (verify_out.empty()) {
                out << text;
            } else {
                if (!detail::write_text(verify_out, text, err)) return exit_usage;
                out << report.theorem << " q=" << report.q << ": " << report.checked_count << " primes checked, "
                    << report.mismatches.size() << " mismatches -> " << verify_out << "\n";
            }
            return report.clean() ? exit_clean : exit_mismatch;
        }

        if (*p1_cmd) {
            out << to_json(explore_problem1(p1_qmax, p1_bound, workers)).dump(2) << "\n";
            return exit_clean;
        }

        if (*p2_cmd) {
            out << to_json(explore_problem2(p2_q1, p2_q2, p2_bound, workers)).dump(2) << "\n";
            return exit_clean;
        }

        if (*trinity_cmd) {
            const InclusionReport inclusions = verify_inclusions(trinity_bound);
            const auto equivalence = sum_of_squares_equivalence_failures(trinity_bound);
            const auto primes = twelve_k_plus_one_failures(trinity_bound);
            json fixtures = json::array();
            bool fixtures_ok = true;
            for (const auto& f : trinity_fixtures()) {
                const bool ok = fixture_holds(f);
                fixtures_ok = fixtures_ok && ok;
                fixtures.push_back({{"p", f.p}, {"holds", ok}});
            }
            json doc{{"table_version", table_version},
                     {"inclusions", to_json(inclusions)},
                     {"sum_of_squares_equivalence_failures", equivalence},
                     {"twelve_k_plus_one_failures", primes},
                     {"fixtures", fixtures}};
            out << doc.dump(2) << "\n";
            const bool clean = inclusions.clean() && equivalence.empty() && primes.empty() && fixtures_ok;
            return clean ? exit_clean : exit_mismatch;
        }

        if (*export_cmd) {
            if (!detail::write_text(export_out, tables_json().dump(2) + "\n", err)) return exit_usage;
            out << "tables (version " << table_version << ") -> " << export_out << "\n";
            return exit_clean;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const budget_exceeded& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const bound_exceeded& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    err << app.help();
    return exit_usage;
}

} // namespace primeforms
