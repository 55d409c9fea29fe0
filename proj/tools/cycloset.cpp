// cycloset: enumerate, verify and draw q-cyclotomic cosets.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.

#include "cycloset/cycloset.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>

namespace {

using namespace cycloset;

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_usage = 2;

struct FieldOptions {
    std::optional<u64> q;
    std::optional<u64> p;
    std::optional<unsigned> e;

    void attach(CLI::App& cmd)
    {
        auto* q_opt = cmd.add_option("--q", q, "field size q = p^e");
        auto* p_opt = cmd.add_option("--p", p, "characteristic p (with --e)");
        auto* e_opt = cmd.add_option("--e", e, "exponent e (with --p)");
        q_opt->excludes(p_opt)->excludes(e_opt);
        p_opt->needs(e_opt);
        e_opt->needs(p_opt);
    }

    u64 value() const
    {
        if (q)
            return PrimePowerQ::from_value(*q).q;
        if (p && e)
            return PrimePowerQ::from_parts(*p, *e).q;
        fail(errc::precondition, "give --q or both --p and --e");
    }
};

void print_report(const VerificationReport& r)
{
    std::cout << "q=" << r.q << " n=" << r.n << " cosets=" << r.algorithm_count << " oracle=" << r.oracle_count
              << " structured=" << r.algorithm_seconds * 1e3 << "ms naive=" << r.oracle_seconds * 1e3 << "ms "
              << (r.match ? "match" : "MISMATCH") << "\n";
}

void print_divergence(const VerificationReport& r)
{
    const auto& m = r.mismatches.front();
    std::cerr << "first divergence at q=" << r.q << " n=" << r.n << ": oracle coset leader " << m.oracle_leader
              << " (size " << m.oracle_size << ") vs algorithm coset leader " << m.algorithm_leader << " (size "
              << m.algorithm_size << ")\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"q-cyclotomic coset enumeration through l-adic towers"};
    app.require_subcommand(1);

    FieldOptions enum_field;
    u64 enum_n = 0;
    std::string enum_format = "table";
    bool with_leaders = false;
    auto* cmd_enumerate = app.add_subcommand("enumerate", "list C_{n/q}: representatives and sizes");
    enum_field.attach(*cmd_enumerate);
    cmd_enumerate->add_option("--n", enum_n, "modulus")->required();
    cmd_enumerate->add_option("--format", enum_format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    cmd_enumerate->add_flag("--with-leaders", with_leaders, "also compute leaders and sort by them");

    FieldOptions verify_field;
    std::optional<u64> verify_n;
    std::optional<u64> verify_n_max;
    u64 oracle_cap = default_oracle_cap;
    auto* cmd_verify = app.add_subcommand("verify", "compare against the brute-force orbit sweep");
    verify_field.attach(*cmd_verify);
    auto* n_opt = cmd_verify->add_option("--n", verify_n, "single modulus");
    auto* n_max_opt = cmd_verify->add_option("--n-max", verify_n_max, "sweep every n in [1, n-max] coprime to q");
    n_opt->excludes(n_max_opt);
    cmd_verify->add_option("--oracle-cap", oracle_cap, "largest n the oracle may sweep");

    FieldOptions tree_field;
    u64 tree_ell = 0;
    u64 tree_n = 0;
    unsigned tree_depth = 1;
    std::string tree_format = "dot";
    auto* cmd_tree = app.add_subcommand("tree", "splitting tree of C_{n/q} up the l-adic tower, as DOT");
    tree_field.attach(*cmd_tree);
    cmd_tree->add_option("--ell", tree_ell, "prime l not dividing n")->required();
    cmd_tree->add_option("--n", tree_n, "base modulus")->required();
    cmd_tree->add_option("--depth", tree_depth, "tower depth f");
    cmd_tree->add_option("--format", tree_format, "output format")->check(CLI::IsMember({"dot"}));

    u64 phi_ell = 0;
    u64 phi_n = 0;
    i64 phi_gamma = 0;
    unsigned phi_digits = 1;
    auto* cmd_phi = app.add_subcommand("phi", "l-adic digits of -gamma/n");
    cmd_phi->add_option("--ell", phi_ell, "prime l")->required();
    cmd_phi->add_option("--n", phi_n, "modulus coprime to l")->required();
    cmd_phi->add_option("--gamma", phi_gamma, "numerator")->required();
    cmd_phi->add_option("--digits", phi_digits, "number of digits")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        const EnumerateOptions options{default_threads()};

        if (*cmd_enumerate) {
            const CosetPartition partition = enumerate_cosets(enum_field.value(), enum_n, options);
            const PartitionDocument doc = make_document(partition, with_leaders);
            if (enum_format == "json")
                std::cout << to_json(doc);
            else if (enum_format == "csv")
                std::cout << to_csv(doc);
            else
                std::cout << to_table(doc);
            return exit_ok;
        }

        if (*cmd_verify) {
            const u64 q = verify_field.value();
            if (!verify_n && !verify_n_max)
                fail(errc::precondition, "give --n or --n-max");
            if (verify_n) {
                const VerificationReport report = verify(q, *verify_n, oracle_cap, options);
                print_report(report);
                if (!report.match) {
                    print_divergence(report);
                    return exit_mismatch;
                }
                return exit_ok;
            }
            std::size_t checked = 0;
            double structured = 0;
            double naive = 0;
            for (u64 n = 1; n <= *verify_n_max; ++n) {
                if (std::gcd(q, n) != 1)
                    continue;
                const VerificationReport report = verify(q, n, oracle_cap, options);
                ++checked;
                structured += report.algorithm_seconds;
                naive += report.oracle_seconds;
                if (!report.match) {
                    print_report(report);
                    print_divergence(report);
                    return exit_mismatch;
                }
            }
            std::cout << "q=" << q << " n<=" << *verify_n_max << " moduli=" << checked
                      << " structured=" << structured * 1e3 << "ms naive=" << naive * 1e3 << "ms match\n";
            return exit_ok;
        }

        if (*cmd_tree) {
            std::cout << to_dot(splitting_tree(tree_ell, tree_field.value(), tree_n, tree_depth));
            return exit_ok;
        }

        if (*cmd_phi) {
            const LadicPrefix prefix = phi_prefix(phi_ell, phi_n, phi_gamma, phi_digits - 1);
            for (std::size_t k = 0; k < prefix.digits.size(); ++k)
                std::cout << (k ? " " : "") << prefix.digits[k];
            std::cout << "\n";
            return exit_ok;
        }
    } catch (const cycloset::error& e) {
        std::cerr << "cycloset: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
