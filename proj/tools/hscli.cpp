// Command-line front end: trace tensors, identity verification, and seeded
// randomized suites over exact rational (default) or float scalars.
//
// Exit codes: 0 success / residual zero; 1 nonzero residual or failed
// trials; 2 parse error or unknown identity; 3 dimension mismatch;
// 4 oracle mismatch; 5 resource budget exceeded.

#include <sys/resource.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hasse/hasse.hpp"

namespace {

using hasse::EndoTuple;
using hasse::ExteriorElement;
using hasse::IdentityReport;
using hasse::InputDocument;
using hasse::Matrix;
using hasse::MultiIndex;
using hasse::OperatorSeries;
using hasse::ordered_json;
using hasse::Rational;
using hasse::ScalarMode;
using hasse::SplitMix64;
using hasse::TraceTensor;

constexpr int kExitResidual = 1;
constexpr int kExitParse = 2;
constexpr int kExitDimension = 3;
constexpr int kExitOracle = 4;
constexpr int kExitBudget = 5;

struct CommonOpts {
    std::string input = "-";
    std::string mode_override;  // "", "rational", "float"
    std::string output = "json";
    std::optional<std::uint64_t> seed_override;
    double tol = 1e-9;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw hasse::ParseError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

ScalarMode effective_mode(const InputDocument& doc, const CommonOpts& o) {
    if (o.mode_override == "rational") return ScalarMode::rational;
    if (o.mode_override == "float") return ScalarMode::floating;
    return doc.mode;
}

std::uint64_t effective_seed(const InputDocument& doc, const CommonOpts& o) {
    if (o.seed_override) return *o.seed_override;
    if (doc.seed) return *doc.seed;
    return 0;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

/// Matrices from the document, or `count` seeded random ones when the
/// document carries none. A partial list is a mistake, not a request.
template <class K>
std::vector<Matrix<K>> resolve_matrices(const InputDocument& doc, int count, SplitMix64& rng) {
    std::vector<Matrix<K>> ms = doc.template parse_matrices<K>();
    if (!ms.empty() && static_cast<int>(ms.size()) != count)
        throw std::invalid_argument("this command uses " + std::to_string(count) +
                                    " matrices, input carries " + std::to_string(ms.size()));
    while (static_cast<int>(ms.size()) < count) ms.push_back(hasse::random_matrix<K>(rng, doc.n));
    return ms;
}

template <class K>
bool report_passes(const IdentityReport<K>& r, double tol) {
    if constexpr (std::is_floating_point_v<K>) {
        return r.max_abs <= tol * r.scale;
    } else {
        (void)tol;
        return r.is_zero;
    }
}

// ---- traces ---------------------------------------------------------------

template <class K>
int run_traces(const InputDocument& doc, const CommonOpts& o, bool with_oracle) {
    SplitMix64 rng(effective_seed(doc, o));
    const bool generated = doc.matrix_count() < doc.n;
    const std::vector<Matrix<K>> phi = resolve_matrices<K>(doc, doc.n, rng);
    const TraceTensor<K> tau = hasse::trace_tensor_via_hs(phi);

    std::vector<MultiIndex> mismatches;
    if (with_oracle) {
        for (const auto& i : hasse::indices_up_to_degree(doc.n, doc.n)) {
            const K direct = hasse::trace_via_determinant_oracle(phi, i);
            if constexpr (std::is_floating_point_v<K>) {
                const double mag = std::max(1.0, std::abs(direct));
                if (std::abs(tau.entry(i) - direct) > o.tol * mag) mismatches.push_back(i);
            } else {
                if (tau.entry(i) != direct) mismatches.push_back(i);
            }
        }
    }

    if (o.output == "table") {
        std::cout << "trace tensor  n=" << doc.n
                  << "  mode=" << hasse::mode_name(effective_mode(doc, o)) << "\n";
        for (const auto& i : hasse::indices_up_to_degree(doc.n, doc.n)) {
            std::cout << "  tau" << i.str() << " = ";
            if constexpr (std::is_floating_point_v<K>) {
                std::cout << tau.entry(i);
            } else {
                std::cout << tau.entry(i).str();
            }
            std::cout << "\n";
        }
        if (with_oracle)
            std::cout << (mismatches.empty() ? "oracle: match\n" : "oracle: MISMATCH\n");
    } else {
        ordered_json j;
        j["command"] = "traces";
        j["mode"] = hasse::mode_name(effective_mode(doc, o));
        if (generated || doc.seed || o.seed_override) j["seed"] = effective_seed(doc, o);
        ordered_json tensor = hasse::tensor_to_json(tau);
        j["n"] = tensor["n"];
        j["entries"] = tensor["entries"];
        if (with_oracle) {
            j["oracle"] = mismatches.empty() ? "match" : "mismatch";
            if (!mismatches.empty()) {
                ordered_json bad = ordered_json::array();
                for (const auto& i : mismatches) bad.push_back(i.exponents());
                j["oracle_mismatches"] = std::move(bad);
            }
        }
        emit(j);
    }
    return mismatches.empty() ? 0 : kExitOracle;
}

// ---- verify ---------------------------------------------------------------

template <class K>
IdentityReport<K> ibp_report(const EndoTuple<K>& phi, SplitMix64& rng) {
    const int n = hasse::tuple_dimension(phi);
    const auto dbar = hasse::tuple_derivation(phi, n);
    const auto d = hasse::series_inverse(dbar);
    const auto u = hasse::random_element<K>(rng, n);
    const auto v = hasse::random_element<K>(rng, n);

    const auto direct = hasse::integration_by_parts_residual(d, dbar, u, v);
    const auto dual = hasse::integration_by_parts_residual(dbar, d, u, v);

    K sum(0);
    double worst = 0.0, scale = 1.0;
    for (const auto* series : {&direct, &dual}) {
        for (const auto& [i, elt] : series->coefficients())
            for (const auto& [b, c] : elt.terms()) {
                sum += c * c;
                if constexpr (std::is_floating_point_v<K>) worst = std::max(worst, std::abs(c));
            }
    }
    if constexpr (std::is_floating_point_v<K>) {
        const auto du = d.apply(u);
        for (const auto& [i, elt] : du.coefficients())
            for (const auto& [b, c] : elt.terms()) scale = std::max(scale, std::abs(c));
    }
    Matrix<K> residual(1);
    residual.at(0, 0) = sum;
    IdentityReport<K> report("ibp", residual);
    report.n = n;
    if constexpr (std::is_floating_point_v<K>) {
        report.max_abs = worst;
        report.scale = scale;
    }
    return report;
}

template <class K>
IdentityReport<K> evaluate_identity(const std::string& name, const InputDocument& doc,
                                    SplitMix64& rng, bool inject_fault) {
    const int n = doc.n;
    if (name == "thm48") {
        const EndoTuple<K> phi = resolve_matrices<K>(doc, n, rng);
        return hasse::generalized_ch_residual(phi, hasse::trace_tensor_via_hs(phi));
    }
    if (name == "star2") {
        if (n != 2) throw std::invalid_argument("star2 needs n = 2");
        const auto ms = resolve_matrices<K>(doc, 2, rng);
        return hasse::star2_skew_residual(ms[0], ms[1]);
    }
    if (name == "star3") {
        if (n != 3) throw std::invalid_argument("star3 needs n = 3");
        const auto ms = resolve_matrices<K>(doc, 3, rng);
        return hasse::star3_symmetrized_residual(ms[0], ms[1], ms[2], inject_fault);
    }
    if (name == "eq17") {
        if (n != 3) throw std::invalid_argument("eq17 needs n = 3");
        if (doc.matrix_count() != 0 && doc.matrix_count() != 2)
            throw std::invalid_argument("eq17 takes exactly two matrices");
        const auto ms = resolve_matrices<K>(doc, 2, rng);
        return hasse::eq17_residual(ms[0], ms[1]);
    }
    if (name == "ibp") {
        const EndoTuple<K> phi = resolve_matrices<K>(doc, n, rng);
        return ibp_report(phi, rng);
    }
    if (name == "conjugacy") {
        // the conjugator is the last matrix; generated when absent
        if (doc.matrix_count() != 0 && doc.matrix_count() != n && doc.matrix_count() != n + 1)
            throw std::invalid_argument("conjugacy takes the tuple plus an optional conjugator");
        std::vector<Matrix<K>> ms = doc.template parse_matrices<K>();
        while (static_cast<int>(ms.size()) < n) ms.push_back(hasse::random_matrix<K>(rng, n));
        const Matrix<K> p = static_cast<int>(ms.size()) == n + 1
                                ? ms.back()
                                : hasse::random_invertible_matrix<K>(rng, n);
        ms.resize(n, Matrix<K>(n));
        return hasse::conjugacy_invariance_check(EndoTuple<K>(ms.begin(), ms.end()), p);
    }
    if (name == "trsq") {
        if (n != 2) throw std::invalid_argument("trsq needs n = 2");
        const auto ms = resolve_matrices<K>(doc, 1, rng);
        return hasse::tr_square_identity(ms[0]);
    }
    if (name == "classical-ch") {
        const auto ms = resolve_matrices<K>(doc, 1, rng);
        return hasse::classical_ch_residual(ms[0]);
    }
    throw hasse::ParseError("unknown identity '" + name + "'");
}

template <class K>
int run_verify(const std::string& name, const InputDocument& doc, const CommonOpts& o,
               bool inject_fault) {
    SplitMix64 rng(effective_seed(doc, o));
    const IdentityReport<K> report = evaluate_identity<K>(name, doc, rng, inject_fault);
    const bool pass = report_passes(report, o.tol);

    if (o.output == "table") {
        std::cout << "identity: " << report.identity << "\n"
                  << "n: " << doc.n << "\n"
                  << "result: " << (pass ? "zero residual" : "NONZERO residual") << "\n";
    } else {
        ordered_json j = hasse::report_to_json(report, effective_seed(doc, o));
        j["n"] = doc.n;
        if constexpr (std::is_floating_point_v<K>) {
            j["tol"] = o.tol;
            j["pass"] = pass;
        }
        emit(j);
    }
    return pass ? 0 : kExitResidual;
}

// ---- random-suite ---------------------------------------------------------

long peak_rss_mb() {
    struct rusage ru {};
    if (getrusage(RUSAGE_SELF, &ru) != 0) return -1;
    return static_cast<long>(ru.ru_maxrss / 1024);  // Linux reports KB
}

struct SuiteCheck {
    std::string name;
    long pass = 0;
    long fail = 0;
};

template <class K>
void run_suite_trial(int n, std::uint64_t trial_seed, double tol, std::vector<SuiteCheck>& checks) {
    std::size_t slot = 0;
    const auto record = [&](const std::string& name, bool ok) {
        if (slot == checks.size()) checks.push_back({name, 0, 0});
        (ok ? checks[slot].pass : checks[slot].fail) += 1;
        ++slot;
    };
    const auto sub_rng = [&](int stream) {
        return SplitMix64(hasse::derive_seed(trial_seed, static_cast<std::uint64_t>(stream)));
    };

    {
        auto rng = sub_rng(0);
        record("classical-ch",
               report_passes(hasse::classical_ch_residual(hasse::random_matrix<K>(rng, n)), tol));
    }
    if (n >= 2) {
        {
            auto rng = sub_rng(1);
            const auto phi = hasse::random_tuple<K>(rng, n, n);
            const auto tau = hasse::trace_tensor_via_hs(phi);
            record("thm48", report_passes(hasse::generalized_ch_residual(phi, tau), tol));

            bool oracle_ok = true;
            for (const auto& i : hasse::indices_up_to_degree(n, n)) {
                const K direct = hasse::trace_via_determinant_oracle(phi, i);
                if constexpr (std::is_floating_point_v<K>) {
                    if (std::abs(tau.entry(i) - direct) > tol * std::max(1.0, std::abs(direct)))
                        oracle_ok = false;
                } else {
                    if (tau.entry(i) != direct) oracle_ok = false;
                }
            }
            record("oracle", oracle_ok);
        }
        {
            auto rng = sub_rng(2);
            const auto phi = hasse::random_tuple<K>(rng, n, n);
            const auto p = hasse::random_invertible_matrix<K>(rng, n);
            record("conjugacy", report_passes(hasse::conjugacy_invariance_check(phi, p), tol));
        }
        if (n <= 4) {
            // the materialized series inverse grows steeply with n; the
            // pairing law it exercises is covered up to n = 4 here
            auto rng = sub_rng(3);
            const auto phi = hasse::random_tuple<K>(rng, n, n);
            record("ibp", report_passes(ibp_report(phi, rng), tol));
        }
    }
    if (n == 2) {
        auto rng = sub_rng(4);
        const auto a = hasse::random_matrix<K>(rng, 2);
        const auto b = hasse::random_matrix<K>(rng, 2);
        record("star2", report_passes(hasse::star2_skew_residual(a, b), tol));
        record("trsq", report_passes(hasse::tr_square_identity(a), tol));
    }
    if (n == 3) {
        auto rng = sub_rng(5);
        const auto a = hasse::random_matrix<K>(rng, 3);
        const auto b = hasse::random_matrix<K>(rng, 3);
        const auto c = hasse::random_matrix<K>(rng, 3);
        record("star3", report_passes(hasse::star3_symmetrized_residual(a, b, c), tol));
        record("eq17", report_passes(hasse::eq17_residual(a, b), tol));
    }
}

struct SuiteOpts {
    int n = 2;
    long trials = 10;
    std::uint64_t seed = 0;
    std::string mode = "rational";
    std::string output = "json";
    double tol = 1e-9;
    double time_budget_s = 300.0;
    long memory_budget_mb = 2048;
};

int run_random_suite(const SuiteOpts& o) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<SuiteCheck> checks;
    std::string budget_hit;

    long completed = 0;
    for (long t = 0; t < o.trials; ++t) {
        const std::uint64_t trial_seed = hasse::derive_seed(o.seed, static_cast<std::uint64_t>(t));
        if (o.mode == "float")
            run_suite_trial<double>(o.n, trial_seed, o.tol, checks);
        else
            run_suite_trial<Rational>(o.n, trial_seed, o.tol, checks);
        ++completed;

        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > o.time_budget_s && t + 1 < o.trials) {
            budget_hit = "time";
            break;
        }
        const long peak = peak_rss_mb();
        if (peak > 0 && peak > o.memory_budget_mb) {
            budget_hit = "memory";
            break;
        }
    }

    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    bool all_pass = true;
    for (const auto& c : checks)
        if (c.fail != 0) all_pass = false;

    if (o.output == "table") {
        std::cout << "random-suite  n=" << o.n << "  trials=" << completed << "/" << o.trials
                  << "  seed=" << o.seed << "  mode=" << o.mode << "\n";
        for (const auto& c : checks)
            std::cout << "  " << c.name << ": " << c.pass << " pass, " << c.fail << " fail\n";
        if (!budget_hit.empty()) std::cout << "budget exceeded: " << budget_hit << "\n";
    } else {
        ordered_json j;
        j["command"] = "random-suite";
        j["n"] = o.n;
        j["trials"] = o.trials;
        j["completed"] = completed;
        j["seed"] = o.seed;
        j["mode"] = o.mode;
        ordered_json arr = ordered_json::array();
        for (const auto& c : checks) {
            ordered_json cj;
            cj["name"] = c.name;
            cj["pass"] = c.pass;
            cj["fail"] = c.fail;
            arr.push_back(std::move(cj));
        }
        j["checks"] = std::move(arr);
        j["all_pass"] = all_pass;
        if (!budget_hit.empty()) j["budget_exceeded"] = budget_hit;
        j["elapsed_ms"] = elapsed_ms;
        emit(j);
    }
    if (!budget_hit.empty()) return kExitBudget;
    return all_pass ? 0 : kExitResidual;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace tensors of matrix tuples and the vanishing identities they satisfy"};
    app.require_subcommand(1);

    CommonOpts common;
    bool with_oracle = false;
    bool inject_fault = false;
    std::string identity;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", common.input, "input JSON file, or - for stdin");
        cmd->add_option("--mode", common.mode_override, "scalar mode override")
            ->check(CLI::IsMember({"rational", "float"}));
        cmd->add_option("--output", common.output, "output format")
            ->check(CLI::IsMember({"json", "table"}));
        cmd->add_option("--seed", common.seed_override, "seed override for generated inputs");
        cmd->add_option("--tol", common.tol, "float-mode relative tolerance");
    };

    CLI::App* traces = app.add_subcommand("traces", "print the trace tensor of an n-tuple");
    add_common(traces);
    traces->add_flag("--oracle", with_oracle, "cross-check against the determinant-sum oracle");

    CLI::App* verify = app.add_subcommand("verify", "evaluate one identity and report the residual");
    verify->add_option("identity", identity, "which identity to check")
        ->required()
        ->check(CLI::IsMember(
            {"thm48", "star2", "star3", "eq17", "ibp", "conjugacy", "trsq", "classical-ch"}));
    add_common(verify);
    verify->add_flag("--inject-fault", inject_fault,
                     "negative control: corrupt one coefficient before evaluating");

    SuiteOpts suite;
    CLI::App* rsuite = app.add_subcommand("random-suite", "run all identity checks on random tuples");
    rsuite->add_option("--n", suite.n, "dimension")->required()->check(CLI::Range(1, 6));
    rsuite->add_option("--trials", suite.trials, "number of trials")
        ->required()
        ->check(CLI::PositiveNumber);
    rsuite->add_option("--seed", suite.seed, "root seed");
    rsuite->add_option("--mode", suite.mode, "scalar mode")
        ->check(CLI::IsMember({"rational", "float"}));
    rsuite->add_option("--output", suite.output, "output format")
        ->check(CLI::IsMember({"json", "table"}));
    rsuite->add_option("--tol", suite.tol, "float-mode relative tolerance");
    rsuite->add_option("--time-budget", suite.time_budget_s, "seconds before aborting");
    rsuite->add_option("--memory-budget", suite.memory_budget_mb, "peak MB before aborting");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    try {
        if (*rsuite) return run_random_suite(suite);

        const InputDocument doc = hasse::parse_input_document(read_input(common.input));
        const ScalarMode mode = effective_mode(doc, common);
        if (*traces) {
            return mode == ScalarMode::rational ? run_traces<Rational>(doc, common, with_oracle)
                                                : run_traces<double>(doc, common, with_oracle);
        }
        return mode == ScalarMode::rational
                   ? run_verify<Rational>(identity, doc, common, inject_fault)
                   : run_verify<double>(identity, doc, common, inject_fault);
    } catch (const hasse::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDimension;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDimension;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
}
