#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "toehold/audit.hpp"
#include "toehold/beta_forms.hpp"
#include "toehold/error.hpp"
#include "toehold/formats.hpp"
#include "toehold/model.hpp"
#include "toehold/simulator.hpp"

namespace toehold::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Range {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

std::int64_t parse_int(std::string_view text, const std::string& what) {
    std::int64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw UsageError("malformed " + what + " '" + std::string(text) + "'");
    }
    return v;
}

// "A..B" with 1 <= A <= B.
Range parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        throw UsageError("range must look like A..B, got '" + text + "'");
    }
    Range r{parse_int(std::string_view(text).substr(0, dots), "range start"),
            parse_int(std::string_view(text).substr(dots + 2), "range end")};
    if (r.lo < 1 || r.lo > r.hi) {
        throw UsageError("range needs 1 <= A <= B, got '" + text + "'");
    }
    return r;
}

unsigned resolve_workers(unsigned requested) {
    if (requested != 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------- params

struct ParamsArgs {
    std::int64_t n = 0;
    std::string range;
    std::string format = "json";
    int digits = 6;
};

int run_params(const ParamsArgs& a, bool have_n, std::ostream& out) {
    Range r{a.n, a.n};
    if (!have_n) {
        if (a.range.empty()) {
            throw UsageError("params needs --n or --n-range");
        }
        r = parse_range(a.range);
    } else if (a.n < 1) {
        throw UsageError("--n must be >= 1");
    }
    if (a.format == "csv") {
        if (a.digits < 1) {
            throw UsageError("--digits must be >= 1");
        }
        out << formats::model_point_csv_header() << "\n";
    }
    for (std::int64_t n = r.lo; n <= r.hi; ++n) {
        const auto p = model::model_point(n);
        out << (a.format == "csv" ? formats::model_point_csv_row(p, a.digits)
                                  : formats::model_point_json(p))
            << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- verify

struct IdentityReport {
    std::string identity;
    std::int64_t n_checked = 0;
    std::vector<std::string> failures;  // JSON-encoded values
};

std::string report_line(const IdentityReport& r) {
    std::string out = "{\"identity\": \"" + r.identity + "\", \"n_checked\": " +
                      std::to_string(r.n_checked) + ", \"failures\": [";
    for (std::size_t i = 0; i < r.failures.size(); ++i) {
        out += (i == 0 ? "" : ", ") + r.failures[i];
    }
    return out + "]}";
}

template <typename Check>
IdentityReport per_n(const std::string& name, std::int64_t n_max, Check&& holds) {
    IdentityReport r{name, 0, {}};
    for (std::int64_t n = 1; n <= n_max; ++n) {
        ++r.n_checked;
        if (!holds(n)) {
            r.failures.push_back(std::to_string(n));
        }
    }
    return r;
}

int run_verify(std::int64_t n_max, std::int64_t beta_max, std::ostream& out) {
    if (n_max < 1 || beta_max < 1) {
        throw UsageError("--n-max and --beta-max must be >= 1");
    }
    using model::StrategyId;
    std::vector<IdentityReport> reports;
    reports.push_back(per_n("appendix_item_1", n_max, [](std::int64_t n) {
        return beta::analytic_price_no_toehold(n) == model::price_no_toehold(n);
    }));
    reports.push_back(per_n("appendix_item_2", n_max, [](std::int64_t n) {
        return beta::analytic_takeover_prob_no_toehold(n) == model::takeover_prob_no_toehold(n);
    }));
    reports.push_back(per_n("appendix_item_3", n_max, [](std::int64_t n) {
        return beta::analytic_profit(n) == model::expected_profit(n);
    }));
    reports.push_back(per_n("appendix_item_4", n_max, [](std::int64_t n) {
        return beta::analytic_takeover_prob_toehold(n) == model::takeover_prob_toehold(n);
    }));
    reports.push_back(per_n("appendix_item_5", n_max, [](std::int64_t n) {
        return beta::analytic_price_toehold(n) == model::price_toehold(n);
    }));

    IdentityReport beta_report{"beta_equality", 0, {}};
    const std::vector<Rational> xs = {Rational(0),        Rational(BigInt(1), BigInt(7)),
                                      Rational(BigInt(2), BigInt(5)), Rational(BigInt(1), BigInt(2)),
                                      Rational(BigInt(9), BigInt(10)), Rational(1)};
    for (std::int64_t a = 1; a <= beta_max; ++a) {
        for (std::int64_t b = 1; b <= beta_max; ++b) {
            for (const auto& x : xs) {
                ++beta_report.n_checked;
                if (!beta::beta_tail_identity_gap(a, b, x).is_zero()) {
                    beta_report.failures.push_back("\"a=" + std::to_string(a) + ",b=" +
                                                   std::to_string(b) + ",x=" + x.to_string() +
                                                   "\"");
                }
            }
        }
    }
    reports.push_back(beta_report);

    reports.push_back(per_n("profit_equality", n_max, [](std::int64_t n) {
        const Rational s = model::equilibrium_sigma(n);
        const Rational pi = model::expected_profit(n);
        return pi == model::profit_curve(n, s, StrategyId::NoToehold) &&
               pi == model::profit_curve(n, s, StrategyId::Toehold) &&
               pi == model::profit_by_outcome_sum(n, s, StrategyId::NoToehold) &&
               pi == model::profit_by_outcome_sum(n, s, StrategyId::Toehold);
    }));
    reports.push_back(per_n("indifference_no_toehold", n_max, [](std::int64_t n) {
        return model::indifference_gap(n, StrategyId::NoToehold, model::price_no_toehold(n),
                                       model::equilibrium_sigma(n))
            .is_zero();
    }));
    reports.push_back(per_n("indifference_toehold", n_max, [](std::int64_t n) {
        return model::indifference_gap(n, StrategyId::Toehold, model::price_toehold(n),
                                       model::equilibrium_sigma(n))
            .is_zero();
    }));
    reports.push_back(per_n("derivative_root", n_max, [](std::int64_t n) {
        return model::profit_derivative_toehold(n, model::equilibrium_sigma(n)).is_zero();
    }));
    reports.push_back(per_n("golden_n1", 1, [](std::int64_t) {
        const auto p = model::model_point(1);
        const Rational p89 = Rational::parse("8/9");
        return p.sigma == Rational::parse("2/3") && p.price_no_toehold == Rational::parse("4/9") &&
               p.takeover_prob_no_toehold == Rational::parse("20/27") &&
               p.price_toehold == Rational::parse("2/3") && p.takeover_prob_toehold == p89 &&
               p.expected_profit == p89;
    }));

    bool ok = true;
    for (const auto& r : reports) {
        out << report_line(r) << "\n";
        ok = ok && r.failures.empty();
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------- audit

struct AuditArgs {
    std::string claims = "all";
    std::string range = "1..100";
    long precision = 192;
    std::string golden;
    unsigned workers = 1;
};

int run_audit(const AuditArgs& a, std::ostream& out, std::ostream& err) {
    if (a.precision < 64) {
        throw UsageError("--precision-bits must be >= 64");
    }
    std::vector<audit::ClaimId> claims;
    if (a.claims == "all") {
        claims.assign(audit::all_claims().begin(), audit::all_claims().end());
    } else {
        std::stringstream ss(a.claims);
        std::string name;
        while (std::getline(ss, name, ',')) {
            try {
                claims.push_back(audit::parse_claim(name));
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
        }
    }
    const Range r = parse_range(a.range);

    std::string golden;
    if (!a.golden.empty()) {
        std::ifstream in(a.golden, std::ios::binary);
        if (!in) {
            throw UsageError("cannot read golden file '" + a.golden + "'");
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        golden = buf.str();
    }

    std::string text;
    for (const auto& v : audit::audit_range(claims, r.lo, r.hi, a.precision,
                                            resolve_workers(a.workers))) {
        text += audit::verdict_to_json_line(v) + "\n";
    }
    out << text;
    if (a.golden.empty() || text == golden) {
        return kExitOk;
    }
    std::istringstream ours(text);
    std::istringstream theirs(golden);
    std::string l1;
    std::string l2;
    for (std::size_t line = 1;; ++line) {
        const bool more1 = static_cast<bool>(std::getline(ours, l1));
        const bool more2 = static_cast<bool>(std::getline(theirs, l2));
        if (!more1 && !more2) {
            break;
        }
        if (!more1 || !more2 || l1 != l2) {
            err << "golden mismatch at line " << line << "\n  got:      " << (more1 ? l1 : "<eof>")
                << "\n  expected: " << (more2 ? l2 : "<eof>") << "\n";
            break;
        }
    }
    return kExitGoldenMismatch;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::int64_t n = 1;
    int strategy = 0;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 0;
    std::string sigma;
    unsigned workers = 1;
};

int run_simulate(const SimulateArgs& a, std::ostream& out) {
    if (a.n < 1) {
        throw UsageError("--n must be >= 1");
    }
    if (a.trials < 1) {
        throw UsageError("--trials must be >= 1");
    }
    sim::SimConfig c;
    c.n = a.n;
    c.strategy = a.strategy == 1 ? model::StrategyId::Toehold : model::StrategyId::NoToehold;
    c.trials = a.trials;
    c.seed = a.seed;
    if (!a.sigma.empty()) {
        try {
            c.sigma = Rational::parse(a.sigma);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
        if (*c.sigma <= Rational(0) || *c.sigma >= Rational(1)) {
            throw UsageError("--sigma must lie strictly inside (0,1)");
        }
    }
    const sim::Comparison cmp = sim::empirical_vs_exact(c, resolve_workers(a.workers));
    const sim::SimSummary& s = cmp.summary;

    nlohmann::ordered_json j;
    j["n"] = c.n;
    j["strategy"] = std::string(model::to_string(c.strategy));
    j["sigma"] = s.sigma.to_string();
    j["trials"] = s.trials;
    j["seed"] = s.seed;
    j["takeover_frequency"] = s.takeover_frequency;
    j["mean_profit"] = s.mean_profit;
    j["stderr_takeover"] = s.stderr_takeover;
    j["stderr_profit"] = s.stderr_profit;
    j["exact_takeover"] = cmp.exact_takeover.to_string();
    j["exact_profit"] = cmp.exact_profit.to_string();
    j["z_takeover"] = cmp.z_takeover ? nlohmann::ordered_json(*cmp.z_takeover) : nullptr;
    j["z_profit"] = cmp.z_profit ? nlohmann::ordered_json(*cmp.z_profit) : nullptr;
    out << j.dump() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- sweep

int run_sweep(const std::string& range, int digits, std::ostream& out) {
    const Range r = parse_range(range);
    if (digits < 1) {
        throw UsageError("--digits must be >= 1");
    }
    out << formats::sweep_csv_header() << "\n";
    for (std::int64_t n = r.lo; n <= r.hi; ++n) {
        out << formats::sweep_csv_row(n, digits) << "\n";
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact equilibrium parameters, identity checks and bound audits for the "
                 "toehold tender-offer game."};
    app.name("toehold");
    app.require_subcommand(1);

    ParamsArgs params;
    auto* params_cmd = app.add_subcommand("params", "Equilibrium parameters per n");
    auto* n_opt = params_cmd->add_option("--n", params.n, "single n");
    auto* range_opt = params_cmd->add_option("--n-range", params.range, "A..B");
    n_opt->excludes(range_opt);
    params_cmd->add_option("--format", params.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    params_cmd->add_option("--digits", params.digits, "decimal places for csv");

    std::int64_t n_max = 150;
    std::int64_t beta_max = 25;
    auto* verify_cmd = app.add_subcommand("verify", "Run the exact identity suites");
    verify_cmd->add_option("--n-max", n_max, "largest n for per-n identities");
    verify_cmd->add_option("--beta-max", beta_max, "largest a, b for the beta equality");

    AuditArgs audit_args;
    auto* audit_cmd = app.add_subcommand("audit", "Audit the bound claims");
    audit_cmd->add_option("--claims", audit_args.claims, "comma-separated claim ids or 'all'");
    audit_cmd->add_option("--n-range", audit_args.range, "A..B");
    audit_cmd->add_option("--precision-bits", audit_args.precision, "interval precision");
    audit_cmd->add_option("--golden", audit_args.golden, "compare output with this file");
    audit_cmd->add_option("--workers", audit_args.workers, "worker threads (0 = all cores)");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo run of one game");
    sim_cmd->add_option("--n", sim_args.n, "half-count of the 2n+1 shareholders");
    sim_cmd->add_option("--strategy", sim_args.strategy, "0 = no toehold, 1 = toehold")
        ->check(CLI::IsMember({0, 1}));
    sim_cmd->add_option("--trials", sim_args.trials, "number of trials");
    sim_cmd->add_option("--seed", sim_args.seed, "64-bit seed");
    sim_cmd->add_option("--sigma", sim_args.sigma, "tender probability p/q");
    sim_cmd->add_option("--workers", sim_args.workers, "worker threads (0 = all cores)");

    std::string sweep_range;
    int sweep_digits = 6;
    auto* sweep_cmd = app.add_subcommand("sweep", "Exact values against large-n approximants");
    sweep_cmd->add_option("--n-range", sweep_range, "A..B")->required();
    sweep_cmd->add_option("--digits", sweep_digits, "decimal places");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*params_cmd) {
            return run_params(params, n_opt->count() > 0, out);
        }
        if (*verify_cmd) {
            return run_verify(n_max, beta_max, out);
        }
        if (*audit_cmd) {
            return run_audit(audit_args, out, err);
        }
        if (*sim_cmd) {
            return run_simulate(sim_args, out);
        }
        return run_sweep(sweep_range, sweep_digits, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
}

}  // namespace toehold::cli
