#include <complex>
#include <fnmatch.h>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qseries/corpus.hpp"
#include "qseries/polys.hpp"
#include "qseries/report.hpp"
#include "qseries/scheme.hpp"

namespace {

using namespace qs;

enum Exit { kOk = 0, kCounterexample = 1, kUsage = 2, kExhausted = 3 };

bool glob_well_formed(const std::string& g) {
    int depth = 0;
    for (char c : g) {
        if (c == '[') ++depth;
        if (c == ']' && depth > 0) --depth;
    }
    return depth == 0;
}

std::vector<Exact> parse_list(const std::string& text) {
    std::vector<Exact> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(Exact::parse(item));
    }
    return out;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::UnknownName, "cannot write " + path);
    out << text;
}

int cmd_list(const std::string& pattern) {
    if (!glob_well_formed(pattern)) {
        std::cerr << "error: malformed glob '" << pattern << "'\n";
        return kUsage;
    }
    for (const Identity& id : registry()) {
        if (fnmatch(pattern.c_str(), id.id.c_str(), 0) != 0) continue;
        std::cout << std::left << std::setw(12) << id.id << " " << std::setw(11) << to_string(id.kind) << " members "
                  << std::setw(3) << id.displayed_members;
        if (id.members.size() != id.displayed_members) std::cout << " (" << id.members.size() << " with role variants)";
        std::cout << "  " << id.ref;
        if (id.closed_form) std::cout << "  closed form: " << render(*id.closed_form);
        std::cout << "\n";
    }
    return kOk;
}

struct VerifyArgs {
    std::vector<std::string> ids;
    std::uint64_t seed = 0;
    int trials = 50;
    std::string mode = "exact";
    long n_max = 6;
    long height_bound = 16;
    std::string format = "text";
    std::string output;
    bool no_timestamp = false;
    bool serial = false;
    double time_budget = 0.0;
};

int cmd_verify(const VerifyArgs& a) {
    std::vector<const Identity*> targets;
    for (const auto& id : a.ids) {
        if (id == "all") {
            for (const Identity& i : registry()) targets.push_back(&i);
            continue;
        }
        try {
            targets.push_back(&find_identity(id));
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kUsage;
        }
    }
    SamplePlan plan;
    plan.seed = a.seed;
    plan.trials = a.trials;
    plan.height_bound = a.height_bound;
    plan.time_budget_s = a.time_budget;
    plan.n_values.clear();
    for (long n = 0; n <= a.n_max; ++n) plan.n_values.push_back(n);
    Mode mode = a.mode == "float" ? Mode::floating : Mode::exact;
    std::vector<VerificationReport> reps;
    for (const Identity* id : targets) reps.push_back(a.serial ? verify_serial(*id, plan, mode) : verify(*id, plan, mode));
    ReportOptions opt;
    opt.timestamp = !a.no_timestamp;
    opt.seed = plan.seed;
    opt.trials = plan.trials;
    opt.height_bound = plan.height_bound;
    opt.n_values = plan.n_values;
    std::string text = a.format == "json" ? report_json(reps, opt) : a.format == "csv" ? report_csv(reps) : report_text(reps, opt);
    write_output(text, a.output);
    bool exhausted = false, failed = false;
    for (const auto& r : reps) {
        exhausted = exhausted || r.sampling_exhausted;
        failed = failed || !r.passed();
    }
    if (exhausted) return kExhausted;
    return failed ? kCounterexample : kOk;
}

struct EvalArgs {
    std::string target;
    std::string a, z, q = "1/2", x;
    long n = 0;
    int rep = 0;
    std::string mode = "exact";
    std::vector<std::string> sets;
};

int cmd_eval(const EvalArgs& e) {
    try {
        bool floating = e.mode == "float";
        FamilyId fam;
        bool is_family = true;
        try {
            fam = parse_family(e.target);
        } catch (const Error&) {
            is_family = false;
        }
        if (is_family) {
            FamilyPoint pt;
            pt.params = parse_list(e.a);
            pt.q = Exact::parse(e.q);
            pt.n = e.n;
            if (!e.z.empty()) {
                pt.z = Exact::parse(e.z);
            } else if (!e.x.empty()) {
                if (!floating) throw Error(ErrorKind::UnsupportedExact, "--x needs --mode float; exact mode takes --z");
                // Principal branch; the families are invariant under z -> 1/z.
                std::complex<double> x = Exact::parse(e.x).to_float().value();
                std::complex<double> z = x + std::sqrt(x * x - 1.0);
                pt.z = Exact(mpq_class(z.real()), mpq_class(z.imag()));
            } else {
                throw Error(ErrorKind::GuardViolated, "--z is required");
            }
            std::optional<std::size_t> rep;
            if (e.rep > 0) rep = static_cast<std::size_t>(e.rep - 1);
            if (floating) {
                std::cout << eval_family<Float>(fam, pt, rep).to_string() << "\n";
            } else {
                std::cout << eval_family<Exact>(fam, pt, rep).to_string() << "\n";
            }
            return kOk;
        }
        Expr expr = parse_expr(e.target);
        Assignment a;
        a.q = Exact::parse(e.q);
        a.n = e.n;
        if (!e.z.empty()) a.z = Exact::parse(e.z);
        for (const auto& s : e.sets) {
            auto eq = s.find('=');
            if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "--set expects name=value");
            a.values[s.substr(0, eq)] = Exact::parse(s.substr(eq + 1));
        }
        if (!floating) {
            if (auto why = check_admissible(expr, a)) throw Error(ErrorKind::GuardViolated, *why);
            std::cout << eval_expr<Exact>(expr, a).to_string() << "\n";
        } else {
            std::cout << eval_expr<Float>(expr, a).to_string() << "\n";
        }
        return kOk;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kUsage;
    }
}

int cmd_scheme(bool check, const std::string& ladder_text, int seeds) {
    const SchemeGraph& g = scheme_graph();
    std::cout << scheme_dot(g);
    if (!check) return kOk;
    std::vector<Exact> ladder;
    try {
        ladder = parse_ladder(ladder_text);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kUsage;
    }
    bool all = true;
    std::cout << "\n# edge convergence (final relative error at the last ladder value)\n";
    for (int s = 0; s < seeds; ++s) {
        for (const EdgeReport& r : check_scheme(ladder, static_cast<std::uint64_t>(s))) {
            const SchemeEdge& e = g.edges[r.edge];
            all = all && r.converged;
            std::cout << "# seed " << s << "  " << std::left << std::setw(14) << e.source << " -> " << std::setw(14) << e.target
                      << " " << e.label << "  series " << std::scientific << std::setprecision(2)
                      << (r.series_errors.empty() ? -1.0 : r.series_errors.back()) << std::fixed << std::setprecision(1)
                      << " (order " << r.series_order << ")" << std::scientific << std::setprecision(2);
            if (!r.family_errors.empty()) {
                std::cout << "  family " << r.family_errors.back() << std::fixed << std::setprecision(1) << " (order "
                          << r.family_order << ")";
            }
            std::cout << std::defaultfloat << (r.converged ? "  ok" : "  NOT CONVERGED") << "\n";
        }
    }
    return all ? kOk : kCounterexample;
}

int cmd_variants() {
    const std::pair<VariantGroup, const char*> groups[] = {{VariantGroup::threeparam_q, "threeparam_q"},
                                                           {VariantGroup::threeparam_qinv, "threeparam_qinv"},
                                                           {VariantGroup::twoparam_q, "twoparam_q"},
                                                           {VariantGroup::twoparam_qinv, "twoparam_qinv"}};
    for (const auto& [g, name] : groups) {
        VariantCount c = enumerate_variants(g);
        std::cout << std::left << std::setw(16) << name << " " << c.count;
        for (const auto& b : c.breakdown) std::cout << "  [" << b << "]";
        if (c.convention_inferred) std::cout << "  (counting convention inferred)";
        std::cout << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of terminating q-series identities"};
    app.require_subcommand(1);

    std::string pattern = "*";
    auto* list = app.add_subcommand("list", "List corpus identities");
    list->add_option("filter", pattern, "Glob over identity ids");

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "Verify identities at seeded sample points");
    ver->add_option("ids", va.ids, "Identity ids or 'all'")->required();
    ver->add_option("--seed", va.seed, "Sampler seed (default 0)");
    ver->add_option("--trials", va.trials, "Sample points per identity (default 50)")->check(CLI::PositiveNumber);
    ver->add_option("--mode", va.mode, "Scalar type (default exact)")->check(CLI::IsMember({"exact", "float"}));
    ver->add_option("--n-max", va.n_max, "Check n = 0..N (default 6)")->check(CLI::NonNegativeNumber);
    ver->add_option("--height-bound", va.height_bound, "Bound on sampled numerators and denominators (default 16)")->check(CLI::PositiveNumber);
    ver->add_option("--format", va.format, "Report format (default text)")->check(CLI::IsMember({"text", "json", "csv"}));
    ver->add_option("--output", va.output, "Write the report to a file instead of stdout");
    ver->add_flag("--no-timestamp", va.no_timestamp, "Omit the timestamp so reports are byte-identical across runs");
    ver->add_flag("--serial", va.serial, "Use the serial reference kernel");
    ver->add_option("--time-budget", va.time_budget, "Seconds per identity; later trials are aborted")
        ->check(CLI::NonNegativeNumber);

    EvalArgs ea;
    auto* ev = app.add_subcommand("eval", "Evaluate a family or a DSL expression");
    ev->add_option("target", ea.target, "Family name or DSL expression")->required();
    ev->add_option("--a", ea.a, "Comma-separated family parameters");
    ev->add_option("--z", ea.z, "Evaluation point, e.g. 3, 5/2 or 1/2+3/4i");
    ev->add_option("--x", ea.x, "x = (z + 1/z)/2; float mode only");
    ev->add_option("--q", ea.q, "Base");
    ev->add_option("--n", ea.n, "Degree")->check(CLI::NonNegativeNumber);
    ev->add_option("--rep", ea.rep, "1-based representation index");
    ev->add_option("--mode", ea.mode, "Scalar type (default exact)")->check(CLI::IsMember({"exact", "float"}));
    ev->add_option("--set", ea.sets, "name=value for DSL parameters");

    bool check_limits = false;
    std::string ladder = "2^10..2^20";
    int seeds = 5;
    auto* sch = app.add_subcommand("scheme", "Dump the limit scheme as DOT");
    sch->add_flag("--check-limits", check_limits, "After the DOT, check every edge along a lambda ladder");
    sch->add_option("--ladder", ladder, "Ladder as 2^K1..2^K2 (default 2^10..2^20)");
    sch->add_option("--seeds", seeds, "Number of sample points per edge")->check(CLI::PositiveNumber);

    auto* var = app.add_subcommand("variants", "Count permutation variants of the chain identities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }
    try {
        if (*list) return cmd_list(pattern);
        if (*ver) return cmd_verify(va);
        if (*ev) return cmd_eval(ea);
        if (*sch) return cmd_scheme(check_limits, ladder, seeds);
        if (*var) return cmd_variants();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::SamplingExhausted ? kExhausted : kUsage;
    }
    return kOk;
}
