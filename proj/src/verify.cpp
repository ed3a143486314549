#include <algorithm>
#include <chrono>
#include <cctype>
#include <limits>
#include <random>

#include "qseries/corpus.hpp"

namespace qs {

std::string to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Exact draw_rational(std::mt19937_64& rng, long h) {
    std::uniform_int_distribution<long> mag(1, h);
    std::bernoulli_distribution neg(0.5);
    long p = mag(rng);
    long r = mag(rng);
    return Exact::ratio(neg(rng) ? -p : p, r);
}

bool guards_hold(const Identity& ident, const Assignment& a) {
    for (const Guard& g : ident.guards) {
        switch (g.kind) {
        case Guard::Kind::QInsideDisk:
            if (!inside_unit_disk(a.q)) return false;
            break;
        case Guard::Kind::NonZero:
            for (const auto& m : g.args) {
                if (eval_monomial<Exact>(m, a).is_zero()) return false;
            }
            break;
        case Guard::Kind::NotEqual:
            if (eval_monomial<Exact>(g.args[0], a) == eval_monomial<Exact>(g.args[1], a)) return false;
            break;
        case Guard::Kind::NotOmega:
            if (in_omega(eval_monomial<Exact>(g.args[0], a), a.q, g.length.at(a.n))) return false;
            break;
        }
    }
    return true;
}

// Solved parameters may depend on n, so they are recomputed per n.
bool apply_lets(const Identity& ident, Assignment& a) {
    for (const auto& [name, mono] : ident.lets) {
        Exact v = eval_monomial<Exact>(mono, a);
        if (v.is_zero()) return false;
        a.values[name] = v;
    }
    return true;
}

bool admissible_everywhere(const Identity& ident, Assignment a, const std::vector<long>& ns) {
    for (long n : ns) {
        a.n = n;
        if (!apply_lets(ident, a)) return false;
        if (!guards_hold(ident, a)) return false;
        for (const Member& m : ident.members) {
            if (m.float_only) continue;
            if (check_admissible(m.expr, a)) return false;
        }
        if (ident.closed_form && check_admissible(*ident.closed_form, a)) return false;
    }
    return true;
}

Counterexample make_cx(int trial, const Assignment& a, const std::string& i, const std::string& j,
                       std::string lhs, std::string rhs, double res) {
    Counterexample c;
    c.trial = trial;
    c.point = a;
    c.member_i = i;
    c.member_j = j;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    c.residual = res;
    return c;
}

constexpr std::size_t kMaxCounterexamplesPerTrial = 3;

}  // namespace

SampledPoint sample_point(const Identity& ident, const SamplePlan& plan, int trial) {
    std::mt19937_64 rng(splitmix64(splitmix64(plan.seed) ^ static_cast<std::uint64_t>(trial)));
    for (int attempt = 0; attempt <= plan.max_rejections; ++attempt) {
        Assignment a;
        for (const auto& name : ident.params) a.values[name] = draw_rational(rng, plan.height_bound);
        a.q = draw_rational(rng, plan.height_bound);
        if (on_unit_circle(a.q)) continue;
        if (ident.uses_z) a.z = draw_rational(rng, plan.height_bound);
        if (admissible_everywhere(ident, a, plan.n_values)) {
            apply_lets(ident, a);
            return {a, attempt};
        }
    }
    throw Error(ErrorKind::SamplingExhausted,
                ident.id + ": no admissible point after " + std::to_string(plan.max_rejections) + " rejections");
}

TrialOutcome run_trial(const Identity& ident, const SamplePlan& plan, Mode mode, int trial) {
    TrialOutcome out;
    SampledPoint sp;
    try {
        sp = sample_point(ident, plan, trial);
    } catch (const Error& e) {
        out.aborted = true;
        out.error = e.what();
        return out;
    }
    out.rejections = sp.rejections;
    Assignment a = sp.point;
    try {
        for (long n : plan.n_values) {
            a.n = n;
            apply_lets(ident, a);
            // Reference value: the first exact-capable member.
            std::size_t ref = 0;
            while (ref < ident.members.size() && ident.members[ref].float_only) ++ref;
            const std::string& ref_label = ident.members[ref].label;
            if (mode == Mode::exact) {
                Exact v0 = eval_expr<Exact>(ident.members[ref].expr, a);
                Float v0f = v0.to_float();
                auto compare = [&](const std::string& label, const Exact& v) {
                    if (v != v0 && out.counterexamples.size() < kMaxCounterexamplesPerTrial) {
                        out.counterexamples.push_back(
                            make_cx(trial, a, label, ref_label, v.to_string(), v0.to_string(), rel_residual(v.to_float(), v0f)));
                    }
                };
                for (std::size_t i = 0; i < ident.members.size(); ++i) {
                    const Member& m = ident.members[i];
                    if (i == ref) continue;
                    if (m.float_only) {
                        if (check_admissible(m.expr, a)) continue;
                        Float v = eval_expr_mixed(m.expr, a);
                        double r = rel_residual(v, v0f);
                        ++out.float_only_checks;
                        out.max_residual = std::max(out.max_residual, r);
                        if (r > kFloatRelTol && out.counterexamples.size() < kMaxCounterexamplesPerTrial) {
                            out.counterexamples.push_back(make_cx(trial, a, m.label, ref_label, v.to_string(), v0f.to_string(), r));
                        }
                        continue;
                    }
                    compare(m.label, eval_expr<Exact>(m.expr, a));
                }
                if (ident.closed_form) compare("closed_form", eval_expr<Exact>(*ident.closed_form, a));
            } else {
                Float v0 = eval_expr<Float>(ident.members[ref].expr, a);
                auto compare = [&](const std::string& label, const Float& v) {
                    double r = rel_residual(v, v0);
                    if (!v.is_finite()) r = std::numeric_limits<double>::infinity();
                    out.max_residual = std::max(out.max_residual, r);
                    if (!(r <= kFloatRelTol) && out.counterexamples.size() < kMaxCounterexamplesPerTrial) {
                        out.counterexamples.push_back(make_cx(trial, a, label, ref_label, v.to_string(), v0.to_string(), r));
                    }
                };
                for (std::size_t i = 0; i < ident.members.size(); ++i) {
                    const Member& m = ident.members[i];
                    if (i == ref) continue;
                    if (m.float_only) {
                        if (check_admissible(m.expr, a)) continue;
                        ++out.float_only_checks;
                    }
                    compare(m.label, eval_expr<Float>(m.expr, a));
                }
                if (ident.closed_form) compare("closed_form", eval_expr<Float>(*ident.closed_form, a));
            }
        }
    } catch (const Error& e) {
        out.aborted = true;
        out.error = e.what();
        return out;
    }
    out.passed = out.counterexamples.empty();
    return out;
}

namespace {

VerificationReport aggregate(const Identity& ident, Mode mode, const std::vector<TrialOutcome>& outcomes) {
    VerificationReport rep;
    rep.identity_id = ident.id;
    rep.mode = mode;
    rep.trials_run = static_cast<int>(outcomes.size());
    for (const TrialOutcome& o : outcomes) {
        rep.rejections += o.rejections;
        rep.float_only_checks += o.float_only_checks;
        rep.max_residual = std::max(rep.max_residual, o.max_residual);
        if (o.passed) ++rep.trials_passed;
        if (o.aborted) {
            ++rep.trials_aborted;
            if (o.error.rfind("SamplingExhausted", 0) == 0) rep.sampling_exhausted = true;
            if (rep.errors.size() < 5) rep.errors.push_back(o.error);
        }
        for (const auto& c : o.counterexamples) {
            if (rep.counterexamples.size() < 20) rep.counterexamples.push_back(c);
        }
    }
    return rep;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TrialOutcome budgeted_trial(const Identity& ident, const SamplePlan& plan, Mode mode, int trial,
                            std::chrono::steady_clock::time_point t0) {
    if (plan.time_budget_s > 0.0 && seconds_since(t0) > plan.time_budget_s) {
        TrialOutcome out;
        out.aborted = true;
        out.error = "TimeBudget: trial " + std::to_string(trial) + " not started";
        return out;
    }
    return run_trial(ident, plan, mode, trial);
}

}  // namespace

VerificationReport verify_serial(const Identity& ident, const SamplePlan& plan, Mode mode) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(plan.trials));
    for (int t = 0; t < plan.trials; ++t) outcomes[static_cast<std::size_t>(t)] = budgeted_trial(ident, plan, mode, t, t0);
    VerificationReport rep = aggregate(ident, mode, outcomes);
    rep.wall_time_s = seconds_since(t0);
    return rep;
}

VerificationReport verify(const Identity& ident, const SamplePlan& plan, Mode mode) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(plan.trials));
#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < plan.trials; ++t) outcomes[static_cast<std::size_t>(t)] = budgeted_trial(ident, plan, mode, t, t0);
    VerificationReport rep = aggregate(ident, mode, outcomes);
    rep.wall_time_s = seconds_since(t0);
    return rep;
}

Identity mutate(const Identity& ident, std::uint64_t seed, std::string* description) {
    std::mt19937_64 rng(splitmix64(seed ^ 0x5bd1e995ULL));
    std::vector<std::size_t> order(ident.members.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::string> names = ident.params;
    names.push_back("q");
    for (std::size_t mi : order) {
        const Member& m = ident.members[mi];
        if (m.float_only) continue;
        const std::string text = render(m.expr);
        const std::string key = canonical_key(m.expr);
        // Candidate tokens: integer literals and parameter names.
        struct Tok {
            std::size_t pos, len;
            bool number;
        };
        std::vector<Tok> toks;
        for (std::size_t i = 0; i < text.size();) {
            char c = text[i];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                toks.push_back({i, j - i, true});
                i = j;
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
                std::string w = text.substr(i, j - i);
                if (std::find(names.begin(), names.end(), w) != names.end()) toks.push_back({i, j - i, false});
                i = j;
            } else {
                ++i;
            }
        }
        std::shuffle(toks.begin(), toks.end(), rng);
        for (const Tok& t : toks) {
            std::string original = text.substr(t.pos, t.len);
            std::vector<std::string> replacements;
            if (t.number) {
                replacements.push_back(std::to_string(std::stol(original) + 1));
            } else {
                for (const auto& nm : names) {
                    if (nm != original) replacements.push_back(nm);
                }
                std::shuffle(replacements.begin(), replacements.end(), rng);
            }
            for (const auto& rep : replacements) {
                std::string mutated = text.substr(0, t.pos) + rep + text.substr(t.pos + t.len);
                Expr e;
                try {
                    e = parse_expr(mutated);
                } catch (const Error&) {
                    continue;
                }
                if (canonical_key(e) == key || free_params(e) != free_params(m.expr)) continue;
                Identity out = ident;
                out.members[mi].expr = e;
                if (description) *description = m.label + ": '" + original + "' -> '" + rep + "' in " + mutated;
                return out;
            }
        }
    }
    throw Error(ErrorKind::CorpusLoadError, ident.id + ": no mutable token found");
}

}  // namespace qs
