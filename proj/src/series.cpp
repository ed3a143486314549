#include "qseries/series.hpp"

#include <algorithm>
#include <cmath>

namespace qs {

namespace {

template <class S>
void check_omega(std::vector<Violation>& out, const S& b, const S& q, long n, int index, const char* what) {
    if (b.is_zero()) {
        out.push_back({ViolationCode::DenominatorZero, index, -1, std::string(what) + " is zero"});
        return;
    }
    S bq = b;
    for (long k = 0; k < n; ++k) {
        if (bq.is_one()) {
            out.push_back({ViolationCode::DenominatorInOmega, index, k,
                           std::string(what) + " equals q^-" + std::to_string(k)});
            return;
        }
        bq *= q;
    }
}

template <class S>
void require_admissible(const SeriesSpec<S>& spec) {
    auto v = guards(spec);
    if (v.empty()) return;
    ErrorKind kind = ErrorKind::GuardViolated;
    if (v.front().code == ViolationCode::HeadDegenerate) kind = ErrorKind::HeadDegenerate;
    if (v.front().code == ViolationCode::NotTerminating) kind = ErrorKind::NotTerminating;
    throw Error(kind, v.front().message);
}

}  // namespace

template <class S>
std::vector<Violation> guards(const SeriesSpec<S>& spec) {
    std::vector<Violation> out;
    const S& q = spec.base;
    if (q.is_zero()) {
        out.push_back({ViolationCode::BaseZero, -1, -1, "base q is zero"});
        return out;
    }
    if (on_unit_circle(q)) out.push_back({ViolationCode::BaseOnUnitCircle, -1, -1, "|q| = 1"});
    if (!spec.n) {
        if (spec.kind == SeriesKind::W) {
            out.push_back({ViolationCode::NotTerminating, -1, -1, "W series must terminate"});
        }
        return out;
    }
    const long n = *spec.n;
    for (std::size_t i = 0; i < spec.numerator.size(); ++i) {
        if (spec.numerator[i].is_zero()) {
            out.push_back({ViolationCode::ExplicitZero, static_cast<int>(i), -1,
                           "zero numerator entry must be expressed through p"});
        }
    }
    if (spec.kind == SeriesKind::phi) {
        for (std::size_t j = 0; j < spec.denominator.size(); ++j) {
            check_omega(out, spec.denominator[j], q, n, static_cast<int>(j), "denominator entry");
        }
        return out;
    }
    const S& a = spec.head;
    if (a.is_zero()) {
        out.push_back({ViolationCode::HeadDegenerate, -1, -1, "W head is zero"});
        return out;
    }
    // sqrt(a) not in Omega_q^n  <=>  a q^{2k} != 1 for k < n; a = 1 is always degenerate.
    S q2 = q * q;
    S aq = a;
    for (long k = 0; k < std::max(n, 1L); ++k) {
        if (aq.is_one()) {
            out.push_back({ViolationCode::HeadDegenerate, -1, k, "W head a q^{2k} = 1"});
            break;
        }
        aq *= q2;
    }
    check_omega(out, pow_int(q, n + 1) * a, q, n, -1, "q^{n+1} a");
    for (std::size_t i = 0; i < spec.numerator.size(); ++i) {
        if (spec.numerator[i].is_zero()) continue;
        check_omega(out, q * a / spec.numerator[i], q, n, static_cast<int>(i), "q a / tail entry");
    }
    return out;
}

template <class S>
S eval_phi(const SeriesSpec<S>& spec) {
    if (spec.kind != SeriesKind::phi) throw Error(ErrorKind::RuleShapeMismatch, "eval_phi on a W spec");
    if (!spec.n) throw Error(ErrorKind::NotTerminating, "eval_phi needs a terminating spec");
    require_admissible(spec);
    const long n = *spec.n;
    const S& q = spec.base;
    const int e = spec.sign_exponent();
    const S one(1L);
    // (-1)^k q^{binom(k,2)} ratio to the next term: (-q^k)^e = (-1)^e q^{ke}.
    const S qe = pow_int(q, e);
    S sign_step = (e % 2 == 0) ? one : -one;
    S qk = one;
    S qmn = pow_int(q, -n);
    S term = one;
    S sum = one;
    for (long k = 0; k < n; ++k) {
        S num = one - qmn * qk;
        for (const S& a : spec.numerator) num *= one - a * qk;
        S den = one - qk * q;
        for (const S& b : spec.denominator) den *= one - b * qk;
        term *= num;
        term *= sign_step;
        term *= spec.argument;
        term /= den;
        sum += term;
        sign_step *= qe;
        qk *= q;
    }
    return sum;
}

template <class S>
S eval_w(const SeriesSpec<S>& spec) {
    if (spec.kind != SeriesKind::W) throw Error(ErrorKind::RuleShapeMismatch, "eval_w on a phi spec");
    if (!spec.n) throw Error(ErrorKind::NotTerminating, "eval_w needs a terminating spec");
    require_admissible(spec);
    const long n = *spec.n;
    const S& q = spec.base;
    const S& a = spec.head;
    const int e = spec.p;
    const S one(1L);
    const S qe = pow_int(q, e);
    const S q2 = q * q;
    std::vector<S> den_entries;
    den_entries.reserve(spec.numerator.size() + 1);
    den_entries.push_back(pow_int(q, n + 1) * a);
    for (const S& t : spec.numerator) den_entries.push_back(q * a / t);
    S sign_step = (e % 2 == 0) ? one : -one;
    S qk = one;
    S aq2k = a;  // a q^{2k}
    S qmn = pow_int(q, -n);
    S term = one;
    S sum = one;
    const S inv_one_minus_a = (one - a).inv();
    for (long k = 0; k < n; ++k) {
        S num = (one - qmn * qk) * (one - a * qk);
        for (const S& t : spec.numerator) num *= one - t * qk;
        S den = one - qk * q;
        for (const S& b : den_entries) den *= one - b * qk;
        term *= num;
        term *= sign_step;
        term *= spec.argument;
        term /= den;
        aq2k *= q2;
        sum += term * (one - aq2k) * inv_one_minus_a;
        sign_step *= qe;
        qk *= q;
    }
    return sum;
}

namespace {

double magnitude(const Float& x) { return x.abs(); }
double magnitude(const Exact& x) { return x.to_float().abs(); }
Float as_float(const Float& x) { return x; }
Float as_float(const Exact& x) { return x.to_float(); }

// Partial sums carried in S; only the stopping test and the result use double.
template <class S>
Float nonterminating_sum(const SeriesSpec<S>& spec, double rel_tol) {
    if (spec.kind != SeriesKind::phi) throw Error(ErrorKind::RuleShapeMismatch, "nonterminating W is unsupported");
    const S& q = spec.base;
    if (!inside_unit_disk(q)) throw Error(ErrorKind::BaseNotInUnitDisk, "nonterminating series needs |q| < 1");
    auto v = guards(spec);
    if (!v.empty()) throw Error(ErrorKind::GuardViolated, v.front().message);
    for (const S& b : spec.denominator) {
        if (b.is_zero()) throw Error(ErrorKind::GuardViolated, "denominator entry is zero");
    }
    const int e = spec.sign_exponent();
    if (e < 0) throw Error(ErrorKind::Divergent, "numerator-heavy nonterminating series diverges");
    if (e == 0 && magnitude(spec.argument) >= 1.0) throw Error(ErrorKind::Divergent, "needs |z| < 1");
    const S one(1L);
    const S qe = pow_int(q, e);
    S sign_step = (e % 2 == 0) ? one : -one;
    S qk = one;
    S term = one;
    S sum = one;
    int quiet = 0;
    for (long k = 0; k < 200000; ++k) {
        S num = one;
        for (const S& a : spec.numerator) num *= one - a * qk;
        S den = one - qk * q;
        for (const S& b : spec.denominator) {
            S f = one - b * qk;
            if (magnitude(f) < 1e-300) throw Error(ErrorKind::GuardViolated, "denominator entry in Omega_q");
            den *= f;
        }
        term = term * num * sign_step * spec.argument / den;
        sum += term;
        sign_step *= qe;
        qk *= q;
        if (magnitude(term) <= rel_tol * std::max(1.0, magnitude(sum)) * 1e-3) {
            if (++quiet >= 4) return as_float(sum);
        } else {
            quiet = 0;
        }
    }
    throw Error(ErrorKind::Divergent, "partial sums did not settle");
}

}  // namespace

Float eval_phi_nonterminating(const SeriesSpec<Float>& spec, double rel_tol) {
    if (spec.n) return eval_phi(spec);
    return nonterminating_sum(spec, rel_tol);
}

Float eval_phi_nonterminating(const SeriesSpec<Exact>& spec, double rel_tol) {
    if (spec.n) return eval_phi(spec).to_float();
    return nonterminating_sum(spec, rel_tol);
}

template <class S>
SeriesSpec<S> expand_w_with_root(const SeriesSpec<S>& w, const S& s) {
    if (w.kind != SeriesKind::W) throw Error(ErrorKind::RuleShapeMismatch, "expand_w_with_root needs a W spec");
    SeriesSpec<S> out;
    out.kind = SeriesKind::phi;
    out.p = w.p;
    out.base = w.base;
    out.argument = w.argument;
    out.n = w.n;
    const S& q = w.base;
    const S& a = w.head;
    out.numerator = {q * s, -(q * s), a};
    out.denominator = {s, -s, pow_int(q, *w.n + 1) * a};
    for (const S& t : w.numerator) {
        out.numerator.push_back(t);
        out.denominator.push_back(q * a / t);
    }
    return out;
}

namespace {

template <class S>
std::optional<long> solve_power(const S& q, const S& target) {
    // q^l = target for integer |l| <= 256.
    if (target.is_one()) return 0;
    S up = q;
    S down = q.inv();
    for (long l = 1; l <= 256; ++l) {
        if (up == target) return l;
        if (down == target) return -l;
        up *= q;
        down /= q;
    }
    return std::nullopt;
}

template <class S>
bool pairs_to(std::vector<S> nums, std::vector<S> dens, const S& target) {
    // Every numerator/denominator pair multiplies to target; order free.
    if (nums.size() != dens.size()) return false;
    for (const S& x : nums) {
        auto it = std::find_if(dens.begin(), dens.end(), [&](const S& d) { return x * d == target; });
        if (it == dens.end()) return false;
        dens.erase(it);
    }
    return true;
}

}  // namespace

template <class S>
Classification classify(const SeriesSpec<S>& spec) {
    Classification c;
    const S& q = spec.base;
    if (spec.kind == SeriesKind::W) {
        c.well_poised = true;
        c.very_well_poised = true;
        if (spec.p == 0 && spec.n) {
            const S& a = spec.head;
            S num = pow_int(q, -*spec.n) * (-(q * q * a)) * a;
            S den = -a * pow_int(q, *spec.n + 1) * a;
            for (const S& t : spec.numerator) {
                num *= t;
                den *= q * a / t;
            }
            c.balanced = solve_power(q, den / num);
        }
        return c;
    }
    std::vector<S> nums;
    if (spec.n) nums.push_back(pow_int(q, -*spec.n));
    nums.insert(nums.end(), spec.numerator.begin(), spec.numerator.end());
    const std::vector<S>& dens = spec.denominator;
    if (spec.p != 0) return c;
    if (nums.size() == dens.size() + 1) {
        S pn(1L), pd(1L);
        for (const S& x : nums) pn *= x;
        for (const S& x : dens) pd *= x;
        if (!pn.is_zero()) c.balanced = solve_power(q, pd / pn);
        // Well-poised: some a1 with q a1 = a_i b_i for the remaining pairs.
        for (std::size_t i = 0; i < nums.size() && !c.well_poised; ++i) {
            std::vector<S> rest = nums;
            S a1 = rest[i];
            rest.erase(rest.begin() + static_cast<long>(i));
            if (!pairs_to(rest, dens, q * a1)) continue;
            c.well_poised = true;
            for (std::size_t u = 0; u < rest.size() && !c.very_well_poised; ++u) {
                for (std::size_t v = u + 1; v < rest.size(); ++v) {
                    if ((rest[u] + rest[v]).is_zero() && rest[u] * rest[v] == -(q * q * a1)) {
                        c.very_well_poised = true;
                        break;
                    }
                }
            }
        }
    }
    return c;
}

template std::vector<Violation> guards<Exact>(const SeriesSpec<Exact>&);
template std::vector<Violation> guards<Float>(const SeriesSpec<Float>&);
template Exact eval_phi<Exact>(const SeriesSpec<Exact>&);
template Float eval_phi<Float>(const SeriesSpec<Float>&);
template Exact eval_w<Exact>(const SeriesSpec<Exact>&);
template Float eval_w<Float>(const SeriesSpec<Float>&);
template SeriesSpec<Exact> expand_w_with_root<Exact>(const SeriesSpec<Exact>&, const Exact&);
template SeriesSpec<Float> expand_w_with_root<Float>(const SeriesSpec<Float>&, const Float&);
template Classification classify<Exact>(const SeriesSpec<Exact>&);
template Classification classify<Float>(const SeriesSpec<Float>&);

}  // namespace qs
