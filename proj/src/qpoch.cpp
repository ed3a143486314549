#include "qseries/qpoch.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace qs {

Float qpoch_inf(const Float& a, const Float& q, double rel_tol) {
    if (!inside_unit_disk(q)) throw Error(ErrorKind::BaseNotInUnitDisk, "(a;q)_inf needs |q| < 1");
    const double qa = q.abs();
    Float result(1.0);
    Float aq = a;
    for (int j = 0; j < 100000; ++j) {
        if (aq.abs() / (1.0 - qa) < rel_tol) return result;
        result *= Float(1.0) - aq;
        aq *= q;
    }
    throw Error(ErrorKind::Divergent, "(a;q)_inf truncation did not converge");
}

Float qpoch_general(const Float& a, const Float& q, const Float& b, double rel_tol) {
    if (!inside_unit_disk(q)) throw Error(ErrorKind::BaseNotInUnitDisk, "(a;q)_b needs |q| < 1");
    if (b.is_zero() || a.is_zero()) return Float(1.0);
    Float shifted = a * Float(std::exp(b.value() * std::log(q.value())));
    Float num = qpoch_inf(a, q, rel_tol);
    Float den = qpoch_inf(shifted, q, rel_tol);
    if (den.abs() <= rel_tol) {
        throw Error(ErrorKind::PoleAtOmegaPoint, "a q^b lies in Omega_q");
    }
    return num / den;
}

namespace {

long binom2(long n) { return n * (n - 1) / 2; }

using Residual = std::function<Exact(const PochPoint&)>;

const std::map<std::string, std::pair<bool, Residual>>& table() {
    static const std::map<std::string, std::pair<bool, Residual>> t = {
        {"inverse_base", {false, [](const PochPoint& p) {
             return qpoch(p.a, p.q.inv(), p.n) -
                    qpoch(p.a.inv(), p.q, p.n) * pow_int(-p.a, p.n) * pow_int(p.q, -binom2(p.n));
         }}},
        {"split", {false, [](const PochPoint& p) {
             Exact lhs = qpoch(p.a, p.q, p.n + p.k);
             Exact r1 = lhs - qpoch(p.a, p.q, p.k) * qpoch(p.a * pow_int(p.q, p.k), p.q, p.n);
             if (!r1.is_zero()) return r1;
             return lhs - qpoch(p.a, p.q, p.n) * qpoch(p.a * pow_int(p.q, p.n), p.q, p.k);
         }}},
        {"reversal", {false, [](const PochPoint& p) {
             return qpoch(p.a, p.q, p.n) - qpoch(pow_int(p.q, 1 - p.n) / p.a, p.q, p.n) *
                                               pow_int(-p.a, p.n) * pow_int(p.q, binom2(p.n));
         }}},
        {"shifted_reversal", {false, [](const PochPoint& p) {
             Exact den = qpoch(pow_int(p.q, 1 - p.k) / p.a, p.q, p.n);
             if (den.is_zero()) throw Error(ErrorKind::GuardViolated, "(q^{1-k}/a;q)_n vanishes");
             return qpoch(p.a * pow_int(p.q, -p.n), p.q, p.k) -
                    pow_int(p.q, -p.n * p.k) * qpoch(p.q / p.a, p.q, p.n) / den * qpoch(p.a, p.q, p.k);
         }}},
        {"doubling", {false, [](const PochPoint& p) {
             Exact q2 = p.q * p.q;
             return qpoch(p.a, p.q, 2 * p.n) - qpoch(p.a, q2, p.n) * qpoch(p.a * p.q, q2, p.n);
         }}},
        {"doubling_roots", {true, [](const PochPoint& p) {
             const Exact& s = p.a;
             const Exact& t = p.q;
             Exact q = t * t;
             Exact st = s * t;
             return qpoch(s * s, q, 2 * p.n) - qpoch_multi<Exact>({s, -s, st, -st}, q, p.n);
         }}},
        {"power_swap", {false, [](const PochPoint& p) {
             const Exact& x = p.b;
             return pow_int(p.a, p.n) * qpoch(x / p.a, p.q, p.n) -
                    pow_int(p.q, binom2(p.n)) * pow_int(-x, p.n) * qpoch(p.a / x, p.q.inv(), p.n);
         }}},
        {"upper_half", {true, [](const PochPoint& p) {
             const Exact& s = p.a;
             const Exact& t = p.q;
             Exact q = t * t;
             Exact a = s * s;
             if (in_omega(a, q, p.n)) throw Error(ErrorKind::GuardViolated, "a in Omega_q^n");
             Exact st = s * t;
             return qpoch(a * pow_int(q, p.n), q, p.n) -
                    qpoch_multi<Exact>({s, -s, st, -st}, q, p.n) / qpoch(a, q, p.n);
         }}},
        {"negative_shift", {false, [](const PochPoint& p) {
             return qpoch(pow_int(p.q, -p.n) * p.a, p.q, p.n) -
                    pow_int(p.q, -binom2(p.n)) * pow_int(-p.a / p.q, p.n) * qpoch(p.q / p.a, p.q, p.n);
         }}},
        {"negative_shift_double", {false, [](const PochPoint& p) {
             return qpoch(pow_int(p.q, -p.n) * p.a, p.q, 2 * p.n) -
                    pow_int(p.q, -binom2(p.n)) * pow_int(-p.a / p.q, p.n) * qpoch(p.a, p.q, p.n) *
                        qpoch(p.q / p.a, p.q, p.n);
         }}},
        {"ratio_shift", {false, [](const PochPoint& p) {
             Exact d1 = qpoch(pow_int(p.q, -p.n) * p.b, p.q, p.n);
             Exact d2 = qpoch(p.q / p.b, p.q, p.n);
             if (d1.is_zero() || d2.is_zero()) throw Error(ErrorKind::GuardViolated, "b-side Pochhammer vanishes");
             return qpoch(pow_int(p.q, -p.n) * p.a, p.q, p.n) / d1 -
                    pow_int(p.a / p.b, p.n) * qpoch(p.q / p.a, p.q, p.n) / d2;
         }}},
        {"ratio_shift_double", {false, [](const PochPoint& p) {
             Exact d1 = qpoch(pow_int(p.q, -2 * p.n) * p.b, p.q, p.n);
             Exact d2 = qpoch(p.q / p.a, p.q, p.n) * qpoch(p.q / p.b, p.q, 2 * p.n);
             if (d1.is_zero() || d2.is_zero()) throw Error(ErrorKind::GuardViolated, "denominator Pochhammer vanishes");
             return qpoch(pow_int(p.q, -2 * p.n) * p.a, p.q, p.n) / d1 -
                    pow_int(p.a / p.b, p.n) * qpoch(p.q / p.b, p.q, p.n) * qpoch(p.q / p.a, p.q, 2 * p.n) / d2;
         }}},
    };
    return t;
}

}  // namespace

const std::vector<std::string>& poch_identity_names() {
    static const std::vector<std::string> names = {
        "inverse_base", "split",      "reversal",       "shifted_reversal",      "doubling",    "doubling_roots",
        "power_swap",   "upper_half", "negative_shift", "negative_shift_double", "ratio_shift", "ratio_shift_double"};
    return names;
}

bool poch_identity_uses_squares(const std::string& name) {
    auto it = table().find(name);
    if (it == table().end()) throw Error(ErrorKind::UnknownName, "no Pochhammer identity '" + name + "'");
    return it->second.first;
}

Exact poch_identity_residual(const std::string& name, const PochPoint& pt) {
    auto it = table().find(name);
    if (it == table().end()) throw Error(ErrorKind::UnknownName, "no Pochhammer identity '" + name + "'");
    if (pt.a.is_zero() || pt.q.is_zero() || pt.b.is_zero()) {
        throw Error(ErrorKind::GuardViolated, "parameters must be nonzero");
    }
    try {
        return it->second.second(pt);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DivisionByZero) throw Error(ErrorKind::GuardViolated, e.what());
        throw;
    }
}

std::vector<double> scaled_ratio_errors(const Float& a, const Float& b, const Float& q, long n,
                                    const std::vector<double>& ladder) {
    std::vector<double> errs;
    errs.reserve(ladder.size());
    Float limit = pow_int(a / b, n);
    for (double lam : ladder) {
        Float ratio = qpoch(a * Float(lam), q, n) / qpoch(b * Float(lam), q, n);
        errs.push_back((ratio - limit).abs());
    }
    return errs;
}

}  // namespace qs
