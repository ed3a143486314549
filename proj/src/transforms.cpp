#include "qseries/transforms.hpp"

#include <cmath>

namespace qs {

namespace {

template <class S>
S product(const std::vector<S>& v) {
    S r(1L);
    for (const S& x : v) r *= x;
    return r;
}

template <class S>
void require_guards(const SeriesSpec<S>& spec, const char* what) {
    auto v = guards(spec);
    if (!v.empty()) throw Error(ErrorKind::GuardViolated, std::string(what) + ": " + v.front().message);
}

template <class S>
long require_terminating(const SeriesSpec<S>& spec, SeriesKind kind, const char* what) {
    if (spec.kind != kind) throw Error(ErrorKind::RuleShapeMismatch, std::string(what) + ": wrong series kind");
    if (!spec.n) throw Error(ErrorKind::NotTerminating, std::string(what) + ": series must terminate");
    return *spec.n;
}

bool balance_holds(const Exact& lhs, const Exact& rhs) { return lhs == rhs; }
bool balance_holds(const Float& lhs, const Float& rhs) { return approx_eq(lhs, rhs, 1e-9); }

}  // namespace

template <class S>
TransformResult<S> invert(const SeriesSpec<S>& spec) {
    long n = require_terminating(spec, SeriesKind::phi, "invert");
    for (const S& a : spec.numerator) {
        if (a.is_zero()) throw Error(ErrorKind::ZeroParameter, "invert: zero numerator parameter; use p instead");
    }
    require_guards(spec, "invert");
    const S& q = spec.base;
    const long r = static_cast<long>(spec.numerator.size());
    const long s = static_cast<long>(spec.denominator.size());
    const int p = spec.p;
    const S shift = pow_int(q, 1 - n);

    TransformResult<S> out;
    out.prefactor = qpoch_multi(spec.numerator, q, n) / qpoch_multi(spec.denominator, q, n) *
                    pow_int(spec.argument / q, n) * sign_power(q, n, static_cast<int>(s - r + p - 1));
    SeriesSpec<S>& t = out.target;
    t.kind = SeriesKind::phi;
    t.base = q;
    t.n = n;
    t.p = static_cast<int>(s - r + p);
    for (const S& b : spec.denominator) t.numerator.push_back(shift / b);
    for (const S& a : spec.numerator) t.denominator.push_back(shift / a);
    t.argument = product(spec.denominator) / product(spec.numerator) * pow_int(q, (1 - p) * n + p + 1) / spec.argument;
    require_guards(t, "invert target");
    return out;
}

template <class S>
TransformResult<S> invert_w(const SeriesSpec<S>& spec) {
    long n = require_terminating(spec, SeriesKind::W, "invert_w");
    require_guards(spec, "invert_w");
    const S& q = spec.base;
    const S& a = spec.head;
    const int p = spec.p;
    const long m = static_cast<long>(spec.numerator.size());
    const S one(1L);

    TransformResult<S> out;
    S pre = pow_int(spec.argument / q, n) * sign_power(q, n, p - 1);
    pre *= (one - a * pow_int(q, 2 * n)) / (one - a);
    pre *= qpoch(a, q, n) / qpoch(pow_int(q, n + 1) * a, q, n);
    S tail_prod(1L);
    for (const S& ak : spec.numerator) {
        pre *= qpoch(ak, q, n) / qpoch(q * a / ak, q, n);
        tail_prod *= ak;
    }
    out.prefactor = pre;
    SeriesSpec<S>& t = out.target;
    t.kind = SeriesKind::W;
    t.base = q;
    t.n = n;
    t.p = p;
    t.head = pow_int(q, -2 * n) / a;
    for (const S& ak : spec.numerator) t.numerator.push_back(pow_int(q, -n) * ak / a);
    t.argument = pow_int(q, (2 - p) * n + m + p) * pow_int(a, m) / (tail_prod * tail_prod * spec.argument);
    require_guards(t, "invert_w target");
    return out;
}

template <class S>
TransformResult<S> watson(const SeriesSpec<S>& spec) {
    long n = require_terminating(spec, SeriesKind::phi, "watson");
    if (spec.numerator.size() != 3 || spec.denominator.size() != 3 || spec.p != 0) {
        throw Error(ErrorKind::RuleShapeMismatch, "watson: expects a terminating 4phi3");
    }
    const S& q = spec.base;
    if (!balance_holds(spec.argument, q)) throw Error(ErrorKind::RuleShapeMismatch, "watson: argument must be q");
    const S &a = spec.numerator[0], &b = spec.numerator[1], &c = spec.numerator[2];
    const S &d = spec.denominator[0], &e = spec.denominator[1], &f = spec.denominator[2];
    if (!balance_holds(pow_int(q, 1 - n) * a * b * c, d * e * f)) {
        throw Error(ErrorKind::NotBalanced, "watson: q^{1-n}abc != def");
    }
    require_guards(spec, "watson");
    TransformResult<S> out;
    const S de = d * e;
    out.prefactor = qpoch(de / (a * b), q, n) * qpoch(de / (a * c), q, n) / (qpoch(de / a, q, n) * qpoch(de / (a * b * c), q, n));
    SeriesSpec<S>& t = out.target;
    t.kind = SeriesKind::W;
    t.base = q;
    t.n = n;
    t.p = 0;
    t.head = de / (q * a);
    t.numerator = {d / a, e / a, b, c};
    t.argument = q * a / f;
    require_guards(t, "watson target");
    return out;
}

template <class S>
TransformResult<S> q_inverse(const SeriesSpec<S>& spec) {
    long n = require_terminating(spec, SeriesKind::phi, "q_inverse");
    if (spec.numerator.size() != spec.denominator.size() || spec.p != 0) {
        throw Error(ErrorKind::RuleShapeMismatch, "q_inverse: expects a terminating r+1 phi r");
    }
    for (const S& a : spec.numerator) {
        if (a.is_zero()) throw Error(ErrorKind::ZeroParameter, "q_inverse: zero numerator parameter");
    }
    require_guards(spec, "q_inverse");
    const S& q = spec.base;
    TransformResult<S> out;
    SeriesSpec<S>& t = out.target;
    t.kind = SeriesKind::phi;
    t.base = S(1L) / q;
    t.n = n;
    t.p = 0;
    for (const S& a : spec.numerator) t.numerator.push_back(S(1L) / a);
    for (const S& b : spec.denominator) t.denominator.push_back(S(1L) / b);
    t.argument = product(spec.numerator) / product(spec.denominator) * spec.argument / pow_int(q, n + 1);
    require_guards(t, "q_inverse target");
    return out;
}

std::string to_string(LimitRule r) {
    switch (r) {
    case LimitRule::inf1: return "inf1";
    case LimitRule::inf3: return "inf3";
    case LimitRule::zero1: return "zero1";
    case LimitRule::zero3: return "zero3";
    }
    return "?";
}

LimitRule parse_limit_rule(const std::string& s) {
    for (LimitRule r : {LimitRule::inf1, LimitRule::inf3, LimitRule::zero1, LimitRule::zero3}) {
        if (to_string(r) == s) return r;
    }
    throw Error(ErrorKind::UnknownName, "unknown limit rule '" + s + "'");
}

template <class S>
LimitPair<S> limit_transition(const SeriesSpec<S>& spec, LimitRule rule, const S& lambda) {
    if (spec.kind != SeriesKind::W || spec.numerator.empty()) {
        throw Error(ErrorKind::RuleShapeMismatch, "limit_transition: needs a W series with a tail parameter");
    }
    const S last = spec.numerator.back();
    const S& z = spec.argument;
    const S eps = S(1L) / lambda;
    LimitPair<S> out{spec, spec};
    out.rhs.numerator.pop_back();
    switch (rule) {
    case LimitRule::inf1:
        out.lhs.numerator.back() = lambda * last;
        out.lhs.argument = z / lambda;
        out.rhs.p = spec.p + 1;
        out.rhs.argument = last * z;
        break;
    case LimitRule::inf3:
        out.lhs.numerator.back() = last / lambda;
        out.lhs.argument = lambda * z;
        out.rhs.p = spec.p - 1;
        out.rhs.argument = last * z / (spec.base * spec.head);
        break;
    case LimitRule::zero1:
        out.lhs.numerator.back() = eps * last;
        out.lhs.argument = z / eps;
        out.rhs.p = spec.p - 1;
        out.rhs.argument = last * z / (spec.base * spec.head);
        break;
    case LimitRule::zero3:
        out.lhs.numerator.back() = last / eps;
        out.lhs.argument = eps * z;
        out.rhs.p = spec.p + 1;
        out.rhs.argument = last * z;
        break;
    }
    return out;
}

#define QS_INSTANTIATE(S)                                                                  \
    template TransformResult<S> invert(const SeriesSpec<S>&);                              \
    template TransformResult<S> invert_w(const SeriesSpec<S>&);                            \
    template TransformResult<S> watson(const SeriesSpec<S>&);                              \
    template TransformResult<S> q_inverse(const SeriesSpec<S>&);                           \
    template LimitPair<S> limit_transition(const SeriesSpec<S>&, LimitRule, const S&);

QS_INSTANTIATE(Exact)
QS_INSTANTIATE(Float)

#undef QS_INSTANTIATE

}  // namespace qs
