#include "qseries/expr.hpp"

#include <algorithm>
#include <sstream>

namespace qs {

Affine Affine::times(const Affine& o) const {
    // (c0 + c1 n + c2 B)(d0 + d1 n + d2 B), B = binom(n,2), n^2 = 2B + n.
    if ((c1 != 0 && o.c2 != 0) || (c2 != 0 && o.c1 != 0) || (c2 != 0 && o.c2 != 0)) {
        throw Error(ErrorKind::ParseError, "exponent product leaves the affine space in n and binom(n,2)");
    }
    Affine r;
    r.c0 = c0 * o.c0;
    r.c1 = c0 * o.c1 + c1 * o.c0 + c1 * o.c1;
    r.c2 = c0 * o.c2 + c2 * o.c0 + 2 * c1 * o.c1;
    return r;
}

Affine Affine::mod2() const {
    auto m = [](long v) { return ((v % 2) + 2) % 2; };
    return {m(c0), m(c1), m(c2)};
}

Monomial Monomial::scalar(const Exact& c) {
    Monomial m;
    m.coeff = c;
    m.normalize();
    return m;
}

Monomial Monomial::name(const std::string& nm, Affine power) {
    Monomial m;
    if (!power.is_zero()) m.powers[nm] = power;
    return m;
}

void Monomial::normalize() {
    if (coeff.is_real() && sgn(coeff.re()) < 0) {
        coeff = -coeff;
        sign.c0 += 1;
    }
    sign = sign.mod2();
    for (auto it = powers.begin(); it != powers.end();) {
        it = it->second.is_zero() ? powers.erase(it) : std::next(it);
    }
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r = *this;
    r.coeff *= o.coeff;
    r.sign = r.sign + o.sign;
    for (const auto& [k, v] : o.powers) r.powers[k] = r.powers[k] + v;
    r.normalize();
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r = *this;
    r.coeff /= o.coeff;
    r.sign = r.sign + o.sign;  // (-1)^{-s} = (-1)^s
    for (const auto& [k, v] : o.powers) r.powers[k] = r.powers[k] - v;
    r.normalize();
    return r;
}

Monomial Monomial::pow(const Affine& e) const {
    Monomial r;
    if (e.is_constant()) {
        r.coeff = pow_int(coeff, e.c0);
    } else if (!coeff.is_one()) {
        throw Error(ErrorKind::ParseError, "numeric coefficient raised to an n-dependent power");
    }
    r.sign = sign.times(e);
    for (const auto& [k, v] : powers) r.powers[k] = v.times(e);
    r.normalize();
    return r;
}

bool Monomial::is_one() const { return coeff.is_one() && sign.is_zero() && powers.empty(); }

namespace {

std::string render_affine(const Affine& a) {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](long c, const char* sym) {
        if (c == 0) return;
        if (c < 0) {
            os << "-";
        } else if (!first) {
            os << "+";
        }
        long m = c < 0 ? -c : c;
        if (*sym == '\0') {
            os << m;
        } else {
            if (m != 1) os << m << "*";
            os << sym;
        }
        first = false;
    };
    emit(a.c0, "");
    emit(a.c1, "n");
    emit(a.c2, "binom");
    if (first) os << "0";
    return os.str();
}

std::string render_base(int bp) {
    if (bp == 1) return "q";
    if (bp == -1) return "q^-1";
    return "q^" + std::to_string(bp);
}

std::string render_list(const std::vector<Monomial>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += render(xs[i]);
    }
    return out;
}

std::string render_poch(const PochFactor& f) {
    std::string out = "poch(" + render_list(f.args) + "; " + render_base(f.base_power) + "; ";
    out += f.infinite ? std::string("inf") : render_affine(f.length);
    return out + ")";
}

std::string render_series(const SeriesTemplate& s) {
    std::string out = s.kind == SeriesKind::W ? "W" : "phi";
    out += "[p=" + std::to_string(s.p);
    if (!s.terminating) out += ",nonterminating";
    out += "](";
    std::string marker = s.base_power == 1 ? "q^-n" : "q^(" + render_affine(Affine::n_times(-s.base_power)) + ")";
    auto with_marker = [&](const std::vector<Monomial>& xs) {
        std::string body = render_list(xs);
        if (!s.terminating) return body;
        return body.empty() ? marker : marker + ", " + body;
    };
    if (s.kind == SeriesKind::W) {
        out += render(s.head) + "; " + with_marker(s.numerator);
    } else {
        out += with_marker(s.numerator) + "; " + render_list(s.denominator);
    }
    out += "; " + render_base(s.base_power) + "; " + render(s.argument) + ")";
    return out;
}

}  // namespace

std::string render(const Monomial& m) {
    std::vector<std::string> parts;
    if (!m.sign.is_zero()) parts.push_back("(-1)^(" + render_affine(m.sign) + ")");
    if (!m.coeff.is_one()) {
        if (m.coeff.is_real()) {
            parts.push_back(m.coeff.re().get_str());
        } else {
            throw Error(ErrorKind::ParseError, "complex coefficients are not expressible in the DSL");
        }
    }
    for (const auto& [k, v] : m.powers) {
        if (v == Affine::constant(1)) {
            parts.push_back(k);
        } else {
            parts.push_back(k + "^(" + render_affine(v) + ")");
        }
    }
    if (parts.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "*";
        out += parts[i];
    }
    return out;
}

std::string render(const Expr& e) {
    std::string out;
    if (!e.prefactor.is_one()) out = render(e.prefactor);
    for (const PochFactor& f : e.pochs) {
        if (f.denominator) {
            out += (out.empty() ? "1" : "") + std::string(" / ") + render_poch(f);
        } else {
            out += (out.empty() ? "" : " * ") + render_poch(f);
        }
    }
    if (e.series) out += (out.empty() ? "" : " * ") + render_series(*e.series);
    return out.empty() ? "1" : out;
}

std::string canonical_key(const Expr& e) {
    auto sorted = [](std::vector<Monomial> xs) {
        std::vector<std::string> r;
        for (const auto& x : xs) r.push_back(render(x));
        std::sort(r.begin(), r.end());
        std::string out;
        for (const auto& s : r) out += s + ",";
        return out;
    };
    std::vector<std::string> pochs;
    for (const PochFactor& f : e.pochs) {
        for (const Monomial& m : f.args) {
            PochFactor single = f;
            single.args = {m};
            pochs.push_back(std::string(f.denominator ? "/" : "*") + render_poch(single));
        }
    }
    std::sort(pochs.begin(), pochs.end());
    std::string key = render(e.prefactor) + "|";
    for (const auto& s : pochs) key += s;
    key += "|";
    if (e.series) {
        const SeriesTemplate& s = *e.series;
        key += (s.kind == SeriesKind::W ? "W" : "phi") + std::to_string(s.p) + (s.terminating ? "t" : "u") +
               std::to_string(s.base_power) + "[" + render(s.head) + "]" + sorted(s.numerator) + ";" +
               sorted(s.denominator) + ";" + render(s.argument);
    }
    return key;
}

std::set<std::string> free_params(const Expr& e) {
    std::set<std::string> out;
    auto visit = [&](const Monomial& m) {
        for (const auto& [k, v] : m.powers) {
            if (k != "q" && k != "z") out.insert(k);
        }
    };
    visit(e.prefactor);
    for (const auto& f : e.pochs) {
        for (const auto& m : f.args) visit(m);
    }
    if (e.series) {
        visit(e.series->head);
        visit(e.series->argument);
        for (const auto& m : e.series->numerator) visit(m);
        for (const auto& m : e.series->denominator) visit(m);
    }
    return out;
}

bool needs_float(const Expr& e) {
    for (const auto& f : e.pochs) {
        if (f.infinite) return true;
    }
    return e.series && !e.series->terminating;
}

Monomial substitute(const Monomial& m, const std::map<std::string, Monomial>& map) {
    Monomial r = Monomial::scalar(m.coeff);
    r.sign = m.sign;
    for (const auto& [k, v] : m.powers) {
        auto it = map.find(k);
        r = r * (it == map.end() ? Monomial::name(k, v) : it->second.pow(v));
    }
    r.normalize();
    return r;
}

Expr substitute(const Expr& e, const std::map<std::string, Monomial>& map) {
    Expr r = e;
    r.prefactor = substitute(e.prefactor, map);
    for (auto& f : r.pochs) {
        for (auto& m : f.args) m = substitute(m, map);
    }
    if (r.series) {
        auto& s = *r.series;
        s.head = substitute(s.head, map);
        s.argument = substitute(s.argument, map);
        for (auto& m : s.numerator) m = substitute(m, map);
        for (auto& m : s.denominator) m = substitute(m, map);
    }
    return r;
}

namespace {

const Exact& lookup(const std::string& nm, const Assignment& a) {
    if (nm == "q") return a.q;
    if (nm == "z") {
        if (!a.z) throw Error(ErrorKind::UnknownName, "z is not assigned");
        return *a.z;
    }
    auto it = a.values.find(nm);
    if (it == a.values.end()) throw Error(ErrorKind::UnknownName, "parameter '" + nm + "' is not assigned");
    return it->second;
}

}  // namespace

template <class S>
S eval_monomial(const Monomial& m, const Assignment& a) {
    S v = from_exact<S>(m.coeff);
    for (const auto& [k, p] : m.powers) v *= pow_int(from_exact<S>(lookup(k, a)), p.at(a.n));
    if (m.sign.at(a.n) % 2 != 0) v = -v;
    return v;
}

template <class S>
SeriesSpec<S> instantiate(const SeriesTemplate& t, const Assignment& a) {
    SeriesSpec<S> s;
    s.kind = t.kind;
    s.p = t.p;
    s.base = pow_int(from_exact<S>(a.q), t.base_power);
    s.argument = eval_monomial<S>(t.argument, a);
    if (t.terminating) s.n = a.n;
    if (t.kind == SeriesKind::W) s.head = eval_monomial<S>(t.head, a);
    for (const auto& m : t.numerator) s.numerator.push_back(eval_monomial<S>(m, a));
    for (const auto& m : t.denominator) s.denominator.push_back(eval_monomial<S>(m, a));
    return s;
}

template <class S>
S eval_expr(const Expr& e, const Assignment& a) {
    S value = eval_monomial<S>(e.prefactor, a);
    const S q = from_exact<S>(a.q);
    S num(1L), den(1L);
    for (const PochFactor& f : e.pochs) {
        S base = pow_int(q, f.base_power);
        for (const Monomial& m : f.args) {
            S arg = eval_monomial<S>(m, a);
            S pv;
            if (f.infinite) {
                if constexpr (std::is_same_v<S, Exact>) {
                    throw Error(ErrorKind::UnsupportedExact, "infinite Pochhammer product in exact mode");
                } else {
                    pv = qpoch_inf(arg, base, 1e-17);
                }
            } else {
                pv = qpoch(arg, base, f.length.at(a.n));
            }
            if (f.denominator) {
                if (pv.is_zero()) throw Error(ErrorKind::PrefactorPole, "denominator Pochhammer " + render(m) + " vanishes");
                den *= pv;
            } else {
                num *= pv;
            }
        }
    }
    value *= num;
    value /= den;
    if (e.series) {
        SeriesSpec<S> spec = instantiate<S>(*e.series, a);
        if (!e.series->terminating) {
            if constexpr (std::is_same_v<S, Exact>) {
                throw Error(ErrorKind::UnsupportedExact, "nonterminating series in exact mode");
            } else {
                value *= eval_phi_nonterminating(spec, 1e-17);
            }
        } else {
            value *= eval_series(spec);
        }
    }
    return value;
}

Float eval_expr_mixed(const Expr& e, const Assignment& a) {
    Exact value = eval_monomial<Exact>(e.prefactor, a);
    Float approx(1.0);
    for (const PochFactor& f : e.pochs) {
        Exact base = pow_int(a.q, f.base_power);
        for (const Monomial& m : f.args) {
            Exact arg = eval_monomial<Exact>(m, a);
            if (f.infinite) {
                Float pv = qpoch_inf(arg.to_float(), base.to_float(), 1e-17);
                if (f.denominator) {
                    approx /= pv;
                } else {
                    approx *= pv;
                }
                continue;
            }
            Exact pv = qpoch(arg, base, f.length.at(a.n));
            if (f.denominator) {
                if (pv.is_zero()) throw Error(ErrorKind::PrefactorPole, "denominator Pochhammer " + render(m) + " vanishes");
                value /= pv;
            } else {
                value *= pv;
            }
        }
    }
    if (e.series) {
        SeriesSpec<Exact> spec = instantiate<Exact>(*e.series, a);
        if (e.series->terminating) {
            value *= eval_series(spec);
        } else {
            approx *= eval_phi_nonterminating(spec, 1e-17);
        }
    }
    return value.to_float() * approx;
}

std::optional<std::string> check_admissible(const Expr& e, const Assignment& a) {
    const Exact& q = a.q;
    for (const PochFactor& f : e.pochs) {
        if (!f.denominator) continue;
        Exact base = pow_int(q, f.base_power);
        for (const Monomial& m : f.args) {
            Exact arg = eval_monomial<Exact>(m, a);
            long len = f.infinite ? 256 : f.length.at(a.n);
            if (in_omega(arg, base, len)) return "denominator Pochhammer (" + render(m) + ") vanishes";
        }
    }
    if (!e.series) return std::nullopt;
    if (!e.series->terminating) {
        if (!inside_unit_disk(q)) return std::string("nonterminating series needs |q| < 1");
        SeriesSpec<Exact> spec = instantiate<Exact>(*e.series, a);
        for (const Exact& b : spec.denominator) {
            if (b.is_zero() || in_omega(b, spec.base, 256)) return std::string("denominator entry in Omega_q");
        }
        return std::nullopt;
    }
    SeriesSpec<Exact> spec = instantiate<Exact>(*e.series, a);
    auto v = guards(spec);
    if (!v.empty()) return v.front().message;
    return std::nullopt;
}

template Exact eval_monomial<Exact>(const Monomial&, const Assignment&);
template Float eval_monomial<Float>(const Monomial&, const Assignment&);
template SeriesSpec<Exact> instantiate<Exact>(const SeriesTemplate&, const Assignment&);
template SeriesSpec<Float> instantiate<Float>(const SeriesTemplate&, const Assignment&);
template Exact eval_expr<Exact>(const Expr&, const Assignment&);
template Float eval_expr<Float>(const Expr&, const Assignment&);

}  // namespace qs
