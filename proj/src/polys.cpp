#include "qseries/polys.hpp"

#include <algorithm>
#include <cmath>

namespace qs {

namespace {

struct FamilyRow {
    FamilyId id;
    const char* name;
    const char* identity;
    int arity;
};

const std::vector<FamilyRow>& rows() {
    static const std::vector<FamilyRow> r{
        {FamilyId::CDqHahn, "CDqHahn", "cdqH", 3},
        {FamilyId::CDqInvHahn, "CDqInvHahn", "cdqiH", 3},
        {FamilyId::ASC, "ASC", "ASC", 2},
        {FamilyId::ASCqInv, "ASCqInv", "qiASC", 2},
        {FamilyId::CBqHermite, "CBqHermite", "cbqH", 1},
        {FamilyId::CBqInvHermite, "CBqInvHermite", "cbqiH", 1},
        {FamilyId::CqHermite, "CqHermite", "cqH", 0},
        {FamilyId::CqInvHermite, "CqInvHermite", "cqiH", 0},
        {FamilyId::Xn, "Xn", "Xn", 2},
        {FamilyId::YnMinus, "YnMinus", "YnMinus", 1},
        {FamilyId::YnPlus, "YnPlus", "YnPlus", 1},
        {FamilyId::ZnMinus, "ZnMinus", "ZnMinus", 0},
        {FamilyId::Zn, "Zn", "Zn", 0},
        {FamilyId::ZnPlus, "ZnPlus", "ZnPlus", 0},
    };
    return r;
}

const FamilyRow& row(FamilyId f) { return rows()[static_cast<std::size_t>(f)]; }

Monomial mono(const std::string& text) {
    Expr e = parse_expr(text);
    return e.prefactor;
}

std::map<std::string, Monomial> params_map(std::initializer_list<std::pair<const char*, const char*>> kv) {
    std::map<std::string, Monomial> out;
    for (const auto& [k, v] : kv) out[k] = mono(v);
    return out;
}

}  // namespace

const std::vector<FamilyId>& all_families() {
    static const std::vector<FamilyId> fams = [] {
        std::vector<FamilyId> out;
        for (const auto& r : rows()) out.push_back(r.id);
        return out;
    }();
    return fams;
}

std::string family_name(FamilyId f) { return row(f).name; }

FamilyId parse_family(const std::string& name) {
    for (const auto& r : rows()) {
        if (name == r.name || name == r.identity) return r.id;
    }
    throw Error(ErrorKind::UnknownName, "unknown family '" + name + "'");
}

int arity(FamilyId f) { return row(f).arity; }

std::vector<std::string> param_names(FamilyId f) {
    switch (arity(f)) {
    case 3: return {"a1", "a2", "a3"};
    case 2: return {"a1", "a2"};
    case 1: return {"a"};
    default: return {};
    }
}

std::string family_identity(FamilyId f) { return row(f).identity; }

bool is_limit_function(FamilyId f) { return static_cast<int>(f) >= static_cast<int>(FamilyId::Xn); }

Assignment to_assignment(FamilyId f, const FamilyPoint& pt) {
    auto names = param_names(f);
    if (pt.params.size() != names.size()) {
        throw Error(ErrorKind::GuardViolated, family_name(f) + " takes " + std::to_string(names.size()) + " parameters, got " +
                                                  std::to_string(pt.params.size()));
    }
    Assignment a;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (pt.params[i].is_zero()) throw Error(ErrorKind::GuardViolated, "parameter " + names[i] + " is zero");
        a.values[names[i]] = pt.params[i];
    }
    if (pt.z.is_zero()) throw Error(ErrorKind::GuardViolated, "z is zero");
    a.z = pt.z;
    a.q = pt.q;
    a.n = pt.n;
    return a;
}

const std::vector<Member>& representations(FamilyId f) { return find_identity(family_identity(f)).members; }

std::size_t displayed_representations(FamilyId f) { return find_identity(family_identity(f)).displayed_members; }

template <class S>
S eval_family(FamilyId f, const FamilyPoint& pt, std::optional<std::size_t> rep) {
    const Assignment a = to_assignment(f, pt);
    const auto& reps = representations(f);
    if (rep) {
        if (*rep >= reps.size()) {
            throw Error(ErrorKind::UnknownName, family_name(f) + " has " + std::to_string(reps.size()) + " representations");
        }
        const Member& m = reps[*rep];
        if (!m.float_only) {
            if (auto why = check_admissible(m.expr, a)) throw Error(ErrorKind::GuardViolated, m.label + ": " + *why);
        }
        return eval_expr<S>(m.expr, a);
    }
    std::string reasons;
    for (const Member& m : reps) {
        if (m.float_only) continue;
        auto why = check_admissible(m.expr, a);
        if (!why) return eval_expr<S>(m.expr, a);
        reasons += "; " + m.label + ": " + *why;
    }
    throw Error(ErrorKind::NoAdmissibleRepresentation, family_name(f) + ": no representation admits the point" + reasons);
}

template Exact eval_family<Exact>(FamilyId, const FamilyPoint&, std::optional<std::size_t>);
template Float eval_family<Float>(FamilyId, const FamilyPoint&, std::optional<std::size_t>);

Exact closed_form(FamilyId f, const FamilyPoint& pt) {
    const Identity& id = find_identity(family_identity(f));
    if (!id.closed_form) throw Error(ErrorKind::UnknownName, family_name(f) + " has no closed form");
    return eval_expr<Exact>(*id.closed_form, to_assignment(f, pt));
}

std::string to_string(Direction d) { return d == Direction::to0 ? "to0" : "toInf"; }

const std::vector<LimitEdge>& limit_edges() {
    using F = FamilyId;
    using D = Direction;
    static const std::vector<LimitEdge> edges{
        {F::CDqHahn, "a3", D::to0, F::ASC, mono("1"), params_map({{"a1", "a1"}, {"a2", "a2"}}), mono("1"), "e→0"},
        {F::CDqHahn, "a3", D::toInf, F::Xn, mono("a3^(-n)"), params_map({{"a1", "a1"}, {"a2", "a2"}}), mono("1"), "e→∞"},
        {F::CDqInvHahn, "a3", D::toInf, F::Xn, mono("a3^(-n)"), params_map({{"a1", "1/a1"}, {"a2", "1/a2"}}),
         mono("q^(-3*binom)*(-a1*a2)^n"), "e→0"},
        {F::CDqInvHahn, "a3", D::to0, F::ASCqInv, mono("1"), params_map({{"a1", "a1"}, {"a2", "a2"}}), mono("1"), "e→∞"},
        {F::ASC, "a2", D::to0, F::CBqHermite, mono("1"), params_map({{"a", "a1"}}), mono("1"), "d→0"},
        {F::ASC, "a2", D::toInf, F::YnMinus, mono("a2^(-n)"), params_map({{"a", "a1"}}), mono("1"), "d→∞"},
        {F::Xn, "a2", D::to0, F::YnMinus, mono("1"), params_map({{"a", "a1"}}), mono("1"), "d→0"},
        {F::Xn, "a2", D::toInf, F::YnPlus, mono("a2^(-n)"), params_map({{"a", "a1"}}), mono("1"), "d→∞"},
        {F::ASCqInv, "a2", D::toInf, F::YnPlus, mono("a2^(-n)"), params_map({{"a", "1/a1"}}), mono("q^(-3*binom)*(-a1)^n"),
         "d→0"},
        {F::ASCqInv, "a2", D::to0, F::CBqInvHermite, mono("1"), params_map({{"a", "a1"}}), mono("1"), "d→∞"},
        {F::CBqHermite, "a", D::to0, F::CqHermite, mono("1"), {}, mono("1"), "c→0"},
        {F::CBqHermite, "a", D::toInf, F::ZnMinus, mono("a^(-n)"), {}, mono("1"), "c→∞"},
        {F::YnMinus, "a", D::to0, F::ZnMinus, mono("1"), {}, mono("1"), "c→0"},
        {F::YnMinus, "a", D::toInf, F::Zn, mono("a^(-n)"), {}, mono("1"), "c→∞"},
        {F::YnPlus, "a", D::to0, F::Zn, mono("1"), {}, mono("1"), "c→0"},
        {F::YnPlus, "a", D::toInf, F::ZnPlus, mono("a^(-n)"), {}, mono("q^(3*binom)*(-1)^n"), "c→∞"},
        {F::CBqInvHermite, "a", D::toInf, F::ZnPlus, mono("a^(-n)"), {}, mono("1"), "c→0"},
        {F::CBqInvHermite, "a", D::to0, F::CqInvHermite, mono("1"), {}, mono("1"), "c→∞"},
    };
    return edges;
}

const LimitEdge& limit_edge(FamilyId f, const std::string& param, Direction d) {
    for (const LimitEdge& e : limit_edges()) {
        if (e.source == f && e.param == param && e.direction == d) return e;
    }
    throw Error(ErrorKind::NoSuchEdge, "no limit edge " + family_name(f) + " " + param + " " + to_string(d));
}

std::vector<double> limit_edge_errors(const LimitEdge& e, const FamilyPoint& pt, const std::vector<Exact>& ladder) {
    Assignment src = to_assignment(e.source, pt);
    FamilyPoint tp;
    tp.z = pt.z;
    tp.q = pt.q;
    tp.n = pt.n;
    for (const auto& name : param_names(e.target)) tp.params.push_back(eval_monomial<Exact>(e.target_params.at(name), src));
    const Float target = (eval_monomial<Exact>(e.factor, src) * eval_family<Exact>(e.target, tp)).to_float();
    const auto names = param_names(e.source);
    const auto slot = static_cast<std::size_t>(std::find(names.begin(), names.end(), e.param) - names.begin());
    std::vector<double> out;
    for (const Exact& lam : ladder) {
        FamilyPoint sp = pt;
        sp.params[slot] = e.direction == Direction::toInf ? lam : Exact(1L) / lam;
        Assignment sa = to_assignment(e.source, sp);
        Exact v = eval_monomial<Exact>(e.rescale, sa) * eval_family<Exact>(e.source, sp);
        Float d = v.to_float() - target;
        out.push_back(std::sqrt(d.abs2()) / std::max(1.0, std::sqrt(target.abs2())));
    }
    return out;
}

}  // namespace qs
