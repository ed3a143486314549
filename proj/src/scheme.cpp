#include "qseries/scheme.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace qs {

namespace {

std::optional<std::size_t> find_family_edge(FamilyId src, FamilyId dst) {
    const auto& edges = limit_edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].source == src && edges[i].target == dst) return i;
    }
    return std::nullopt;
}

double rel_err(const Float& v, const Float& target) {
    Float d = v - target;
    return std::sqrt(d.abs2()) / std::max(1.0, std::sqrt(target.abs2()));
}

Exact draw(std::mt19937_64& rng, long h) {
    std::uniform_int_distribution<long> mag(1, h);
    std::bernoulli_distribution neg(0.5);
    long p = mag(rng);
    long r = mag(rng);
    return Exact::ratio(neg(rng) ? -p : p, r);
}

}  // namespace

const SchemeGraph& scheme_graph() {
    static const SchemeGraph g = [] {
        SchemeGraph s;
        s.nodes = {
            {"AskeyWilson", "p_n(x;a,b,c,d|q)", "", true},
            {"CDqHahn", "p_n(x;a|q)", "W[p=-1](a; q^-n, c, d, e; q; q^(n+1)*a/(c*d*e))", false},
            {"CDqInvHahn", "p_n(x;a|q^-1)", "W[p=1](a; q^-n, c, d, e; q; q^(n+2)*a^2/(c*d*e))", false},
            {"ASC", "Q_n(x;a|q)", "W[p=-2](a; q^-n, c, d; q; q^n/(c*d))", false},
            {"Xn", "X_n(a|q)", "W[p=0](a; q^-n, c, d; q; q^(n+1)*a/(c*d))", false},
            {"ASCqInv", "Q_n(x;a|q^-1)", "W[p=2](a; q^-n, c, d; q; q^(n+2)*a^2/(c*d))", false},
            {"CBqHermite", "H_n(x;a|q)", "W[p=-3](a; q^-n, c; q; q^(n-1)/(a*c))", false},
            {"YnMinus", "Y_n^-(a|q)", "W[p=-1](a; q^-n, c; q; q^n/c)", false},
            {"YnPlus", "Y_n^+(a|q)", "W[p=1](a; q^-n, c; q; q^(n+1)*a/c)", false},
            {"CBqInvHermite", "H_n(x;a|q^-1)", "W[p=3](a; q^-n, c; q; q^(n+2)*a^2/c)", false},
            {"CqHermite", "H_n(x|q)", "W[p=-4](a; q^-n; q; q^(n-2)/a^2)", false},
            {"ZnMinus", "Z_n^-(q)", "W[p=-2](a; q^-n; q; q^(n-1)/a)", false},
            {"Zn", "Z_n(q)", "W[p=0](a; q^-n; q; q^n)", false},
            {"ZnPlus", "Z_n^+(q)", "W[p=2](a; q^-n; q; q^(n+1)*a)", false},
            {"CqInvHermite", "H_n(x|q^-1)", "W[p=4](a; q^-n; q; q^(n+2)*a^2)", false},
        };
        struct Raw {
            const char* src;
            const char* dst;
            const char* label;
        };
        const Raw raw[] = {
            {"AskeyWilson", "CDqHahn", "f→0"},   {"AskeyWilson", "CDqInvHahn", "f→∞"},
            {"CDqHahn", "ASC", "e→0"},           {"CDqHahn", "Xn", "e→∞"},
            {"CDqInvHahn", "Xn", "e→0"},         {"CDqInvHahn", "ASCqInv", "e→∞"},
            {"ASC", "CBqHermite", "d→0"},        {"ASC", "YnMinus", "d→∞"},
            {"Xn", "YnMinus", "d→0"},            {"Xn", "YnPlus", "d→∞"},
            {"ASCqInv", "YnPlus", "d→0"},        {"ASCqInv", "CBqInvHermite", "d→∞"},
            {"CBqHermite", "CqHermite", "c→0"},  {"CBqHermite", "ZnMinus", "c→∞"},
            {"YnMinus", "ZnMinus", "c→0"},       {"YnMinus", "Zn", "c→∞"},
            {"YnPlus", "Zn", "c→0"},             {"YnPlus", "ZnPlus", "c→∞"},
            {"CBqInvHermite", "ZnPlus", "c→0"},  {"CBqInvHermite", "CqInvHermite", "c→∞"},
        };
        for (const Raw& r : raw) {
            SchemeEdge e{r.src, r.dst, r.label, std::nullopt, std::nullopt};
            if (std::string(r.src) != "AskeyWilson") {
                bool to_zero = std::string(r.label).find("→0") != std::string::npos;
                e.rule = to_zero ? LimitRule::zero1 : LimitRule::inf1;
                e.family_edge = find_family_edge(parse_family(r.src), parse_family(r.dst));
            }
            s.edges.push_back(e);
        }
        return s;
    }();
    return g;
}

std::string scheme_dot(const SchemeGraph& g) {
    std::ostringstream os;
    os << "digraph scheme {\n  rankdir=TB;\n  node [shape=box];\n";
    for (const auto& n : g.nodes) {
        os << "  \"" << n.name << "\" [label=\"" << n.title;
        if (!n.box_series.empty()) os << "\\n" << n.box_series;
        os << "\"" << (n.stub ? ", style=dashed" : "") << "];\n";
    }
    for (const auto& e : g.edges) os << "  \"" << e.source << "\" -> \"" << e.target << "\" [label=\"" << e.label << "\"];\n";
    os << "}\n";
    return os.str();
}

std::vector<Exact> power_ladder(int lo, int hi) {
    std::vector<Exact> out;
    for (int k = lo; k <= hi; ++k) out.push_back(Exact(mpq_class(mpz_class(1) << k)));
    return out;
}

std::vector<Exact> parse_ladder(const std::string& text) {
    std::vector<Exact> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        auto exponent = [&](const std::string& part) {
            auto caret = part.find('^');
            if (part.rfind("2^", 0) != 0 || caret == std::string::npos) {
                throw Error(ErrorKind::ParseError, "ladder range must look like 2^lo..2^hi");
            }
            return std::stoi(part.substr(caret + 1));
        };
        out = power_ladder(exponent(text.substr(0, dots)), exponent(text.substr(dots + 2)));
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(Exact::parse(item));
    }
    if (out.empty()) throw Error(ErrorKind::ParseError, "empty ladder");
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (!out[i].is_real() || !(out[i].re() > out[i - 1].re())) {
            throw Error(ErrorKind::ParseError, "ladder must be strictly increasing and real");
        }
    }
    return out;
}

std::vector<EdgeReport> check_scheme(const std::vector<Exact>& ladder, std::uint64_t seed) {
    const SchemeGraph& g = scheme_graph();
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
    std::vector<EdgeReport> out;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const SchemeEdge& e = g.edges[i];
        if (!e.rule) continue;
        EdgeReport rep;
        rep.edge = i;
        rep.seed = seed;
        // Generic point: small heights, q inside the unit disk, n in 1..4.
        const SchemeNode* node = nullptr;
        for (const auto& nd : g.nodes) {
            if (nd.name == e.source) node = &nd;
        }
        for (int attempt = 0; attempt < 1000; ++attempt) {
            Assignment a;
            for (const char* nm : {"a", "c", "d", "e"}) a.values[nm] = draw(rng, 8);
            do {
                a.q = draw(rng, 8);
            } while (!inside_unit_disk(a.q));
            a.n = std::uniform_int_distribution<long>(1, 4)(rng);
            try {
                Expr box = parse_expr(node->box_series);
                if (check_admissible(box, a)) continue;
                SeriesSpec<Exact> spec = instantiate<Exact>(*box.series, a);
                rep.series_errors.clear();
                Float rhs;
                for (const Exact& lam : ladder) {
                    LimitPair<Exact> pr = limit_transition(spec, *e.rule, lam);
                    if (!guards(pr.lhs).empty() || !guards(pr.rhs).empty()) throw Error(ErrorKind::GuardViolated, "edge point");
                    rhs = eval_series(pr.rhs).to_float();
                    rep.series_errors.push_back(rel_err(eval_series(pr.lhs).to_float(), rhs));
                }
                if (e.family_edge) {
                    const LimitEdge& fe = limit_edges()[*e.family_edge];
                    FamilyPoint fp;
                    fp.q = a.q;
                    fp.n = a.n;
                    fp.z = draw(rng, 8);
                    for (std::size_t k = 0; k < param_names(fe.source).size(); ++k) fp.params.push_back(draw(rng, 8));
                    rep.family_errors = limit_edge_errors(fe, fp, ladder);
                }
                break;
            } catch (const Error&) {
                rep.series_errors.clear();
                rep.family_errors.clear();
            }
        }
        auto ok = [](const std::vector<double>& v) { return !v.empty() && v.back() < kLimitTol; };
        auto tail_decreasing = [](const std::vector<double>& v) {
            for (std::size_t k = v.size() / 2 + 1; k < v.size(); ++k) {
                if (v[k] > v[k - 1]) return false;
            }
            return true;
        };
        auto order = [&](const std::vector<double>& v) {
            if (v.size() < 2 || ladder.size() != v.size()) return 0.0;
            double e0 = v[v.size() - 2], e1 = v.back();
            if (!(e0 > 0.0) || !(e1 > 0.0)) return 0.0;
            double step = std::log(ladder.back().to_float().abs() / ladder[ladder.size() - 2].to_float().abs());
            return std::log(e0 / e1) / step;
        };
        rep.series_order = order(rep.series_errors);
        rep.family_order = order(rep.family_errors);
        rep.decreasing = tail_decreasing(rep.series_errors) && tail_decreasing(rep.family_errors);
        rep.converged = rep.decreasing && ok(rep.series_errors) && (!e.family_edge || ok(rep.family_errors));
        out.push_back(rep);
    }
    return out;
}

}  // namespace qs
