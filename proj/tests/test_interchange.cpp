#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "qseries/corpus.hpp"

using qs::Expr;
using qs::Identity;
using qs::Monomial;

namespace {

struct Case {
    std::string source;
    std::vector<std::string> images;  // images of a, c, d, e (as many as the source uses)
    std::string target;
    std::string target_member;
};

const std::vector<Case>& cases() {
    static const std::vector<Case> c = {
        {"cor4.5", {"q^(-2*n)/a", "q^(-n)*c/a", "q^(-n)*d/a", "q^(-n)*e/a"}, "cor4.3", "r4b"},
        // Solved from the series shapes; the displayed map for this pair does not match.
        {"cor4.5", {"q*a^2/(c*d*e)", "q*a/(c*d)", "q*a/(c*e)", "q*a/(d*e)"}, "cor4.3", "r5"},
        {"cor4.9", {"q^(-1-n)*c*d*e/a", "c", "d", "e"}, "cor4.3", "r6"},
        {"cor4.9", {"q^(1-n)*a/(c*d*e)", "q*a/(d*e)", "q*a/(e*c)", "q*a/(c*d)"}, "cor4.3", "r8"},
        {"cor4.12phi", {"q^(-2*n)/a", "q^(-n)*c/a", "q^(-n)*d/a", "q^(-n)*e/a"}, "cor4.13", "4"},
        // Exponent -1-n, as in the cor4.9 map; 1-n does not match.
        {"cor4.12phi", {"q^(-1-n)*c*d*e/a", "c", "d", "e"}, "cor4.13", "8"},
        {"cor4.14", {"q^(-2*n)/a", "q^(-n)*c/a", "q^(-n)*d/a", "q^(-n)*e/a"}, "cor4.13", "6"},
        {"cor4.14", {"q^(1-n)*a/(c*d*e)", "q*a/(c*d)", "q*a/(c*e)", "q*a/(d*e)"}, "cor4.13", "7"},
        {"cor5.8i", {"q^(-2*n)/a", "q^(-n)*c/a", "q^(-n)*d/a"}, "cor5.8", "9"},
    };
    return c;
}

std::map<std::string, Monomial> parameter_map(const Case& c) {
    static const char* names[] = {"a", "c", "d", "e"};
    std::map<std::string, Monomial> m;
    for (std::size_t i = 0; i < c.images.size(); ++i) m[names[i]] = qs::parse_expr(c.images[i]).prefactor;
    return m;
}

std::string series_key(const Expr& e) {
    Expr only;
    only.series = e.series;
    return qs::canonical_key(only);
}

const qs::Member& member(const Identity& id, const std::string& label) {
    for (const auto& m : id.members) {
        if (m.label == label) return m;
    }
    throw std::runtime_error(id.id + " has no member " + label);
}

std::string case_name(const Case& c) { return c.source + " -> " + c.target + ":" + c.target_member; }

}  // namespace

// Some member of the mapped interchange family carries the chain member's
// series up to a permutation of the symmetric parameters c, d, e.
TEST(Interchange, MappedSeriesMatchesChainMember) {
    const std::vector<std::vector<std::string>> perms = {{"c", "d", "e"}, {"c", "e", "d"}, {"d", "c", "e"},
                                                         {"d", "e", "c"}, {"e", "c", "d"}, {"e", "d", "c"}};
    for (const Case& c : cases()) {
        const Identity& src = qs::find_identity(c.source);
        const Expr& want = member(qs::find_identity(c.target), c.target_member).expr;
        ASSERT_TRUE(want.series) << case_name(c);
        std::set<std::string> targets;
        for (const auto& p : perms) {
            std::map<std::string, Monomial> rename;
            for (std::size_t i = 0; i < 3; ++i) rename[std::string(1, "cde"[i])] = Monomial::name(p[i]);
            targets.insert(series_key(qs::substitute(want, rename)));
        }
        std::string found;
        for (const auto& m : src.members) {
            Expr mapped = qs::substitute(m.expr, parameter_map(c));
            if (mapped.series && targets.count(series_key(mapped))) found = m.label;
        }
        EXPECT_FALSE(found.empty()) << case_name(c) << ": no mapped member matches " << qs::render(want);
    }
}

TEST(Interchange, MappedIdentityStillVerifies) {
    qs::SamplePlan plan;
    plan.trials = 20;
    for (const Case& c : cases()) {
        Identity mapped = qs::find_identity(c.source);
        auto map = parameter_map(c);
        for (auto& m : mapped.members) m.expr = qs::substitute(m.expr, map);
        mapped.guards.clear();  // the source's guards are stated in unmapped names
        auto rep = qs::verify(mapped, plan, qs::Mode::exact);
        EXPECT_TRUE(rep.passed()) << case_name(c) << " passed " << rep.trials_passed << "/" << rep.trials_run
                                  << (rep.errors.empty() ? "" : " " + rep.errors.front());
    }
}
