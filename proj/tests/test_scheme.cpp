#include <gtest/gtest.h>

#include <algorithm>

#include "oracle.hpp"
#include "qseries/corpus.hpp"
#include "qseries/scheme.hpp"

using qs::Error;
using qs::ErrorKind;
using qs::Exact;

TEST(Scheme, GraphSize) {
    const auto& g = qs::scheme_graph();
    EXPECT_EQ(g.nodes.size(), 15u);
    EXPECT_EQ(g.edges.size(), 20u);
    auto checkable = std::count_if(g.edges.begin(), g.edges.end(), [](const qs::SchemeEdge& e) { return e.family_edge.has_value(); });
    EXPECT_EQ(checkable, 18);
    EXPECT_EQ(std::count_if(g.nodes.begin(), g.nodes.end(), [](const qs::SchemeNode& n) { return n.stub; }), 1);
}

TEST(Scheme, EdgeLabels) {
    const auto& g = qs::scheme_graph();
    auto has = [&](const std::string& s, const std::string& t, const std::string& label) {
        return std::any_of(g.edges.begin(), g.edges.end(), [&](const qs::SchemeEdge& e) {
            return e.source == s && e.target == t && e.label == label;
        });
    };
    EXPECT_TRUE(has("CBqHermite", "ZnMinus", "c→∞"));
    EXPECT_TRUE(has("ASC", "YnMinus", "d→∞"));
    EXPECT_TRUE(has("CDqHahn", "ASC", "e→0"));
}

TEST(Scheme, EveryCheckableEdgeHasASeriesRuleAndBox) {
    const auto& g = qs::scheme_graph();
    for (const auto& e : g.edges) {
        if (!e.family_edge) continue;
        EXPECT_TRUE(e.rule.has_value()) << e.source << "->" << e.target;
        const auto& fe = qs::limit_edges().at(*e.family_edge);
        EXPECT_EQ(qs::family_name(fe.source), e.source);
        EXPECT_EQ(qs::family_name(fe.target), e.target);
    }
    for (const auto& n : g.nodes) {
        if (n.stub) continue;
        EXPECT_NO_THROW((void)qs::parse_expr(n.box_series)) << n.name;
    }
}

TEST(Scheme, DotOutput) {
    std::string dot = qs::scheme_dot(qs::scheme_graph());
    EXPECT_EQ(dot.rfind("digraph", 0), 0u);
    EXPECT_NE(dot.find("c→∞"), std::string::npos);
    EXPECT_EQ(std::count(dot.begin(), dot.end(), '\n') > 30, true);
}

TEST(Scheme, ParseLadder) {
    auto l = qs::parse_ladder("2^10..2^20");
    ASSERT_EQ(l.size(), 11u);
    EXPECT_EQ(l.front(), Exact(1024L));
    EXPECT_EQ(l.back(), Exact(1048576L));
    EXPECT_EQ(qs::parse_ladder("1/2,3,7").size(), 3u);
    EXPECT_THROW((void)qs::parse_ladder("3,2"), Error);
    EXPECT_THROW((void)qs::parse_ladder("2^5..2^3"), Error);
    EXPECT_THROW((void)qs::parse_ladder("x"), Error);
}

TEST(Scheme, LadderErrorsDecayMonotonically) {
    // The final-error threshold is an acceptance criterion; here only the
    // shape of the ladder is checked: nonincreasing errors at order >= 1.
    auto reps = qs::check_scheme(qs::power_ladder(10, 20), 0);
    ASSERT_EQ(reps.size(), 18u);
    for (const auto& r : reps) {
        const auto& e = qs::scheme_graph().edges.at(r.edge);
        EXPECT_TRUE(r.decreasing) << e.source << "->" << e.target;
        EXPECT_EQ(r.series_errors.size(), 11u);
        if (r.series_errors.back() > 0.0) EXPECT_GT(r.series_order, 0.9) << e.source << "->" << e.target;
        if (r.family_errors.back() > 0.0) EXPECT_GT(r.family_order, 0.9) << e.source << "->" << e.target;
    }
}

TEST(Variants, Counts) {
    auto a = qs::enumerate_variants(qs::VariantGroup::threeparam_q);
    EXPECT_EQ(a.count, 72);
    EXPECT_TRUE(a.convention_inferred);
    EXPECT_FALSE(a.breakdown.empty());
    EXPECT_EQ(qs::enumerate_variants(qs::VariantGroup::threeparam_qinv).count, 72);
    EXPECT_EQ(qs::enumerate_variants(qs::VariantGroup::twoparam_q).count, 8);
    EXPECT_EQ(qs::enumerate_variants(qs::VariantGroup::twoparam_qinv).count, 8);
}
