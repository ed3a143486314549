#include <gtest/gtest.h>

#include <algorithm>

#include "qseries/corpus.hpp"
#include "qseries/polys.hpp"
#include "qseries/report.hpp"

using qs::Error;
using qs::ErrorKind;
using qs::Exact;
using qs::Mode;

namespace {

qs::SamplePlan quick_plan(int trials = 10) {
    qs::SamplePlan p;
    p.trials = trials;
    return p;
}

ErrorKind load_error(const std::string& text, std::string* what = nullptr) {
    try {
        (void)qs::parse_corpus(text, "t.qid");
    } catch (const Error& e) {
        if (what) *what = e.what();
        return e.kind();
    }
    return ErrorKind::UnknownName;
}

}  // namespace

TEST(Corpus, RegistryContents) {
    const auto& reg = qs::registry();
    EXPECT_EQ(reg.size(), 42u);
    EXPECT_EQ(qs::find_identity("cor4.3").members.size(), 13u);
    EXPECT_EQ(qs::find_identity("cor4.13").members.size(), 13u);
    EXPECT_EQ(qs::find_identity("cor5.8").members.size(), 11u);
    EXPECT_EQ(qs::find_identity("cor5.14b").members.size(), 11u);
    EXPECT_EQ(qs::find_identity("cor6.6a").members.size(), 8u);
    EXPECT_EQ(qs::find_identity("cor6.11").members.size(), 8u);
    EXPECT_EQ(qs::find_identity("cor7.4a").members.size(), 4u);
    EXPECT_EQ(qs::find_identity("cor7.8").members.size(), 4u);
    EXPECT_EQ(qs::find_identity("cor5.5").members.size(), 2u);
    EXPECT_EQ(qs::find_identity("cor5.5").kind, qs::IdentityKind::interchange);
    try {
        (void)qs::find_identity("cor99.1");
        FAIL() << "no throw";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownName);
    }
}

TEST(Corpus, RepresentationCounts) {
    const std::vector<std::pair<std::string, std::size_t>> want = {
        {"cdqH", 8}, {"cdqiH", 8}, {"ASC", 7}, {"qiASC", 7}, {"cbqH", 6}, {"cbqiH", 5}, {"cqH", 2}, {"cqiH", 2}};
    for (const auto& [id, n] : want) {
        const qs::Identity& ident = qs::find_identity(id);
        EXPECT_EQ(ident.displayed_members, n) << id;
        EXPECT_GE(ident.members.size(), n) << id;
        EXPECT_FALSE(ident.family.empty()) << id;
    }
}

TEST(Corpus, KroneckerDeltaClosedForm) {
    const qs::Identity& id = qs::find_identity("cor7.3a");
    ASSERT_TRUE(id.closed_form.has_value());
    qs::Assignment a;
    a.q = Exact::ratio(1, 3);
    for (long n = 0; n <= 6; ++n) {
        a.n = n;
        EXPECT_EQ(qs::eval_expr<Exact>(*id.closed_form, a), Exact(n == 0 ? 1L : 0L));
    }
}

TEST(Corpus, LoaderReportsFileAndLine) {
    std::string what;
    EXPECT_EQ(load_error("[identity x kind=chain]\nmember: poch(a;q;n)\nbogus: 1\n", &what), ErrorKind::CorpusLoadError);
    EXPECT_NE(what.find("t.qid:3"), std::string::npos) << what;
    EXPECT_EQ(load_error("member: 1\n"), ErrorKind::CorpusLoadError);
    EXPECT_EQ(load_error("[identity x kind=weird]\nmember: 1\n"), ErrorKind::CorpusLoadError);
    EXPECT_EQ(load_error("[identity x]\nmember: poch(a;q\n"), ErrorKind::CorpusLoadError);
    // Nonterminating members must be tagged.
    EXPECT_EQ(load_error("[identity x]\nmember: poch(a;q;inf)\n"), ErrorKind::CorpusLoadError);
}

TEST(Corpus, ContinuationLinesAndComments) {
    auto ids = qs::parse_corpus(
        "# comment\n[identity x kind=summation]\nmember m1: poch(a;q;n) *\n   poch(b;q;n)\n"
        "closed: poch(b;q;n)*poch(a;q;n)  # trailing\n",
        "t.qid");
    ASSERT_EQ(ids.size(), 1u);
    EXPECT_EQ(ids[0].members.size(), 1u);
    EXPECT_EQ(ids[0].members[0].expr.pochs.size(), 2u);
    EXPECT_TRUE(qs::verify(ids[0], quick_plan(), Mode::exact).passed());
}

TEST(Corpus, SamplerIsDeterministic) {
    const qs::Identity& id = qs::find_identity("cor4.3");
    qs::SamplePlan plan;
    plan.seed = 1;
    auto a = qs::sample_point(id, plan, 0);
    auto b = qs::sample_point(id, plan, 0);
    EXPECT_EQ(a.point.values, b.point.values);
    EXPECT_EQ(a.point.q, b.point.q);
    EXPECT_EQ(a.rejections, b.rejections);
    auto c = qs::sample_point(id, plan, 1);
    EXPECT_NE(a.point.values, c.point.values);
}

TEST(Corpus, SampledPointsAreAdmissibleForEveryMember) {
    const qs::Identity& id = qs::find_identity("cor4.13");
    qs::SamplePlan plan;
    for (int t = 0; t < 10; ++t) {
        qs::Assignment a = qs::sample_point(id, plan, t).point;
        for (long n : plan.n_values) {
            a.n = n;
            for (const auto& m : id.members) EXPECT_FALSE(qs::check_admissible(m.expr, a).has_value()) << m.label;
        }
    }
}

TEST(Corpus, SolvedParameterTracksN) {
    // Watson-type balance: f is solved per n, never sampled.
    auto ids = qs::parse_corpus(
        "[identity bal kind=summation]\nlet: f = q^(1-n)*a*b*c/(d*e)\n"
        "member: poch(q^(1-n)*a*b*c, d, e, f; q; n)\nclosed: poch(d*e*f, d, e, f; q; n)\n",
        "t.qid");
    const qs::Identity& id = ids.at(0);
    qs::SamplePlan plan = quick_plan(5);
    for (int t = 0; t < plan.trials; ++t) {
        qs::Assignment a = qs::sample_point(id, plan, t).point;
        EXPECT_EQ(qs::pow_int(a.q, 1) * a.values["a"] * a.values["b"] * a.values["c"],
                  a.values["d"] * a.values["e"] * a.values["f"]);
    }
    EXPECT_TRUE(qs::verify(id, plan, Mode::exact).passed());
}

TEST(Corpus, SerialAndParallelReportsMatch) {
    for (const char* name : {"cor4.3", "cbqH", "cor7.3a"}) {
        const qs::Identity& id = qs::find_identity(name);
        qs::SamplePlan plan = quick_plan(12);
        auto a = qs::verify_serial(id, plan, Mode::exact);
        auto b = qs::verify(id, plan, Mode::exact);
        qs::ReportOptions opt;
        opt.timestamp = false;
        a.wall_time_s = b.wall_time_s = 0.0;
        EXPECT_EQ(qs::report_json({a}, opt), qs::report_json({b}, opt)) << name;
        EXPECT_TRUE(a.passed()) << name;
    }
}

TEST(Corpus, JsonReportIsDeterministic) {
    const qs::Identity& id = qs::find_identity("cor5.6");
    qs::SamplePlan plan = quick_plan(5);
    qs::ReportOptions opt;
    opt.timestamp = false;
    opt.trials = plan.trials;
    auto r1 = qs::verify(id, plan, Mode::exact);
    auto r2 = qs::verify(id, plan, Mode::exact);
    r1.wall_time_s = r2.wall_time_s = 0.0;
    std::string j = qs::report_json({r1}, opt);
    EXPECT_EQ(j, qs::report_json({r2}, opt));
    EXPECT_NE(j.find("\"schema_version\""), std::string::npos);
    EXPECT_NE(j.find("\"cor5.6\""), std::string::npos);
}

TEST(Corpus, CorruptedArgumentIsCaughtQuickly) {
    // Replace the argument q by q^2 in the second member.
    qs::Identity id = qs::find_identity("cor5.5");
    auto& s = *id.members[1].expr.series;
    s.argument = s.argument * qs::Monomial::name("q");
    auto rep = qs::verify(id, quick_plan(3), Mode::exact);
    EXPECT_FALSE(rep.passed());
    EXPECT_FALSE(rep.counterexamples.empty());
}

TEST(Corpus, SeededMutationsAreDetectedWithinFiveTrials) {
    std::vector<const qs::Identity*> pool;
    for (const auto& id : qs::registry()) pool.push_back(&id);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const qs::Identity& src = *pool[(seed * 7 + 3) % pool.size()];
        std::string what;
        qs::Identity bad = qs::mutate(src, seed, &what);
        auto rep = qs::verify(bad, quick_plan(5), Mode::exact);
        EXPECT_FALSE(rep.counterexamples.empty()) << src.id << " seed " << seed << ": " << what;
    }
}

TEST(Corpus, TimeBudgetAbortsRemainingTrials) {
    const qs::Identity& id = qs::find_identity("cor4.13");
    qs::SamplePlan plan = quick_plan(20);
    plan.time_budget_s = 1e-9;
    auto rep = qs::verify_serial(id, plan, Mode::exact);
    EXPECT_GT(rep.trials_aborted, 0);
    EXPECT_FALSE(rep.passed());
}

TEST(Corpus, SummationMembersMatchClosedForms) {
    for (const char* name : {"cor5.6", "cor6.4", "cor6.8", "cor7.3", "cor7.3a", "cor7.7"}) {
        const qs::Identity& id = qs::find_identity(name);
        ASSERT_TRUE(id.closed_form.has_value()) << name;
        EXPECT_TRUE(qs::verify(id, quick_plan(), Mode::exact).passed()) << name;
    }
}
