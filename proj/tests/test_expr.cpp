#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qseries/corpus.hpp"
#include "qseries/expr.hpp"

using qs::Assignment;
using qs::Error;
using qs::ErrorKind;
using qs::Exact;
using qs::Expr;

namespace {

Assignment point(std::map<std::string, Exact> v, Exact q, std::optional<Exact> z, long n) {
    Assignment a;
    a.values = std::move(v);
    a.q = q;
    a.z = z;
    a.n = n;
    return a;
}

ErrorKind parse_error_kind(const std::string& text) {
    try {
        (void)qs::parse_expr(text);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::UnknownName;  // sentinel: no error
}

}  // namespace

TEST(Expr, SinglePochFactor) {
    Expr e = qs::parse_expr("poch(a*q^n; q; n)");
    ASSERT_EQ(e.pochs.size(), 1u);
    EXPECT_FALSE(e.series.has_value());
    const qs::PochFactor& f = e.pochs[0];
    ASSERT_EQ(f.args.size(), 1u);
    EXPECT_EQ(f.base_power, 1);
    EXPECT_FALSE(f.infinite);
    EXPECT_FALSE(f.denominator);
    EXPECT_EQ(f.length, qs::Affine::n_times(1));
    EXPECT_EQ(f.args[0].powers.at("a"), qs::Affine::constant(1));
    EXPECT_EQ(f.args[0].powers.at("q"), qs::Affine::n_times(1));
}

TEST(Expr, ContinuousDualShape) {
    Expr e = qs::parse_expr(
        "q^(-binom) * (-a)^(-n) * poch(a*z;q;n) * poch(a/z;q;n) * phi[p=0](q^-n, q^(1-n)/(b1*a) , "
        "q^(1-n)/(b2*a) ; q^(1-n)*z/a , q^(1-n)/(a*z) ; q ; q^n*b1*b2*a)");
    ASSERT_TRUE(e.series.has_value());
    EXPECT_EQ(e.pochs.size(), 2u);
    EXPECT_EQ(e.series->kind, qs::SeriesKind::phi);
    EXPECT_TRUE(e.series->terminating);
    EXPECT_EQ(e.series->p, 0);
    EXPECT_EQ(e.series->numerator.size(), 2u);
    EXPECT_EQ(e.series->denominator.size(), 2u);
    EXPECT_EQ(e.prefactor.powers.at("q"), (qs::Affine{0, 0, -1}));
    EXPECT_EQ(e.prefactor.powers.at("a"), qs::Affine::n_times(-1));
    EXPECT_EQ(qs::free_params(e), (std::set<std::string>{"a", "b1", "b2"}));

    // Value against the oracle at one point.
    Exact a = Exact::ratio(1, 3), b1 = Exact::ratio(1, 5), b2 = Exact::ratio(1, 7), q = Exact::ratio(1, 2), z(2L);
    long n = 2;
    Exact qn = qs::pow_int(q, 1 - n);
    Exact want = qs::pow_int(q, -1) * qs::pow_int(-a, -n) * oracle::poch(a * z, q, n) * oracle::poch(a / z, q, n) *
                 oracle::phi_sum({qs::pow_int(q, -n), qn / (b1 * a), qn / (b2 * a)}, {qn * z / a, qn / (a * z)}, q,
                                 qs::pow_int(q, n) * b1 * b2 * a, n, 0);
    EXPECT_EQ(qs::eval_expr<Exact>(e, point({{"a", a}, {"b1", b1}, {"b2", b2}}, q, z, n)), want);
}

TEST(Expr, ParseErrors) {
    EXPECT_EQ(parse_error_kind("phi[p=0](;;q;z)"), ErrorKind::ParseError);
    EXPECT_EQ(parse_error_kind("poch(a; q"), ErrorKind::ParseError);
    EXPECT_EQ(parse_error_kind("a +* b"), ErrorKind::ParseError);
    EXPECT_EQ(parse_error_kind("poch(a; q^3; n)"), ErrorKind::ParseError);
    EXPECT_EQ(parse_error_kind("phi[p=0](q^-n; ; q; z"), ErrorKind::ParseError);
}

TEST(Expr, EmptySeriesIsOne) {
    Expr e = qs::parse_expr("phi[p=0](q^-n, a; b; q; z)");
    EXPECT_EQ(qs::eval_expr<Exact>(e, point({{"a", Exact(3L)}, {"b", Exact(5L)}}, Exact::ratio(1, 2), Exact(2L), 0)),
              Exact(1L));
}

TEST(Expr, ContinuousQHermiteValue) {
    const qs::Identity& id = qs::find_identity("cqH");
    for (const qs::Member& m : id.members) {
        Exact v = qs::eval_expr<Exact>(m.expr, point({}, Exact::ratio(1, 2), Exact(3L), 1));
        EXPECT_EQ(v, Exact::ratio(10, 3)) << m.label;
    }
    EXPECT_TRUE(qs::free_params(id.members[0].expr).empty());
}

TEST(Expr, ChainParameters) {
    const qs::Identity& id = qs::find_identity("cor4.3");
    std::set<std::string> all;
    for (const auto& m : id.members) {
        auto p = qs::free_params(m.expr);
        all.insert(p.begin(), p.end());
    }
    EXPECT_EQ(all, (std::set<std::string>{"a", "c", "d", "e"}));
}

TEST(Expr, RoundTripOverCorpus) {
    std::size_t n = 0;
    for (const qs::Identity& id : qs::registry()) {
        for (const qs::Member& m : id.members) {
            std::string text = qs::render(m.expr);
            EXPECT_EQ(qs::parse_expr(text), m.expr) << id.id << " " << m.label << ": " << text;
            ++n;
        }
        if (id.closed_form) EXPECT_EQ(qs::parse_expr(qs::render(*id.closed_form)), *id.closed_form) << id.id;
    }
    EXPECT_GT(n, 200u);
}

TEST(Expr, CanonicalKeyIgnoresListOrder) {
    Expr a = qs::parse_expr("phi[p=0](q^-n, b, c; d, e; q; q)");
    Expr b = qs::parse_expr("phi[p=0](q^-n, c, b; e, d; q; q)");
    Expr c = qs::parse_expr("phi[p=0](q^-n, c, d; b, e; q; q)");
    EXPECT_EQ(qs::canonical_key(a), qs::canonical_key(b));
    EXPECT_NE(qs::canonical_key(a), qs::canonical_key(c));
}

TEST(Expr, PlusMinusExpandsInLists) {
    Expr pm = qs::parse_expr("poch(a*z^pm; q; n)");
    Expr two = qs::parse_expr("poch(a*z, a/z; q; n)");
    Assignment pt = point({{"a", Exact::ratio(2, 3)}}, Exact::ratio(1, 3), Exact(5L), 3);
    EXPECT_EQ(qs::eval_expr<Exact>(pm, pt), qs::eval_expr<Exact>(two, pt));
}

TEST(Expr, SubstituteAppliesParameterMap) {
    Expr e = qs::parse_expr("poch(a/c; q; n)");
    std::map<std::string, qs::Monomial> map{{"a", qs::parse_expr("q^(-2*n)/a").prefactor}};
    Expr s = qs::substitute(e, map);
    Assignment pt = point({{"a", Exact(3L)}, {"c", Exact(5L)}}, Exact::ratio(1, 2), std::nullopt, 2);
    Exact a2 = qs::pow_int(Exact::ratio(1, 2), -4) / Exact(3L);
    EXPECT_EQ(qs::eval_expr<Exact>(s, pt), qs::qpoch(a2 / Exact(5L), Exact::ratio(1, 2), 2));
}

TEST(Expr, AdmissibilityNamesThePole) {
    Expr e = qs::parse_expr("1/poch(a; q; n)");
    Assignment pt = point({{"a", Exact(4L)}}, Exact::ratio(1, 2), std::nullopt, 3);  // a = q^-2
    EXPECT_TRUE(qs::check_admissible(e, pt).has_value());
    pt.n = 2;
    EXPECT_FALSE(qs::check_admissible(e, pt).has_value());
}

TEST(Expr, FloatAgreesWithExactOnTerminatingCorpus) {
    // Small-height point with |q| < 1 so double rounding stays benign.
    const qs::Identity& id = qs::find_identity("cor4.3");
    qs::SamplePlan plan;
    plan.height_bound = 4;
    qs::SampledPoint sp = qs::sample_point(id, plan, 0);
    sp.point.n = 3;
    for (const qs::Member& m : id.members) {
        Exact v = qs::eval_expr<Exact>(m.expr, sp.point);
        EXPECT_TRUE(qs::approx_eq(qs::eval_expr<qs::Float>(m.expr, sp.point), v.to_float(), 1e-6)) << m.label;
    }
}
