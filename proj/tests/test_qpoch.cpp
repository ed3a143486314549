#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "qseries/qpoch.hpp"

using qs::Error;
using qs::ErrorKind;
using qs::Exact;
using qs::Float;

TEST(QPoch, WorkedExamples) {
    Exact half = Exact::ratio(1, 2);
    EXPECT_EQ(qs::qpoch(Exact(5L), half, 0), Exact(1L));
    EXPECT_EQ(qs::qpoch(Exact(3L), half, 3), Exact::ratio(1, 4));
    EXPECT_EQ(qs::qpoch(half, half, 2), Exact::ratio(3, 8));
    EXPECT_EQ(qs::qpoch_multi<Exact>({}, half, 4), Exact(1L));
    EXPECT_EQ(qs::qpoch_multi<Exact>({Exact(2L), Exact(-2L)}, Exact::ratio(1, 3), 1), Exact(-3L));
    EXPECT_EQ(qs::qpoch_multi<Exact>({Exact(3L)}, half, 3), Exact::ratio(1, 4));
}

TEST(QPoch, MatchesDirectProduct) {
    oracle::Rng rng(21);
    for (int t = 0; t < 200; ++t) {
        Exact a = rng.gaussian(), q = rng.base();
        long n = rng.integer(0, 8);
        EXPECT_EQ(qs::qpoch(a, q, n), oracle::poch(a, q, n));
    }
}

TEST(QPoch, OmegaMembership) {
    Exact q = Exact::ratio(1, 3);
    EXPECT_TRUE(qs::in_omega(Exact(9L), q, 3));   // 9 = q^-2
    EXPECT_FALSE(qs::in_omega(Exact(9L), q, 2));
    EXPECT_FALSE(qs::in_omega(Exact(2L), q, 6));
}

TEST(QPoch, InfiniteProductExamples) {
    Float q(0.5);
    EXPECT_EQ(qs::qpoch_inf(Float(0.0), q, 1e-15).value(), std::complex<double>(1.0, 0.0));
    EXPECT_EQ(qs::qpoch_inf(Float(1.0), q, 1e-15).value(), std::complex<double>(0.0, 0.0));
    double direct = 1.0;
    for (int j = 0; j < 60; ++j) direct *= 1.0 - 0.5 * std::pow(0.5, j);
    EXPECT_TRUE(qs::approx_eq(qs::qpoch_inf(Float(0.5), q, 1e-12), Float(direct), 1e-12));
}

TEST(QPoch, GeneralLengthExamples) {
    Float q(0.5);
    EXPECT_TRUE(qs::approx_eq(qs::qpoch_general(Float(0.3), q, Float(0.0), 1e-15), Float(1.0), 1e-14));
    EXPECT_TRUE(qs::approx_eq(qs::qpoch_general(Float(3.0), q, Float(3.0), 1e-15), Float(0.25), 1e-10));
    EXPECT_TRUE(qs::approx_eq(qs::qpoch_general(Float(0.0), q, Float(1.7), 1e-15), Float(1.0), 1e-14));
}

TEST(QPoch, OutsideUnitDiskIsRejected) {
    try {
        (void)qs::qpoch_inf(Float(0.5), Float(2.0), 1e-12);
        FAIL() << "no throw";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BaseNotInUnitDisk);
    }
    EXPECT_THROW((void)qs::qpoch_general(Float(0.5), Float(-3.0), Float(1.0), 1e-12), Error);
}

TEST(QPoch, IdentityWorkedExamples) {
    qs::PochPoint p{Exact(2L), Exact(1L), Exact(3L), 2, 0};
    EXPECT_TRUE(qs::poch_identity_residual("inverse_base", p).is_zero());
    // n = 0 instance of the reversal law.
    qs::PochPoint p0{Exact::ratio(2, 7), Exact(1L), Exact::ratio(1, 5), 0, 0};
    EXPECT_TRUE(qs::poch_identity_residual("reversal", p0).is_zero());
    // square-root form with s = 2.
    qs::PochPoint ps{Exact(2L), Exact(1L), Exact::ratio(1, 3), 1, 0};
    EXPECT_TRUE(qs::poch_identity_uses_squares("upper_half"));
    EXPECT_TRUE(qs::poch_identity_residual("upper_half", ps).is_zero());
}

TEST(QPoch, IdentitySuiteHoldsAtHundredPoints) {
    ASSERT_EQ(qs::poch_identity_names().size(), 12u);
    oracle::Rng rng(2024);
    for (const std::string& name : qs::poch_identity_names()) {
        int checked = 0;
        for (int attempt = 0; checked < 100 && attempt < 10000; ++attempt) {
            qs::PochPoint p{rng.rational(), rng.rational(), rng.base(), rng.integer(0, 6), rng.integer(0, 6)};
            try {
                Exact r = qs::poch_identity_residual(name, p);
                EXPECT_TRUE(r.is_zero()) << name << " a=" << p.a.to_string() << " q=" << p.q.to_string()
                                         << " n=" << p.n << " residual " << r.to_string();
                ++checked;
            } catch (const Error& e) {
                ASSERT_EQ(e.kind(), ErrorKind::GuardViolated) << e.what();
            }
        }
        EXPECT_EQ(checked, 100) << name;
    }
}

TEST(QPoch, UnknownIdentityName) {
    try {
        (void)qs::poch_identity_residual("nope", {});
        FAIL() << "no throw";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownName);
    }
}

TEST(QPoch, SplittingLaw) {
    oracle::Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        Exact a = rng.gaussian(), q = rng.base();
        long n = rng.integer(0, 6), k = rng.integer(0, 6);
        EXPECT_EQ(qs::qpoch(a, q, n + k), qs::qpoch(a, q, k) * qs::qpoch(a * qs::pow_int(q, k), q, n));
    }
}

TEST(QPoch, ScaledRatioLadderConverges) {
    std::vector<double> ladder;
    for (int k = 10; k <= 20; ++k) ladder.push_back(std::ldexp(1.0, k));
    auto err = qs::scaled_ratio_errors(Float(2.0), Float(3.0), Float(2.0), 3, ladder);
    ASSERT_EQ(err.size(), ladder.size());
    for (std::size_t i = 1; i < err.size(); ++i) EXPECT_LE(err[i], err[i - 1]);
    EXPECT_LT(err.back(), 1e-6);
    // First-order decay: doubling lambda halves the error.
    EXPECT_NEAR(err[err.size() - 2] / err.back(), 2.0, 0.05);
}
