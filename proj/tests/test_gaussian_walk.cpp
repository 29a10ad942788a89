#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "pollaczek/gaussian_walk.hpp"
#include "pollaczek/zeta.hpp"

using namespace pollaczek;
using testutil::close_rel;

TEST_CASE("riemann zeta reference values") {
    CHECK(std::abs(riemann_zeta(-1.0) + 1.0 / 12.0) < 1e-14);
    CHECK(std::abs(riemann_zeta(-3.0) - 1.0 / 120.0) < 1e-14);
    CHECK(std::abs(riemann_zeta(0.0) + 0.5) < 1e-15);
    CHECK(std::abs(riemann_zeta(2.0) - M_PI * M_PI / 6.0) < 1e-14);
    CHECK(std::abs(riemann_zeta(0.5) + 1.4603545088095868) < 1e-12);
    CHECK(std::abs(riemann_zeta(-0.5) + 0.2078862249773546) < 1e-12);
    CHECK(riemann_zeta(-2.0) == 0.0);
    CHECK(riemann_zeta(-10.0) == 0.0);
    CHECK_THROWS_AS((void)riemann_zeta(1.0), Error);

    int sign = 0;
    const double lz = log_abs_riemann_zeta(-41.5, sign);
    // consistency with the direct evaluation where it still fits in a double
    CHECK(close_rel(sign * std::exp(lz), riemann_zeta(-41.5), 1e-11));
}

TEST_CASE("gamma at half-integers") {
    CHECK(close_rel(gamma_of_half(1), std::sqrt(M_PI), 1e-15));
    CHECK(gamma_of_half(2) == 1.0);
    CHECK(gamma_of_half(4) == 1.0);
    CHECK(gamma_of_half(6) == 2.0);
    CHECK(close_rel(gamma_of_half(7), 15.0 * std::sqrt(M_PI) / 8.0, 1e-15));
    CHECK(close_rel(gamma_of_half(13), std::tgamma(6.5), 1e-14));
}

TEST_CASE("dual-method cumulants of the gaussian-walk maximum") {
    for (double beta : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        CAPTURE(beta);
        const CumulantVector ci = mgw_cumulants_integral(beta, 5);
        const CumulantVector cz = mgw_cumulants_zeta(beta, 5);
        for (int l = 1; l <= 5; ++l) {
            CAPTURE(l);
            CHECK(std::abs(ci.c(l) - cz.c(l)) < 1e-8);
        }
        CHECK(ci.c(1) > 0.0);
        CHECK(ci.c(2) > 0.0);
        // truncation bookkeeping is reported
        REQUIRE(cz.errors.size() == 5);
        for (double e : cz.errors) CHECK(e < 1e-12);
    }
}

TEST_CASE("series validity boundary") {
    CHECK_THROWS_AS((void)mgw_cumulants_zeta(2.0 * std::sqrt(M_PI), 3), Error);
    CHECK_THROWS_AS((void)mgw_cumulants_zeta(-1.0, 3), Error);
    // just inside the disc still converges
    const CumulantVector c = mgw_cumulants_zeta(0.95 * 2.0 * std::sqrt(M_PI), 2);
    CHECK(std::isfinite(c.c(1)));
}

TEST_CASE("large drift sends the maximum to zero") {
    const CumulantVector c = mgw_cumulants_integral(10.0, 1);
    CHECK(c.c(1) > 0.0);
    CHECK(c.c(1) < 0.1);
}

TEST_CASE("moments: reference value, monotonicity, log-convexity") {
    // drift beta_n of the headline gaussian-regime table at n = 100
    const MomentVector m = mgw_moments(0.58713585724971784, 5);
    CHECK(std::abs(m.m(1) - 0.4015) < 5e-4);

    double prev = 1e300;
    for (double beta : {0.25, 0.5, 1.0, 2.0}) {
        const double m1 = mgw_moments(beta, 1).m(1);
        CHECK(m1 < prev);
        prev = m1;
    }

    const MomentVector mv = mgw_moments(1.0, 5);
    for (int k = 1; k <= 4; ++k)
        CHECK(mv.m(k) * mv.m(k) <= mv.m(k - 1) * mv.m(k + 1) * (1.0 + 1e-12));
}

TEST_CASE("auto method matches both endpoints") {
    const double inside = 1.0, outside = 4.0;  // 2 sqrt(pi) ~ 3.545
    CHECK(close_rel(mgw_moments(inside, 3, MgwMethod::Auto).m(3),
                    mgw_moments(inside, 3, MgwMethod::ZetaSeries).m(3), 1e-12));
    CHECK(close_rel(mgw_moments(outside, 3, MgwMethod::Auto).m(3),
                    mgw_moments(outside, 3, MgwMethod::Integral).m(3), 1e-12));
}

TEST_CASE("the cached LST reproduces cumulants and normalization") {
    const double beta = 0.8;
    MgwLst lst(beta);
    CHECK(std::abs(lst.log_lst({0.0, 0.0})) == 0.0);
    const double eps = 1e-4;
    const double d1 = (lst.log_lst({eps, 0.0}) - lst.log_lst({-eps, 0.0})).real() / (2 * eps);
    const double c1 = mgw_cumulants_zeta(beta, 1).c(1);
    CHECK(close_rel(-d1, c1, 1e-6));
    // |E[e^{-sM}]| <= 1 on the right half plane
    for (double re : {0.0, 0.5, 3.0})
        for (double im : {-7.0, 0.0, 2.0})
            CHECK(std::abs(std::exp(lst.log_lst({re, im}))) <= 1.0 + 1e-10);
}
