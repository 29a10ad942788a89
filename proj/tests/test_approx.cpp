#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "pollaczek/approx.hpp"
#include "pollaczek/moments.hpp"

using namespace pollaczek;
using testutil::close_rel;

namespace {
QueueInstance gg1(double rho) { return {gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), rho}; }
}  // namespace

TEST_CASE("classical approximation has the exponential structure, exactly") {
    QueueInstance q = gg1(0.9);
    const MomentVector m = classical_kingman(q, 5);
    const double theta = 0.5 * sigma_alpha_sq(q);
    double kfact = 1.0, pw = 1.0;
    for (int k = 1; k <= 5; ++k) {
        kfact *= k;
        pw *= theta;
        CHECK(m.m(k) == kfact * pw);  // bitwise, not approximate
    }
    CHECK(m.m(1) == doctest::Approx(1.614).epsilon(5e-4));
}

TEST_CASE("classical approximation tends to 3/2 as the load goes to 1") {
    CHECK(classical_kingman(gg1(0.999), 1).m(1) == doctest::Approx(1.501).epsilon(5e-4));
    CHECK(classical_kingman(gg1(0.9999), 1).m(1) == doctest::Approx(1.5).epsilon(1e-3));
}

TEST_CASE("Kingman's bound sits above the exact first moment") {
    for (double alpha : {0.1, 0.01}) {
        for (const auto& [v, u] :
             {std::pair{gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5)},
              std::pair{gamma_spec(0.4, 2.5), gamma_spec(2.0, 0.5)},
              std::pair{gamma_spec(2.0 / 3.0, 1.5), gamma_spec(2.0 / 3.0, 1.5)}}) {
            QueueInstance q(v, u, 1.0 - alpha);
            const double bound = classical_kingman(q, 1).m(1);
            const double exact = exact_scaled_moments(q, 1).moments.m(1);
            CHECK(bound >= exact);
        }
    }
}

TEST_CASE("thinned Kingman approximation and the beta=1 coincidence") {
    ThinnedQueueInstance tq =
        make_thinned(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), 100, 1.0, Regime::NdKingman);
    CHECK(nd_kingman_approx(tq, 1).m(1) == doctest::Approx(1.510).epsilon(5e-4));

    // at beta = 1, gamma_n coincides with sigma_alpha^2/2 at alpha = 1/n, exactly
    for (long n : {10L, 1000L, 100000L}) {
        ThinnedQueueInstance t =
            make_thinned(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), n, 1.0, Regime::NdKingman);
        QueueInstance q(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), t.base.load);
        CHECK(gamma_coefficient(t) == 0.5 * sigma_alpha_sq(q));
    }

    // M/D/s reduction with 5 stages
    ThinnedQueueInstance mds =
        make_thinned(deterministic_spec(), erlang_spec(5), 100, 1.0, Regime::NdKingman);
    CHECK(nd_kingman_approx(mds, 1).m(1) == doctest::Approx(0.101).epsilon(5e-3));
}

TEST_CASE("gaussian-regime standard approximation reference values") {
    {
        ThinnedQueueInstance tq =
            make_thinned(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), 1000, 1.0, Regime::NdGaussian);
        const SaddleInfo s = gaussian_regime_params(tq);
        CHECK(nd_gaussian_standard(tq, 1, s).m(1) == doctest::Approx(0.4100).epsilon(2e-3));
    }
    {
        ThinnedQueueInstance tq = make_thinned(
            gamma_spec(1.25, 0.8), inverse_gaussian_spec(1.5309310892394863), 100, 1.0,
            Regime::NdGaussian);
        const SaddleInfo s = gaussian_regime_params(tq);
        CHECK(std::abs(nd_gaussian_standard(tq, 1, s).m(1) - 0.1744) < 5e-4);
    }
    {
        ThinnedQueueInstance tq =
            make_thinned(lattice_spec(4, 1.0), gamma_spec(0.4, 2.5), 10, 1.0, Regime::NdGaussian);
        const SaddleInfo s = gaussian_regime_params(tq);
        CHECK(std::abs(nd_gaussian_standard(tq, 1, s).m(1) - 0.3796) < 5e-4);
    }
}

TEST_CASE("refined approximation: reference value and reductions") {
    ThinnedQueueInstance tq =
        make_thinned(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), 100, 1.0, Regime::NdGaussian);
    const SaddleInfo s = gaussian_regime_params(tq);
    const MomentVector refined = nd_gaussian_refined(tq, 3, s);
    CHECK(std::abs(refined.m(1) - 0.4030) < 5e-4);

    // k = 1 collapses to m1(B)/(1+beta phi)^2
    const double denom = 1.0 + s.beta_n * s.phi_n;
    const double m1B = mgw_moments(s.B_n, 1).m(1);
    CHECK(close_rel(refined.m(1), m1B / (denom * denom), 1e-12));

    // symmetric service/arrival: phi_n = 0 makes both approximations identical
    ThinnedQueueInstance sym = make_thinned(gamma_spec(2.0 / 3.0, 1.5), gamma_spec(2.0 / 3.0, 1.5),
                                            100, 1.0, Regime::NdGaussian);
    const SaddleInfo ssym = gaussian_regime_params(sym);
    const MomentVector a = nd_gaussian_standard(sym, 5, ssym);
    const MomentVector b = nd_gaussian_refined(sym, 5, ssym);
    for (int k = 1; k <= 5; ++k) CHECK(close_rel(a.m(k), b.m(k), 1e-13));
}

TEST_CASE("refinement degenerates loudly when 1 + beta phi <= 0") {
    ThinnedQueueInstance tq =
        make_thinned(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), 100, 1.0, Regime::NdGaussian);
    SaddleInfo s = gaussian_regime_params(tq);
    s.phi_n = -2.0 / s.beta_n;
    CHECK_THROWS_AS((void)nd_gaussian_refined(tq, 2, s), Error);
}

TEST_CASE("matched third cumulants: approximations converge to each other at rate 1/n") {
    auto gap = [&](long n) {
        ThinnedQueueInstance tq = make_thinned(
            gamma_spec(1.25, 0.8), inverse_gaussian_spec(1.5309310892394863), n, 1.0,
            Regime::NdGaussian);
        const SaddleInfo s = gaussian_regime_params(tq);
        return std::abs(nd_gaussian_standard(tq, 1, s).m(1) - nd_gaussian_refined(tq, 1, s).m(1));
    };
    const double ratio = gap(100) / gap(1000);
    CHECK(ratio > 5.0);
    CHECK(ratio < 20.0);
}
