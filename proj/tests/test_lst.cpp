#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "pollaczek/approx.hpp"
#include "pollaczek/lst.hpp"
#include "pollaczek/moments.hpp"

using namespace pollaczek;
using testutil::close_rel;

TEST_CASE("exponential inversion against the closed form") {
    const LSTHandle h = make_exponential_lst(1.0);
    CHECK(std::abs(invert_cdf_at(h, 1.0) - (1.0 - std::exp(-1.0))) < 1e-6);
    for (double t : {0.1, 0.7, 3.0, 8.0})
        CHECK(std::abs(invert_cdf_at(h, t) - (1.0 - std::exp(-t))) < 1e-6);
}

TEST_CASE("two-component exponential mixture inversion") {
    LSTHandle h;
    h.mean_hint = 0.3 * 1.0 + 0.7 * 3.0;
    h.eval = [](std::complex<double> s) { return 0.3 / (1.0 + s) + 0.7 / (1.0 + 3.0 * s); };
    for (double t : {0.2, 1.0, 2.5, 6.0}) {
        const double want = 0.3 * (1.0 - std::exp(-t)) + 0.7 * (1.0 - std::exp(-t / 3.0));
        CHECK(std::abs(invert_cdf_at(h, t) - want) < 1e-6);
    }
}

TEST_CASE("exact transforms are normalized and bounded") {
    QueueInstance q(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), 0.9);
    const LSTHandle h = make_exact_lst(q);
    CHECK(std::abs(h.eval({0.0, 0.0}) - 1.0) < 1e-10);
    for (double re : {0.0, 1.0, 20.0})
        for (double im : {-30.0, 0.0, 4.0})
            CHECK(std::abs(h.eval({re, im})) <= 1.0 + 1e-9);
    // mean hint equals the exact first moment
    CHECK(close_rel(h.mean_hint, exact_scaled_moments(q, 1).moments.m(1), 1e-8));
}

TEST_CASE("waiting-time atoms at zero") {
    QueueInstance q(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), 0.9);
    CHECK(std::abs(atom_at_zero(make_exact_lst(q)) - 0.056) < 3e-3);

    ThinnedQueueInstance tq =
        make_thinned(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), 10, 1.0, Regime::NdKingman);
    CHECK(std::abs(atom_at_zero(make_exact_lst(tq)) - 0.216) < 3e-3);
}

TEST_CASE("gaussian-walk LST handles") {
    const LSTHandle h = make_mgw_lst(0.8);
    CHECK(std::abs(h.eval({0.0, 0.0}) - 1.0) < 1e-12);

    // refined handle with phi = 0 equals the standard one
    SaddleInfo s;
    s.beta_n = 0.8;
    s.phi_n = 0.0;
    s.B_n = 0.8;
    const LSTHandle r = make_mgw_refined_lst(s);
    for (double re : {0.2, 1.0, 5.0}) {
        const std::complex<double> a = h.eval({re, 0.3});
        const std::complex<double> b = r.eval({re, 0.3});
        CHECK(std::abs(a - b) < 1e-10 * std::abs(a));
    }
}

TEST_CASE("inverted CDFs are in range, monotone, and reach 1") {
    QueueInstance q(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), 0.9);
    const LSTHandle h = make_exact_lst(q);
    std::vector<double> grid;
    for (int i = 1; i <= 60; ++i) grid.push_back(h.mean_hint * 20.0 * i / 60.0);
    const CdfResult cdf = invert_cdf(h, grid);
    // the far tail may overshoot 1 by the ~1e-8 discretization error; that is
    // what the clamping report is for
    CHECK(cdf.clamped <= 8);
    for (size_t i = 0; i < cdf.raw.size(); ++i) {
        CHECK(cdf.raw[i] > -1e-4);
        CHECK(cdf.raw[i] < 1.0 + 1e-4);
        CHECK(cdf.F[i] >= 0.0);
        CHECK(cdf.F[i] <= 1.0);
        if (i > 0) CHECK(cdf.F[i] >= cdf.F[i - 1] - 1e-5);
    }
    CHECK(cdf.F.back() > 0.999);
}

TEST_CASE("integrated tail reproduces the first moment within 1%") {
    QueueInstance q(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), 0.9);
    const LSTHandle h = make_exact_lst(q);
    const double m1 = exact_scaled_moments(q, 1).moments.m(1);
    // E[X] = P(X=0)*0 + int_0^inf (1-F), trapezoid on [0, 30 m1]
    const int N = 600;
    const double T = 30.0 * m1;
    const CdfResult cdf = [&] {
        std::vector<double> grid;
        for (int i = 1; i <= N; ++i) grid.push_back(T * i / N);
        return invert_cdf(h, grid);
    }();
    double integral = 0.0;
    double prev_t = 0.0, prev_f = atom_at_zero(h);
    for (size_t i = 0; i < cdf.t.size(); ++i) {
        integral += 0.5 * ((1.0 - prev_f) + (1.0 - cdf.F[i])) * (cdf.t[i] - prev_t);
        prev_t = cdf.t[i];
        prev_f = cdf.F[i];
    }
    CHECK(close_rel(integral, m1, 0.01));
}

TEST_CASE("classical exact and limiting exponential CDFs nearly coincide at alpha=0.01") {
    QueueInstance q(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), 0.99);
    const LSTHandle ex = make_exact_lst(q);
    const LSTHandle ap = make_exponential_lst(0.5 * sigma_alpha_sq(q));
    double sup = 0.0;
    for (int i = 1; i <= 40; ++i) {
        const double t = 8.0 * i / 40.0;
        sup = std::max(sup, std::abs(invert_cdf_at(ex, t) - invert_cdf_at(ap, t)));
    }
    CHECK(sup < 0.01);
}

TEST_CASE("a transform that is not an LST destabilizes the Euler sums") {
    LSTHandle bad;
    bad.mean_hint = 1.0;
    bad.eval = [](std::complex<double> s) { return std::exp(0.5 * s); };  // grows on the contour
    CHECK_THROWS_AS((void)invert_cdf_at(bad, 1.0), Error);
}

TEST_CASE("inversion rejects nonpositive t") {
    CHECK_THROWS_AS((void)invert_cdf_at(make_exponential_lst(1.0), 0.0), Error);
}
