#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "pollaczek/simulate.hpp"

using namespace pollaczek;

TEST_CASE("sampler hits the spec moments") {
    Xoshiro256pp rng(2024);
    for (const auto& spec : testutil::all_example_specs()) {
        CAPTURE(spec.describe());
        const long N = 1000000;
        double sum = 0.0, sq = 0.0;
        for (long i = 0; i < N; ++i) {
            const double x = sample_variate(spec, rng);
            sum += x;
            sq += x * x;
        }
        const double mean = sum / N;
        const double var = sq / N - mean * mean;
        const double sd = std::sqrt(spec.variance());
        CHECK(std::abs(mean - 1.0) <= std::max(3.0 * sd / 1000.0, 1e-12));
        if (spec.variance() > 0.0)
            CHECK(std::abs(var - spec.variance()) <= 0.01 * spec.variance() + 3e-3);
        else
            CHECK(var <= 1e-12);
    }
}

TEST_CASE("bates draws stay inside the support") {
    Xoshiro256pp rng(5);
    const auto spec = bates_spec(4, 1.0);
    for (int i = 0; i < 100000; ++i) {
        const double x = sample_variate(spec, rng);
        CHECK(x >= 0.0);
        CHECK(x <= 2.0);
    }
}

TEST_CASE("identical configs reproduce bit-identical estimates") {
    QueueInstance q(exponential_spec(), exponential_spec(), 0.5);
    SimConfig cfg;
    cfg.warmup = 2000;
    cfg.customers = 20000;
    cfg.replications = 4;
    cfg.seed = 99;
    const SimResult a = simulate_waiting(q, cfg);
    const SimResult b = simulate_waiting(q, cfg);
    REQUIRE(a.moments.size() == b.moments.size());
    for (size_t i = 0; i < a.moments.size(); ++i) {
        CHECK(a.moments[i].mean == b.moments[i].mean);
        CHECK(a.moments[i].half_width == b.moments[i].half_width);
    }
    CHECK(a.p_zero.mean == b.p_zero.mean);
}

TEST_CASE("M/M/1 at rho = 1/2: the CI covers the truth for most seeds") {
    QueueInstance q(exponential_spec(), exponential_spec(), 0.5);
    int hit = 0;
    for (int seed = 1; seed <= 20; ++seed) {
        SimConfig cfg;
        cfg.warmup = 2000;
        cfg.customers = 25000;
        cfg.replications = 8;
        cfg.seed = std::uint64_t(seed) * 7919;
        cfg.max_order = 1;
        const SimResult r = simulate_waiting(q, cfg);
        // E[alpha W] = alpha rho/(1-rho) = 0.5
        if (r.moments[0].contains(0.5)) ++hit;
    }
    CHECK(hit >= 17);
}

TEST_CASE("thinned simulation smoke: the Kingman cell at n = 10") {
    ThinnedQueueInstance tq =
        make_thinned(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), 10, 1.0, Regime::NdKingman);
    SimConfig cfg;
    cfg.warmup = 10000;
    cfg.customers = 120000;
    cfg.replications = 8;
    cfg.seed = 31415;
    cfg.max_order = 2;
    const SimResult r = simulate_waiting(tq, cfg);
    CHECK(r.moments[0].contains(1.212));
    CHECK(r.moments[1].contains(3.572));
    CHECK(r.p_zero.contains(0.216));
}

TEST_CASE("rng jump produces de-correlated streams") {
    Xoshiro256pp a(123);
    Xoshiro256pp b = a;
    b.jump();
    int agree = 0;
    for (int i = 0; i < 1000; ++i)
        if ((a() >> 60) == (b() >> 60)) ++agree;
    CHECK(agree < 200);  // 1/16 expected by chance
}

TEST_CASE("config validation") {
    QueueInstance q(exponential_spec(), exponential_spec(), 0.5);
    SimConfig cfg;
    cfg.replications = 1;
    CHECK_THROWS_AS((void)simulate_waiting(q, cfg), Error);
    CHECK_THROWS_AS(QueueInstance(exponential_spec(), exponential_spec(), 1.0), Error);
}
