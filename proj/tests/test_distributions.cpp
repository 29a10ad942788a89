#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "helpers.hpp"
#include "pollaczek/distributions.hpp"
#include "pollaczek/rng.hpp"

using namespace pollaczek;
using testutil::close_rel;

TEST_CASE("validation accepts the example parameter sets") {
    CHECK(gamma_spec(0.4, 2.5).variance() == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(bates_spec(4, 1.0).variance() == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(lattice_spec(4, 1.0).variance() == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
    CHECK(two_point_spec(0.75, 2.0).variance() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(inverse_gaussian_spec(2.0).variance() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(deterministic_spec().variance() == 0.0);
}

TEST_CASE("validation rejects bad parameters with the right codes") {
    auto code_of = [](auto&& make) {
        try {
            make();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::ConfigError;
    };
    CHECK(code_of([] { return gamma_spec(2.0, 2.0); }) == ErrorCode::NonUnitMean);
    CHECK(code_of([] { return gamma_spec(-1.0, -1.0); }) == ErrorCode::NonPositiveParameter);
    CHECK(code_of([] { return lattice_spec(1, 0.5); }) == ErrorCode::DegenerateLattice);
    CHECK(code_of([] { return two_point_spec(1.2, 2.0); }) == ErrorCode::TwoPointOrderViolation);
    CHECK(code_of([] { return two_point_spec(0.5, 0.9); }) == ErrorCode::TwoPointOrderViolation);
    CHECK(code_of([] { return bates_spec(4, 1.5); }) == ErrorCode::NonPositiveParameter);
}

TEST_CASE("mgf normalization and strip") {
    for (const auto& spec : testutil::all_example_specs()) {
        CAPTURE(spec.describe());
        CHECK(std::abs(mgf(spec, {0.0, 0.0}) - 1.0) < 1e-14);
    }
    CHECK_THROWS_AS((void)mgf(gamma_spec(2.0, 0.5), {2.1, 0.0}), Error);
    CHECK_THROWS_AS((void)mgf_derivative(inverse_gaussian_spec(1.0), {0.6, 0.0}, 1), Error);
    CHECK_THROWS_AS((void)mgf_derivative(deterministic_spec(), {0.0, 0.0}, 4), Error);
}

TEST_CASE("gamma mgf matches direct quadrature of the density") {
    for (double z : {-1.2, -0.3, 0.25}) {
        const double got = mgf(gamma_spec(0.4, 2.5), {z, 0.0}).real();
        const double want = testutil::gamma_mgf_by_quadrature(0.4, 2.5, z);
        CHECK(close_rel(got, want, 1e-6));
    }
    const double got = mgf(gamma_spec(2.0, 0.5), {0.8, 0.0}).real();
    CHECK(close_rel(got, testutil::gamma_mgf_by_quadrature(2.0, 0.5, 0.8), 1e-6));
}

TEST_CASE("bates mgf is regular through z = 0") {
    const auto spec = bates_spec(4, 1.0);
    // series branch vs closed form across the switch radius
    for (double z : {1e-8, 1e-4, 0.1, 0.5, 0.7}) {
        const std::complex<double> lo = mgf(spec, {z * 0.999, 0.0});
        const std::complex<double> hi = mgf(spec, {z * 1.001, 0.0});
        CHECK(std::abs(hi - lo) < 1e-2 * std::abs(lo));
    }
    const double h = 1e-6;
    const double d1 =
        (mgf(spec, {h, 0.0}).real() - mgf(spec, {-h, 0.0}).real()) / (2.0 * h);
    CHECK(d1 == doctest::Approx(1.0).epsilon(1e-8));  // mean 1
}

TEST_CASE("first three mgf derivatives at 0 are the moments") {
    for (const auto& spec : testutil::all_example_specs()) {
        CAPTURE(spec.describe());
        CHECK(std::abs(mgf_derivative(spec, {0.0, 0.0}, 1) - 1.0) < 1e-13);
        const double m2 = 1.0 + spec.variance();
        CHECK(close_rel(mgf_derivative(spec, {0.0, 0.0}, 2).real(), m2, 1e-13));
    }
}

TEST_CASE("analytic derivatives agree with central differences to 1e-6 in the strip") {
    // differences taken in long double so cancellation stays below the target
    Xoshiro256pp rng(7);
    for (const auto& spec : testutil::all_example_specs()) {
        CAPTURE(spec.describe());
        const double edge = std::min(spec.mgf_edge(), 2.0);
        auto f = [&](long double t) -> long double {
            return std::exp(detail::log_mgf(spec, std::complex<long double>(t, 0.0L)).real());
        };
        for (int trial = 0; trial < 5; ++trial) {
            const long double x = (2.0 * rng.uniform01() - 1.0) * 0.4 * edge;
            const long double h1 = 1e-5L, h2 = 1e-4L, h3 = 1e-4L;
            const double d1 = double((f(x + h1) - f(x - h1)) / (2 * h1));
            const double d2 = double((f(x + h2) - 2 * f(x) + f(x - h2)) / (h2 * h2));
            const double d3 = double((f(x + 2 * h3) - 2 * f(x + h3) + 2 * f(x - h3) - f(x - 2 * h3)) /
                                     (2 * h3 * h3 * h3));
            const std::complex<double> z{double(x), 0.0};
            CHECK(close_rel(mgf_derivative(spec, z, 1).real(), d1, 1e-6));
            CHECK(close_rel(mgf_derivative(spec, z, 2).real(), d2, 1e-6));
            const double got3 = mgf_derivative(spec, z, 3).real();
            CHECK(std::abs(got3 - d3) <= 1e-6 * std::max({std::abs(got3), std::abs(d3), 1.0}));
        }
    }
}

TEST_CASE("third derivative against a differenced second derivative, step 1e-5") {
    // a third central difference of the mgf itself cannot reach 1e-6 in double
    // precision; differencing the analytic second derivative can
    const auto spec = gamma_spec(0.4, 2.5);
    const double h = 1e-5;
    const double x = 0.05;
    const double d3 = (mgf_derivative(spec, {x + h, 0.0}, 2).real() -
                       mgf_derivative(spec, {x - h, 0.0}, 2).real()) /
                      (2 * h);
    CHECK(close_rel(mgf_derivative(spec, {x, 0.0}, 3).real(), d3, 1e-6));
}

TEST_CASE("closed-form cumulants") {
    CHECK(cumulants3(gamma_spec(0.4, 2.5))[2] == doctest::Approx(12.5).epsilon(1e-14));
    CHECK(cumulants3(bates_spec(4, 1.0))[2] == 0.0);
    CHECK(cumulants3(lattice_spec(4, 1.0))[2] == 0.0);
    const double lam = 1.25 * std::sqrt(1.5);
    CHECK(cumulants3(inverse_gaussian_spec(lam))[2] == doctest::Approx(32.0 / 25.0).epsilon(1e-14));
    CHECK(cumulants3(two_point_spec(0.75, 2.0))[2] == doctest::Approx(3.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("cumulants agree with log-mgf finite differences at 0") {
    for (const auto& spec : testutil::all_example_specs()) {
        CAPTURE(spec.describe());
        const auto fd = testutil::log_mgf_cumulants_by_differences(spec);
        CHECK(std::abs(fd[0] - 1.0) < 1e-8);
        CHECK(std::abs(fd[1] - spec.variance()) < 1e-8);
        CHECK(std::abs(fd[2] - spec.third_cumulant()) < 1e-8);
    }
}

TEST_CASE("mgf is positive, log-convex, and conjugate symmetric") {
    Xoshiro256pp rng(11);
    for (const auto& spec : testutil::all_example_specs()) {
        CAPTURE(spec.describe());
        const double edge = std::min(spec.mgf_edge(), 3.0);
        const double lo = -1.5, hi = 0.8 * edge;
        const double step = (hi - lo) / 40;
        std::vector<double> logf;
        for (int i = 0; i <= 40; ++i) {
            const double f = mgf(spec, {lo + i * step, 0.0}).real();
            CHECK(f > 0.0);
            logf.push_back(std::log(f));
        }
        for (size_t i = 1; i + 1 < logf.size(); ++i)
            CHECK(logf[i + 1] - 2 * logf[i] + logf[i - 1] > -1e-12);

        for (int trial = 0; trial < 8; ++trial) {
            const std::complex<double> z((2.0 * rng.uniform01() - 1.0) * 0.5 * edge,
                                         (2.0 * rng.uniform01() - 1.0) * 10.0);
            const std::complex<double> a = mgf(spec, std::conj(z));
            const std::complex<double> b = std::conj(mgf(spec, z));
            CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
        }
    }
}

TEST_CASE("mgf_abs_bound dominates sampled magnitudes") {
    for (const auto& spec : testutil::all_example_specs()) {
        CAPTURE(spec.describe());
        for (double x : {-0.4, -0.05, 0.1}) {
            if (x >= spec.mgf_edge()) continue;
            for (double ymin : {0.5, 5.0, 50.0}) {
                const double bound = mgf_abs_bound(spec, x, ymin);
                for (int i = 0; i < 60; ++i) {
                    const double y = ymin * (1.0 + 0.37 * i);
                    CHECK(std::abs(mgf(spec, {x, y})) <= bound * (1.0 + 1e-12));
                }
            }
        }
    }
}
