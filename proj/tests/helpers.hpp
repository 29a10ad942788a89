#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "pollaczek/distributions.hpp"

namespace testutil {

inline bool close_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// Composite Simpson on [a,b].
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / (2 * panels);
    double acc = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i) acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// E[exp(zX)] for a Gamma(shape, scale) by direct quadrature of the density.
// The substitution x = t^m with m*shape >= 4 keeps the transformed integrand
// several times differentiable at the origin, so Simpson converges at full
// order even for shape < 1.
inline double gamma_mgf_by_quadrature(double shape, double scale, double z) {
    const double rate = 1.0 / scale - z;  // requires z < 1/scale
    const double x_max = 80.0 / rate + 10.0;
    const int m = std::max(1, int(std::ceil(4.0 / shape)));
    const double t_max = std::pow(x_max, 1.0 / m);
    const double norm = std::tgamma(shape) * std::pow(scale, shape);
    auto f = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double x = std::pow(t, double(m));
        return double(m) * std::pow(t, m * shape - 1.0) * std::exp(-rate * x) / norm;
    };
    return simpson(f, 0.0, t_max, 60000);
}

// Richardson-extrapolated central differences of log mgf at 0 in long double;
// accurate enough to pin the first three cumulants at 1e-8.
inline std::array<double, 3> log_mgf_cumulants_by_differences(const pollaczek::DistributionSpec& s) {
    auto lm = [&](long double t) {
        return (double)pollaczek::detail::log_mgf(s, std::complex<long double>(t, 0.0L)).real();
    };
    auto d1 = [&](long double h) { return (lm(h) - lm(-h)) / (2.0L * (double)h); };
    auto d2 = [&](long double h) { return (lm(h) - 2.0 * lm(0.0L) + lm(-h)) / ((double)h * (double)h); };
    auto d3 = [&](long double h) {
        return (lm(2 * h) - 2 * lm(h) + 2 * lm(-h) - lm(-2 * h)) /
               (2.0 * (double)h * (double)h * (double)h);
    };
    auto richardson = [](auto&& f, long double h) {
        // two levels of h -> h/2 extrapolation of an O(h^2) rule
        const double a = f(h), b = f(h / 2), c = f(h / 4);
        const double r1 = (4 * b - a) / 3.0, r2 = (4 * c - b) / 3.0;
        return (16 * r2 - r1) / 15.0;
    };
    const long double h = 0.01L * (long double)std::min(1.0, s.mgf_edge());
    return {richardson(d1, h), richardson(d2, h), richardson(d3, h)};
}

inline std::vector<pollaczek::DistributionSpec> all_example_specs() {
    using namespace pollaczek;
    return {gamma_spec(2.0, 0.5),    gamma_spec(0.4, 2.5),
            gamma_spec(2.0 / 3.0, 1.5), bates_spec(4, 1.0),
            lattice_spec(4, 1.0),    two_point_spec(0.5, 1.5),
            two_point_spec(0.75, 2.0), inverse_gaussian_spec(1.5309310892394863),
            deterministic_spec()};
}

}  // namespace testutil
