#include "pollaczek/zeta.hpp"

#include <cmath>
#include <limits>

#include "pollaczek/errors.hpp"

namespace pollaczek {
namespace {

// B_{2k}/(2k)! for k = 1..12
constexpr double kBernFact[12] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -1.1867424670647232e-12,   // B12/12! = -691/1307674368000
    1.8924093365129607e-14,    // B14/14!
    -3.0176627213405232e-16,   // B16/16!
    4.812532544091004e-18,     // B18/18!
    -7.675229469913548e-20,    // B20/20!
    1.2240743128446237e-21,    // B22/22!
    -1.9525140226059462e-23,   // B24/24!
};

// Euler-Maclaurin evaluation, reliable for s >= 0.5 (and well beyond).
double zeta_em(double s) {
    constexpr int N = 24;
    double sum = 0.0;
    for (int j = N - 1; j >= 1; --j) sum += std::pow(double(j), -s);
    sum += std::pow(double(N), 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(double(N), -s);
    double poch = s;                             // s(s+1)...(s+2k-2)
    double npow = std::pow(double(N), -s - 1.0); // N^{-s-2k+1}
    for (int k = 1; k <= 12; ++k) {
        sum += kBernFact[k - 1] * poch * npow;
        poch *= (s + 2 * k - 1) * (s + 2 * k);
        npow /= double(N) * double(N);
    }
    return sum;
}

}  // namespace

double sin_pi(double x) {
    const double n = std::nearbyint(x);
    const double f = x - n;
    const double s = std::sin(M_PI * f);
    return (std::fmod(std::abs(n), 2.0) < 0.5) ? s : -s;
}

double riemann_zeta(double s) {
    if (s == 1.0) raise(ErrorCode::UnsupportedOrder, "zeta has a pole at s = 1");
    if (s >= 0.5) return zeta_em(s);
    if (s == 0.0) return -0.5;  // sin factor and the zeta(1) pole cancel here
    // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
    const double sp = sin_pi(s / 2.0);
    if (sp == 0.0) return 0.0;  // negative even integers
    return std::pow(2.0, s) * std::pow(M_PI, s - 1.0) * sp * std::tgamma(1.0 - s) * zeta_em(1.0 - s);
}

double log_abs_riemann_zeta(double s, int& sign) {
    if (s >= 0.5) {
        const double z = zeta_em(s);
        sign = z >= 0.0 ? 1 : -1;
        return std::log(std::abs(z));
    }
    if (s == 0.0) {
        sign = -1;
        return std::log(0.5);
    }
    const double sp = sin_pi(s / 2.0);
    if (sp == 0.0) {
        sign = 0;
        return -std::numeric_limits<double>::infinity();
    }
    const double z1 = zeta_em(1.0 - s);  // > 0 for s < 0.5
    sign = sp >= 0.0 ? 1 : -1;
    return s * std::log(2.0) + (s - 1.0) * std::log(M_PI) + std::log(std::abs(sp)) +
           std::lgamma(1.0 - s) + std::log(z1);
}

double gamma_of_half(int half) {
    if (half < 1) raise(ErrorCode::UnsupportedOrder, "gamma_of_half needs a positive argument");
    if (half % 2 == 0) {
        double g = 1.0;
        for (int k = 2; k < half / 2; ++k) g *= k;
        return g;  // (half/2 - 1)!
    }
    // Gamma(n + 1/2) = sqrt(pi) * prod_{j=0}^{n-1} (j + 1/2)
    double g = std::sqrt(M_PI);
    const int n = (half - 1) / 2;
    for (int j = 0; j < n; ++j) g *= j + 0.5;
    return g;
}

}  // namespace pollaczek
