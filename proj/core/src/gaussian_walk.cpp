#include "pollaczek/gaussian_walk.hpp"

#include <cmath>

#include "pollaczek/zeta.hpp"

namespace pollaczek {

ContourIntegrand mgw_integrand(double beta, int order) {
    if (!(beta > 0.0)) raise(ErrorCode::BetaOutOfRange, "drift beta must be positive");
    ContourIntegrand ci;
    ci.abscissa = -beta;
    ci.order = order;
    ci.log_g = [beta](double y) {
        const std::complex<double> z(-beta, y);
        return beta * z + 0.5 * z * z;  // = -(beta^2 + y^2)/2 on this contour
    };
    ci.log_g_ext = [beta](long double y) {
        const std::complex<long double> z((long double)-beta, y);
        return (long double)beta * z + (long double)0.5 * z * z;
    };
    ci.abs_g_tail = [beta](double y) { return std::exp(-0.5 * (beta * beta + y * y)); };
    for (double b : {beta / 4.0, beta, 4.0 * beta, 1.0}) ci.breakpoints.push_back(b);
    return ci;
}

CumulantVector mgw_cumulants_integral(double beta, int max_order, const QuadratureConfig& cfg) {
    CumulantVector out;
    out.source = CumulantVector::Source::Contour;
    for (int l = 1; l <= max_order; ++l) {
        const IntegralResult r = cumulant_contour_integral(mgw_integrand(beta, l), cfg);
        out.values.push_back(r.value);
        out.errors.push_back(r.abs_error);
    }
    return out;
}

namespace {

constexpr double kTwoSqrtPi = 3.5449077018110320545963349666823;

double zeta_series_cumulant(double beta, int l, double* err_out) {
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * M_PI);

    double factorial_lm1 = 1.0;
    for (int i = 2; i <= l - 1; ++i) factorial_lm1 *= i;
    const double t1 = factorial_lm1 / std::pow(2.0 * beta, l);

    // sum_{j=0}^{l} C(l,j) Gamma((l-j+1)/2) zeta(1-(l+j)/2) 2^{(l-j-1)/2} (-beta)^j
    double t2 = 0.0;
    double binom = 1.0;
    double beta_pow = 1.0;
    for (int j = 0; j <= l; ++j) {
        const double arg = 1.0 - 0.5 * (l + j);
        const double term = binom * gamma_of_half(l - j + 1) * riemann_zeta(arg) *
                            std::pow(2.0, 0.5 * (l - j - 1)) * ((j % 2) ? -beta_pow : beta_pow);
        t2 += term;
        binom *= double(l - j) / double(j + 1);
        beta_pow *= beta;
    }

    // sum_{r>=0} zeta(1/2-l-r) (-1/2)^r beta^{2r+l+1} / (r! (2r+1)...(2r+l+1)),
    // in log space since zeta at deep negative arguments grows factorially.
    const double log_beta = std::log(beta);
    double t3 = 0.0;
    double last = 0.0;
    int below = 0;
    const int r_cap = 4000;
    int r = 0;
    for (; r < r_cap; ++r) {
        int sign = 0;
        const double lz = log_abs_riemann_zeta(0.5 - l - r, sign);
        double term = 0.0;
        if (sign != 0) {
            double log_term = lz + r * std::log(0.5) + (2.0 * r + l + 1.0) * log_beta -
                              std::lgamma(r + 1.0);
            for (int i = 2 * r + 1; i <= 2 * r + l + 1; ++i) log_term -= std::log(double(i));
            term = sign * ((r % 2) ? -1.0 : 1.0) * std::exp(log_term);
        }
        t3 += term;
        last = std::abs(term);
        if (r > l && last < 1e-17 * (std::abs(t3) + 1e-300)) {
            if (++below >= 2) break;
        } else {
            below = 0;
        }
    }
    if (r >= r_cap)
        raise(ErrorCode::BetaOutOfRange,
              "zeta series did not converge; beta too close to 2 sqrt(pi)");
    double factorial_l = factorial_lm1 * std::max(l, 1);
    const double sign_l = (l % 2) ? 1.0 : -1.0;  // (-1)^{l+1}
    if (err_out) *err_out = 2.0 * last;  // alternating-tail truncation bound
    return t1 + inv_sqrt_2pi * t2 + sign_l * factorial_l * inv_sqrt_2pi * t3;
}

}  // namespace

CumulantVector mgw_cumulants_zeta(double beta, int max_order) {
    if (!(beta > 0.0)) raise(ErrorCode::BetaOutOfRange, "drift beta must be positive");
    if (beta >= kTwoSqrtPi)
        raise(ErrorCode::BetaOutOfRange, "zeta series only valid for beta < 2 sqrt(pi)");
    CumulantVector out;
    out.source = CumulantVector::Source::ZetaSeries;
    for (int l = 1; l <= max_order; ++l) {
        double err = 0.0;
        out.values.push_back(zeta_series_cumulant(beta, l, &err));
        out.errors.push_back(err);
    }
    return out;
}

MomentVector mgw_moments(double beta, int max_order, MgwMethod method, const QuadratureConfig& cfg) {
    CumulantVector c;
    switch (method) {
        case MgwMethod::Integral: c = mgw_cumulants_integral(beta, max_order, cfg); break;
        case MgwMethod::ZetaSeries: c = mgw_cumulants_zeta(beta, max_order); break;
        case MgwMethod::Auto:
            c = (beta < 0.98 * kTwoSqrtPi) ? mgw_cumulants_zeta(beta, max_order)
                                           : mgw_cumulants_integral(beta, max_order, cfg);
            break;
    }
    return moments_from_cumulants(c);
}

MgwLst::MgwLst(double beta, const QuadratureConfig& cfg) : beta_(beta) {
    mesh_ = contour_mesh(mgw_integrand(beta, 1), cfg);
}

std::complex<double> MgwLst::log_lst(std::complex<double> s) const {
    return pollaczek_log_lst(mesh_, s);
}

}  // namespace pollaczek
