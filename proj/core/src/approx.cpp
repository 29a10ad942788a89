#include "pollaczek/approx.hpp"

#include <cmath>

namespace pollaczek {

double sigma_alpha_sq(const QueueInstance& q) {
    const double r = q.load;
    return (q.service.variance() + q.arrival.variance() / (r * r)) * r;
}

double n_times_one_minus_rho(const ThinnedQueueInstance& tq) {
    switch (tq.regime) {
        case Regime::NdKingman: return tq.beta;
        case Regime::NdGaussian: return tq.beta * std::sqrt(double(tq.n));
        default: raise(ErrorCode::ConfigError, "not a thinned regime");
    }
}

double gamma_coefficient(const ThinnedQueueInstance& tq) {
    return sigma_alpha_sq(tq.base) / (2.0 * n_times_one_minus_rho(tq));
}

namespace {

MomentVector exponential_moments(double mean, int max_order) {
    MomentVector m;
    m.values.assign(size_t(max_order) + 1, 1.0);
    double factorial = 1.0, pw = 1.0;
    for (int k = 1; k <= max_order; ++k) {
        factorial *= k;
        pw *= mean;
        m.values[size_t(k)] = factorial * pw;
    }
    return m;
}

}  // namespace

MomentVector classical_kingman(const QueueInstance& q, int max_order) {
    return exponential_moments(0.5 * sigma_alpha_sq(q), max_order);
}

MomentVector nd_kingman_approx(const ThinnedQueueInstance& tq, int max_order) {
    if (tq.regime != Regime::NdKingman)
        raise(ErrorCode::ConfigError, "nd_kingman_approx needs an NdKingman instance");
    return exponential_moments(gamma_coefficient(tq), max_order);
}

MomentVector nd_gaussian_standard(const ThinnedQueueInstance& tq, int max_order,
                                  const SaddleInfo& saddle, MgwMethod method) {
    if (tq.regime != Regime::NdGaussian)
        raise(ErrorCode::ConfigError, "nd_gaussian_standard needs an NdGaussian instance");
    return mgw_moments(saddle.beta_n, max_order, method);
}

MomentVector nd_gaussian_refined(const ThinnedQueueInstance& tq, int max_order,
                                 const SaddleInfo& saddle, MgwMethod method) {
    if (tq.regime != Regime::NdGaussian)
        raise(ErrorCode::ConfigError, "nd_gaussian_refined needs an NdGaussian instance");
    const double denom = 1.0 + saddle.beta_n * saddle.phi_n;
    if (!(denom > 0.0))
        raise(ErrorCode::RefinementDegenerate, "1 + beta_n phi_n must be positive");
    const MomentVector mb = mgw_moments(saddle.B_n, max_order, method);
    MomentVector out;
    out.values.assign(size_t(max_order) + 1, 1.0);
    for (int k = 1; k <= max_order; ++k) {
        // m_{k-1}(B_n) at k = 1 multiplies k(k-1) = 0, so m_0 = 1 keeps the
        // formula total.
        out.values[size_t(k)] =
            mb.m(k) / std::pow(denom, 2 * k) +
            double(k) * double(k - 1) * mb.m(k - 1) * saddle.phi_n / std::pow(denom, 2 * k - 1);
    }
    return out;
}

}  // namespace pollaczek
