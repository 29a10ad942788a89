#include "pollaczek/moments.hpp"

#include <cmath>

#include "pollaczek/approx.hpp"

namespace pollaczek {

MomentVector moments_from_cumulants(const CumulantVector& c) {
    const int K = c.order();
    MomentVector m;
    m.values.assign(size_t(K) + 1, 0.0);
    m.values[0] = 1.0;
    for (int k = 1; k <= K; ++k) {
        double binom = 1.0;  // C(k-1, l-1)
        double acc = 0.0;
        for (int l = 1; l <= k; ++l) {
            acc += binom * c.values[size_t(l) - 1] * m.values[size_t(k - l)];
            binom *= double(k - l) / double(l);
        }
        m.values[size_t(k)] = acc;
    }
    return m;
}

namespace {

ExactMoments from_integrands(const std::function<ContourIntegrand(int)>& make, int max_order,
                             const QuadratureConfig& cfg) {
    if (max_order < 1 || max_order > 12)
        raise(ErrorCode::UnsupportedOrder, "exact moments support orders 1..12");
    ExactMoments out;
    out.cumulants.source = CumulantVector::Source::Contour;
    for (int l = 1; l <= max_order; ++l) {
        const IntegralResult r = cumulant_contour_integral(make(l), cfg);
        out.cumulants.values.push_back(r.value);
        out.cumulants.errors.push_back(r.abs_error);
        out.integrals.push_back(r);
    }
    out.moments = moments_from_cumulants(out.cumulants);
    return out;
}

}  // namespace

ExactMoments exact_scaled_moments(const QueueInstance& q, int max_order,
                                  const QuadratureConfig& cfg) {
    const double x0 = -1.0 / sigma_alpha_sq(q) * cfg.abscissa_factor;
    return from_integrands([&](int l) { return classical_integrand(q, l, x0); }, max_order, cfg);
}

ExactMoments exact_scaled_moments(const ThinnedQueueInstance& tq, int max_order,
                                  const QuadratureConfig& cfg) {
    if (tq.regime == Regime::NdGaussian) {
        SaddleInfo saddle = gaussian_regime_params(tq);
        const double x0 = saddle.zeta_sp * cfg.abscissa_factor;
        ExactMoments out = from_integrands(
            [&](int l) { return nd_gaussian_integrand(tq, saddle, l, x0); }, max_order, cfg);
        out.saddle = saddle;
        return out;
    }
    const double x0 = -1.0 / (2.0 * gamma_coefficient(tq)) * cfg.abscissa_factor;
    return from_integrands([&](int l) { return nd_kingman_integrand(tq, l, x0); }, max_order, cfg);
}

}  // namespace pollaczek
