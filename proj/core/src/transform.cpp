#include "pollaczek/transform.hpp"

#include <algorithm>
#include <cmath>

namespace pollaczek {
namespace {

double real_h1(const QueueInstance& q, double zeta) {
    const auto dv = detail::log_mgf_derivs(q.service, std::complex<double>(-zeta, 0.0));
    const auto du = detail::log_mgf_derivs(q.arrival, std::complex<double>(zeta / q.load, 0.0));
    return (-dv.d1 + du.d1 / q.load).real();
}

struct LatticeScale {
    double period;   // candidate revisit spacing in y
    double max_freq; // fastest phase in the factor
};

// Oscillation structure of one mgf factor evaluated at coeff*(x0 + iy).
std::optional<LatticeScale> lattice_scale(const DistributionSpec& spec, double coeff) {
    if (!spec.is_lattice() || spec.atom_gap() <= 0.0) return std::nullopt;
    const double c = std::abs(coeff);
    return LatticeScale{2.0 * M_PI / (c * spec.atom_gap()), c * spec.max_atom()};
}

}  // namespace

QueueInstance::QueueInstance(DistributionSpec v, DistributionSpec u, double rho)
    : service(std::move(v)), arrival(std::move(u)), load(rho) {
    if (!(rho > 0.0 && rho < 1.0))
        raise(ErrorCode::UnstableLoad, "load must lie strictly in (0,1)");
}

ThinnedQueueInstance make_thinned(DistributionSpec service, DistributionSpec arrival, long n,
                                  double beta, Regime regime) {
    if (n < 1) raise(ErrorCode::ConfigError, "thinning factor n must be >= 1");
    if (!(beta > 0.0)) raise(ErrorCode::ConfigError, "drift beta must be positive");
    double one_minus_rho = 0.0;
    switch (regime) {
        case Regime::NdKingman: one_minus_rho = beta / double(n); break;
        case Regime::NdGaussian: one_minus_rho = beta / std::sqrt(double(n)); break;
        default: raise(ErrorCode::ConfigError, "thinned queues use NdKingman or NdGaussian");
    }
    if (one_minus_rho >= 1.0)
        raise(ErrorCode::UnstableLoad, "beta too large for n: rho_n would leave (0,1)");
    return ThinnedQueueInstance{QueueInstance(std::move(service), std::move(arrival), 1.0 - one_minus_rho),
                                n, beta, regime};
}

std::complex<double> psi(const QueueInstance& q, std::complex<double> zeta) {
    if (!(zeta.real() > q.zeta_lo() && zeta.real() < q.zeta_hi()))
        raise(ErrorCode::OutsideAnalyticityStrip, "zeta outside the strip of psi");
    return std::exp(log_psi(q, zeta));
}

std::complex<double> phi_thinned(const ThinnedQueueInstance& tq, std::complex<double> z) {
    const std::complex<double> zeta = z / double(tq.n);
    if (!(zeta.real() > tq.base.zeta_lo() && zeta.real() < tq.base.zeta_hi()))
        raise(ErrorCode::OutsideAnalyticityStrip, "z/n outside the strip of psi");
    return std::exp(double(tq.n) * log_psi(tq.base, zeta));
}

HDerivs h_and_derivs(const QueueInstance& q, std::complex<double> zeta) {
    if (!(zeta.real() > q.zeta_lo() && zeta.real() < q.zeta_hi()))
        raise(ErrorCode::OutsideAnalyticityStrip, "zeta outside the strip of psi");
    const auto dv = detail::log_mgf_derivs(q.service, -zeta);
    const auto du = detail::log_mgf_derivs(q.arrival, zeta / q.load);
    const double r = q.load;
    HDerivs out;
    out.h = dv.value + du.value;
    out.h1 = -dv.d1 + du.d1 / r;
    out.h2 = dv.d2 + du.d2 / (r * r);
    out.h3 = -dv.d3 + du.d3 / (r * r * r);
    const std::complex<double> f = std::exp(out.h);
    if (f.real() <= 0.0 && std::abs(f.imag()) < 1e-300)
        raise(ErrorCode::LogBranchFailure, "psi(-zeta) landed on the negative real axis");
    return out;
}

SaddleInfo find_saddle_point(const QueueInstance& q, const NewtonConfig& cfg) {
    const double sigma2 = q.service.variance() + q.arrival.variance() / (q.load * q.load);
    const double seed = -(1.0 - q.load) / (q.load * sigma2);
    const double lo_limit = q.zeta_lo();

    // Bracket the root of the increasing function h': h'(0) = 1/rho - 1 > 0.
    double hi = 0.0;
    double lo = std::max(seed, lo_limit * 0.999 + hi * 0.001);
    int iters = 0;
    while (real_h1(q, lo) > 0.0) {
        hi = lo;
        double next = lo * 2.0;
        if (next <= lo_limit) next = 0.5 * (lo + lo_limit);
        if (std::abs(next - lo) < 1e-300 || ++iters > 200)
            raise(ErrorCode::NewtonDivergence, "could not bracket the saddle inside the strip");
        lo = next;
    }

    double zeta = std::clamp(seed, lo, hi);
    for (int it = 0; it < cfg.max_iter; ++it) {
        const auto d = h_and_derivs(q, {zeta, 0.0});
        const double g = d.h1.real();
        const double gp = d.h2.real();
        if (std::abs(g) < cfg.tol) {
            if (zeta >= 0.0)
                raise(ErrorCode::NonNegativeSaddle, "saddle point is not negative; load too low?");
            SaddleInfo s;
            s.zeta_sp = zeta;
            s.h_pp = gp;
            s.h_ppp = d.h3.real();
            s.newton_iterations = it;
            return s;
        }
        if (g > 0.0)
            hi = zeta;
        else
            lo = zeta;
        double next = zeta - g / gp;
        int halvings = 0;
        while ((next <= lo || next >= hi) && halvings < 30) {
            next = 0.5 * (zeta + next);
            ++halvings;
        }
        if (next <= lo || next >= hi) next = 0.5 * (lo + hi);  // bisection fallback
        zeta = next;
    }
    raise(ErrorCode::NewtonDivergence, "saddle Newton did not reach tolerance");
}

AssumptionScan assumption_check(const QueueInstance& q, double x, const AssumptionGrid& grid) {
    double y_max = grid.y_max;
    if (y_max <= 0.0) {
        double period = 1.0;
        if (auto lv = lattice_scale(q.service, 1.0)) period = std::max(period, lv->period);
        if (auto lu = lattice_scale(q.arrival, 1.0 / q.load)) period = std::max(period, lu->period);
        const bool lattice = q.service.is_lattice() || q.arrival.is_lattice();
        y_max = 50.0 * (lattice ? period : 1.0);
    }
    const double at_axis = std::exp(log_psi(q, std::complex<double>(x, 0.0)).real());
    double worst = -std::numeric_limits<double>::infinity();
    double worst_y = grid.delta;
    for (double y = grid.delta; y <= y_max; y += grid.step) {
        const double mag = std::exp(log_psi(q, std::complex<double>(x, -y)).real());
        if (mag > worst) {
            worst = mag;
            worst_y = y;
        }
    }
    AssumptionScan out;
    out.margin = at_axis - worst;
    out.worst_y = worst_y;
    out.ok = out.margin > grid.epsilon;
    return out;
}

SaddleInfo gaussian_regime_params(const ThinnedQueueInstance& tq, const NewtonConfig& cfg) {
    if (tq.regime != Regime::NdGaussian)
        raise(ErrorCode::ConfigError, "gaussian_regime_params needs an NdGaussian instance");
    SaddleInfo s = find_saddle_point(tq.base, cfg);
    const double sqrt_n = std::sqrt(double(tq.n));
    s.sigma_n = std::sqrt(s.h_pp);
    s.beta_n = -s.zeta_sp * s.sigma_n * sqrt_n;
    s.d2 = -s.h_ppp / (6.0 * s.h_pp);
    s.phi_n = s.d2 / (s.sigma_n * sqrt_n);
    s.B_n = s.beta_n / (1.0 + s.beta_n * s.phi_n);
    const AssumptionScan scan = assumption_check(tq.base, s.zeta_sp);
    s.assumption_ok = scan.ok;
    s.assumption_margin = scan.margin;
    return s;
}

namespace {

struct BuilderScales {
    double width;  // local 1/e half-width of |g| near y = 0
};

void add_common_breakpoints(ContourIntegrand& ci, double width) {
    const double ax = std::abs(ci.abscissa);
    for (double b : {ax / 4, ax, 4 * ax, width / 2, width, 4 * width, 1.0, 10.0})
        if (b > 0.0 && std::isfinite(b)) ci.breakpoints.push_back(b);
}

void add_train(ContourIntegrand& ci, const std::optional<LatticeScale>& s, double width) {
    if (!s) return;
    BumpTrain t;
    t.period = s->period;
    t.fine = std::min(width, s->period / 8.0);
    t.window = std::min(6.0 * width, 0.45 * s->period);
    ci.bump_trains.push_back(t);
}

}  // namespace

ContourIntegrand classical_integrand(const QueueInstance& q, int order, double abscissa) {
    if (!(abscissa < 0.0)) raise(ErrorCode::ConfigError, "classical contour abscissa must be negative");
    const double alpha = q.alpha();
    if (!(-alpha * abscissa < q.service.mgf_edge()))
        raise(ErrorCode::OutsideAnalyticityStrip, "classical contour leaves the strip of psi");

    ContourIntegrand ci;
    ci.abscissa = abscissa;
    ci.order = order;
    const QueueInstance qc = q;
    ci.log_g = [qc, alpha, abscissa](double y) {
        return log_psi(qc, std::complex<double>(alpha * abscissa, alpha * y));
    };
    ci.log_g_ext = [qc, alpha, abscissa](long double y) {
        return log_psi(qc, std::complex<long double>((long double)alpha * abscissa,
                                                     (long double)alpha * y));
    };
    ci.abs_g_tail = [qc, alpha, abscissa](double y) {
        return mgf_abs_bound(qc.service, -alpha * abscissa, alpha * y) *
               mgf_abs_bound(qc.arrival, alpha * abscissa / qc.load, alpha * y / qc.load);
    };

    const double h2 = h_and_derivs(q, {alpha * abscissa, 0.0}).h2.real();
    const double width = 1.0 / (alpha * std::sqrt(h2));
    add_common_breakpoints(ci, width);
    add_train(ci, lattice_scale(q.service, alpha), width);
    add_train(ci, lattice_scale(q.arrival, alpha / q.load), width);
    return ci;
}

ContourIntegrand nd_kingman_integrand(const ThinnedQueueInstance& tq, int order, double abscissa) {
    if (!(abscissa < 0.0)) raise(ErrorCode::ConfigError, "contour abscissa must be negative");
    const double n = double(tq.n);
    const QueueInstance qc = tq.base;
    if (!(-abscissa / n < qc.service.mgf_edge()))
        raise(ErrorCode::OutsideAnalyticityStrip, "thinned contour leaves the strip of psi");

    ContourIntegrand ci;
    ci.abscissa = abscissa;
    ci.order = order;
    ci.log_g = [qc, n, abscissa](double y) {
        return n * log_psi(qc, std::complex<double>(abscissa / n, y / n));
    };
    ci.log_g_ext = [qc, n, abscissa](long double y) {
        return (long double)n *
               log_psi(qc, std::complex<long double>((long double)abscissa / (long double)n,
                                                     y / (long double)n));
    };
    ci.abs_g_tail = [qc, n, abscissa](double y) {
        const double per = mgf_abs_bound(qc.service, -abscissa / n, y / n) *
                           mgf_abs_bound(qc.arrival, abscissa / (n * qc.load), y / (n * qc.load));
        return per >= 1.0 ? per : std::pow(per, n);
    };

    const double h2 = h_and_derivs(tq.base, {abscissa / n, 0.0}).h2.real();
    const double width = std::sqrt(n / h2);
    add_common_breakpoints(ci, width);
    add_train(ci, lattice_scale(qc.service, 1.0 / n), width);
    add_train(ci, lattice_scale(qc.arrival, 1.0 / (n * qc.load)), width);
    return ci;
}

ContourIntegrand nd_gaussian_integrand(const ThinnedQueueInstance& tq, const SaddleInfo& saddle,
                                       int order, double abscissa) {
    if (!(abscissa < 0.0)) raise(ErrorCode::ConfigError, "contour abscissa must be negative");
    const double n = double(tq.n);
    const QueueInstance qc = tq.base;
    if (!(-abscissa < qc.service.mgf_edge()))
        raise(ErrorCode::OutsideAnalyticityStrip, "saddle contour leaves the strip of psi");

    ContourIntegrand ci;
    ci.abscissa = abscissa;
    ci.order = order;
    ci.result_scale = 1.0 / (saddle.sigma_n * std::sqrt(n));
    ci.log_g = [qc, n, abscissa](double y) {
        return n * log_psi(qc, std::complex<double>(abscissa, y));
    };
    ci.log_g_ext = [qc, n, abscissa](long double y) {
        return (long double)n *
               log_psi(qc, std::complex<long double>((long double)abscissa, y));
    };
    ci.abs_g_tail = [qc, n, abscissa](double y) {
        const double per = mgf_abs_bound(qc.service, -abscissa, y) *
                           mgf_abs_bound(qc.arrival, abscissa / qc.load, y / qc.load);
        return per >= 1.0 ? per : std::pow(per, n);
    };

    const double h2 = h_and_derivs(tq.base, {abscissa, 0.0}).h2.real();
    const double width = 1.0 / std::sqrt(n * h2);
    add_common_breakpoints(ci, width);
    add_train(ci, lattice_scale(qc.service, 1.0), width);
    add_train(ci, lattice_scale(qc.arrival, 1.0 / qc.load), width);
    return ci;
}

}  // namespace pollaczek
