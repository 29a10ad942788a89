#pragma once

#include <complex>
#include <optional>

#include "pollaczek/distributions.hpp"
#include "pollaczek/quadrature.hpp"

// The transform layer: psi(-zeta) = E[exp(-zeta (V - U/rho))], its log
// h(zeta) with derivatives, the saddle point of h on the negative real axis,
// and the contour integrands each regime feeds into the quadrature.

namespace pollaczek {

struct QueueInstance {
    DistributionSpec service;  // V, mean 1
    DistributionSpec arrival;  // U, mean 1
    double load;               // rho in (0,1)

    QueueInstance(DistributionSpec v, DistributionSpec u, double rho);

    double alpha() const { return 1.0 - load; }
    // h is analytic for zeta_lo < Re(zeta) < zeta_hi
    double zeta_lo() const { return -service.mgf_edge(); }
    double zeta_hi() const { return load * arrival.mgf_edge(); }
};

enum class Regime { Classical, NdKingman, NdGaussian };

// Cyclically thinned queue: interarrival and service times are means of n
// i.i.d. copies, with the load tied to the thinning factor. NdKingman keeps
// n(1 - rho_n) = beta, NdGaussian keeps sqrt(n)(1 - rho_n) = beta.
struct ThinnedQueueInstance {
    QueueInstance base;
    long n;
    double beta;
    Regime regime;
};

ThinnedQueueInstance make_thinned(DistributionSpec service, DistributionSpec arrival, long n,
                                  double beta, Regime regime);

template <class R>
std::complex<R> log_psi(const QueueInstance& q, const std::complex<R>& zeta) {
    return detail::log_mgf(q.service, -zeta) +
           detail::log_mgf(q.arrival, zeta / R(q.load));
}

// psi(-zeta; rho) with strip check.
std::complex<double> psi(const QueueInstance& q, std::complex<double> zeta);

// psi^n(-z/n), evaluated as exp(n h(z/n)).
std::complex<double> phi_thinned(const ThinnedQueueInstance& tq, std::complex<double> z);

struct HDerivs {
    std::complex<double> h, h1, h2, h3;
};

// h(zeta) = log psi(-zeta) assembled from the per-factor log-mgf derivatives.
HDerivs h_and_derivs(const QueueInstance& q, std::complex<double> zeta);

struct NewtonConfig {
    int max_iter = 50;
    double tol = 1e-13;  // on |h'(zeta_sp)|
};

struct SaddleInfo {
    double zeta_sp = 0.0;
    double h_pp = 0.0;   // h''(zeta_sp)
    double h_ppp = 0.0;  // h'''(zeta_sp)
    double sigma_n = 0.0;
    double beta_n = 0.0;
    double d2 = 0.0;
    double phi_n = 0.0;
    double B_n = 0.0;
    int newton_iterations = 0;
    bool assumption_ok = true;
    double assumption_margin = 0.0;
};

// Saddle point of h on the negative real axis (h'(zeta_sp) = 0), damped
// Newton seeded with -(1-rho)/(rho (sigma_V^2 + sigma_U^2/rho^2)). Fills
// zeta_sp, h_pp, h_ppp and the iteration count only.
SaddleInfo find_saddle_point(const QueueInstance& q, const NewtonConfig& cfg = {});

struct AssumptionGrid {
    double delta = 0.05;   // scan starts at |y| = delta
    double y_max = 0.0;    // 0 = automatic (50, stretched by the lattice period)
    double step = 0.01;
    double epsilon = 1e-4;  // required gap for the ok flag
};

struct AssumptionScan {
    bool ok = true;
    double margin = 0.0;  // psi(-x) - max_y |psi(-x + iy)| over the grid
    double worst_y = 0.0;
};

// Diagnostic scan of |psi| along the vertical line through x; advisory only,
// lattice models legitimately violate it and still compute fine.
AssumptionScan assumption_check(const QueueInstance& q, double x, const AssumptionGrid& grid = {});

// Full Gaussian-regime parameter set sigma_n, beta_n, d2, phi_n, B_n.
SaddleInfo gaussian_regime_params(const ThinnedQueueInstance& tq, const NewtonConfig& cfg = {});

// --- contour integrand builders ------------------------------------------
// The abscissa is chosen by the caller: -1/sigma_alpha^2 (classical),
// -1/(2 gamma_n) (thinned Kingman), zeta_sp (thinned Gaussian).

ContourIntegrand classical_integrand(const QueueInstance& q, int order, double abscissa);
ContourIntegrand nd_kingman_integrand(const ThinnedQueueInstance& tq, int order, double abscissa);
ContourIntegrand nd_gaussian_integrand(const ThinnedQueueInstance& tq, const SaddleInfo& saddle,
                                       int order, double abscissa);

}  // namespace pollaczek
