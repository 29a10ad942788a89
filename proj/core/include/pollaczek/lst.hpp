#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "pollaczek/gaussian_walk.hpp"
#include "pollaczek/moments.hpp"

// Waiting-time CDFs by numeric Laplace-Stieltjes transform inversion with the
// Abate-Whitt EULER algorithm (Bromwich trapezoid + Euler summation), applied
// to the transform of the CDF, evaluator(s)/s. Exact transforms come from the
// Pollaczek integral on a cached contour mesh, approximate ones from the
// limiting exponential / Gaussian-walk laws.

namespace pollaczek {

struct LSTHandle {
    // E[exp(-sX)] for Re(s) >= 0.
    std::function<std::complex<double>(std::complex<double>)> eval;
    double mean_hint = 1.0;
    std::string label;
};

// Exact LST of the regime-scaled waiting time (alpha W, W_n, sqrt(n)/sigma_n W_n).
LSTHandle make_exact_lst(const QueueInstance& q, const QuadratureConfig& cfg = {});
LSTHandle make_exact_lst(const ThinnedQueueInstance& tq, const QuadratureConfig& cfg = {});

LSTHandle make_exponential_lst(double mean);
LSTHandle make_mgw_lst(double beta, const QuadratureConfig& cfg = {});
// Refined Gaussian limit: s -> E[exp(-R_n(s) M_{B_n})] with
// R_n(s) = s/((1+beta_n phi_n)(1+(s+beta_n) phi_n)).
LSTHandle make_mgw_refined_lst(const SaddleInfo& saddle, const QuadratureConfig& cfg = {});

struct EulerConfig {
    double discretization = 18.4;  // A; discretization error ~ exp(-A) for |F| <= 1
    int terms = 38;
    int average = 11;  // binomial averaging width
    double stability_tol = 1e-6;
};

// P(X <= t) for a single t > 0.
double invert_cdf_at(const LSTHandle& h, double t, const EulerConfig& cfg = {});

struct CdfResult {
    std::vector<double> t;
    std::vector<double> raw;  // inversion output before clamping
    std::vector<double> F;    // clamped to [0,1]
    long clamped = 0;
};

CdfResult invert_cdf(const LSTHandle& h, const std::vector<double>& grid,
                     const EulerConfig& cfg = {});

// P(X = 0), recovered as the t -> 0+ limit of the inverted CDF.
double atom_at_zero(const LSTHandle& h, const EulerConfig& cfg = {});

}  // namespace pollaczek
