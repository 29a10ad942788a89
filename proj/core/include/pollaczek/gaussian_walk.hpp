#pragma once

#include <complex>
#include <vector>

#include "pollaczek/moments.hpp"
#include "pollaczek/quadrature.hpp"

// Moments and cumulants of M_beta, the all-time maximum of the Gaussian
// random walk with drift -beta, by two independent routes: the contour
// integral over z = -beta + iy, and the Riemann-zeta series valid for
// 0 < beta < 2 sqrt(pi). The two agreeing to 1e-8 is the module's main
// correctness check.

namespace pollaczek {

enum class MgwMethod { Integral, ZetaSeries, Auto };

ContourIntegrand mgw_integrand(double beta, int order);

CumulantVector mgw_cumulants_integral(double beta, int max_order, const QuadratureConfig& cfg = {});

// c_l(M_beta) from the zeta series; throws BetaOutOfRange for beta >= 2 sqrt(pi).
CumulantVector mgw_cumulants_zeta(double beta, int max_order);

// Auto prefers the series inside its validity disc and falls back to the
// contour integral.
MomentVector mgw_moments(double beta, int max_order, MgwMethod method = MgwMethod::Auto,
                         const QuadratureConfig& cfg = {});

// log E[exp(-s M_beta)] for Re(s) > -beta, evaluated on a cached contour mesh.
class MgwLst {
  public:
    explicit MgwLst(double beta, const QuadratureConfig& cfg = {});
    std::complex<double> log_lst(std::complex<double> s) const;
    double drift() const { return beta_; }

  private:
    double beta_;
    ContourMesh mesh_;
};

}  // namespace pollaczek
