#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "pollaczek/errors.hpp"

// Evaluation of the semi-infinite contour integrals
//
//   c_l = (-1)^l l!/pi * scale^l * Int_0^inf Re[ log(1 - g(x0 + iy)) / (x0 + iy)^{l+1} ] dy
//
// that produce waiting-time cumulants. g is always exp(w) for a directly
// computable exponent w (a log-transform of the queue), |g| < 1 on the whole
// contour, and the integrand mixes three length scales: the pole scale |x0|,
// the decay scale of |g|, and (for lattice distributions) a train of revisit
// bumps where |g| climbs back to its y=0 value.

namespace pollaczek {

enum class WorkingPrecision { Double, Extended };

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double initial_truncation = 16.0;  // first chunk [0, Y0]; later chunks double
    double max_truncation = 1e6;
    long max_panels = 400000;
    WorkingPrecision precision = WorkingPrecision::Double;
    // Multiplies the regime's default contour abscissa; the integrals are
    // independent of the abscissa between singularities, which the test suite
    // exercises with factor 1/2.
    double abscissa_factor = 1.0;
};

// Arithmetic progression of candidate revisit bumps along the contour.
struct BumpTrain {
    double period;  // spacing of candidate peaks in y
    double window;  // half-width that gets a fine fixed mesh around each peak
    double fine;    // panel width inside the window
};

struct ContourIntegrand {
    // w(y) = log g(abscissa + iy), for y >= 0.
    std::function<std::complex<double>(double)> log_g;
    std::function<std::complex<long double>(long double)> log_g_ext;
    double abscissa = -1.0;  // x0 < 0
    int order = 1;           // l >= 1
    double result_scale = 1.0;
    // Y -> upper bound on sup_{|y| >= Y} |g|, monotone nonincreasing. May be
    // empty or return values >= 1 where no useful bound exists (lattice
    // transforms); the driver then falls back to the measured algebraic decay
    // of chunk masses.
    std::function<double(double)> abs_g_tail;
    std::vector<double> breakpoints;
    std::vector<BumpTrain> bump_trains;
};

struct IntegralResult {
    double value = 0.0;      // cumulant, prefactor included
    double abs_error = 0.0;  // panel error estimate + truncation bound, same units
    double truncation = 0.0;
    long panels = 0;
    long evals = 0;
};

IntegralResult cumulant_contour_integral(const ContourIntegrand& ci, const QuadratureConfig& cfg);

// Converged node set of the order-1 integrand, reused to evaluate the
// Pollaczek log-LST at many transform arguments without re-running the
// adaptive refinement (the log(1-g) factor does not depend on the argument).
struct ContourMesh {
    double abscissa = 0.0;
    double truncation = 0.0;
    std::vector<double> nodes;                          // y > 0
    std::vector<double> weights;
    std::vector<std::complex<double>> log_one_minus_g;  // at abscissa + i*node
};

ContourMesh contour_mesh(const ContourIntegrand& ci, const QuadratureConfig& cfg);

// log E[exp(-sX)] = -(1/2pi) Int s log(1-g(z)) / (z(s-z)) dy over the full
// contour, synthesized from the y > 0 half by conjugate symmetry of g.
std::complex<double> pollaczek_log_lst(const ContourMesh& mesh, std::complex<double> s);

}  // namespace pollaczek
