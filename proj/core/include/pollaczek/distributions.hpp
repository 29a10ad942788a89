#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pollaczek/complexmath.hpp"
#include "pollaczek/errors.hpp"

// Service / interarrival time models. Every spec is normalized to mean 1 at
// construction; the moment generating function f(z) = E[exp(zX)] and its
// first three derivatives are available in closed form on the analyticity
// strip Re(z) < mgf_edge.

namespace pollaczek {

struct GammaSpec {
    double shape;  // k > 0
    double scale;  // theta > 0, with k*theta == 1
};

// Mean of `points` i.i.d. uniforms on [1-half_width, 1+half_width].
struct BatesSpec {
    int points;
    double half_width;
};

// Equidistant atoms (1-half_width) + k*2*half_width/(points-1), k = 0..points-1,
// each with mass 1/points.
struct LatticeSpec {
    int points;
    double half_width;
};

// Atoms {low, high} with masses chosen so the mean is 1.
struct TwoPointSpec {
    double low;   // in (0,1)
    double high;  // > 1
};

struct InverseGaussianSpec {
    double shape;  // lambda > 0, mu fixed to 1
};

struct DeterministicSpec {};

using SpecVariant =
    std::variant<GammaSpec, BatesSpec, LatticeSpec, TwoPointSpec, InverseGaussianSpec, DeterministicSpec>;

struct Atom {
    double value;
    double mass;
};

class DistributionSpec {
  public:
    // Validates parameters and attaches derived quantities; throws Error on
    // NonUnitMean / NonPositiveParameter / DegenerateLattice /
    // TwoPointOrderViolation.
    explicit DistributionSpec(SpecVariant v);

    const SpecVariant& variant() const { return v_; }
    double mean() const { return 1.0; }
    double variance() const { return variance_; }
    double third_cumulant() const { return c3_; }
    // Right edge of the strip where E[exp(zX)] is analytic (inf if entire).
    double mgf_edge() const { return edge_; }

    bool is_lattice() const { return atoms_.has_value(); }
    const std::vector<Atom>& atoms() const;
    // Spacing between adjacent atoms (oscillation period of |f(x+iy)| in y is
    // 2*pi / gap); only for lattice specs.
    double atom_gap() const { return atom_gap_; }
    double max_atom() const { return max_atom_; }

    std::string describe() const;

  private:
    SpecVariant v_;
    double variance_ = 0.0;
    double c3_ = 0.0;
    double edge_ = std::numeric_limits<double>::infinity();
    std::optional<std::vector<Atom>> atoms_;
    double atom_gap_ = 0.0;
    double max_atom_ = 0.0;
};

// Factories for the supported families.
DistributionSpec gamma_spec(double shape, double scale);
DistributionSpec exponential_spec();               // Gamma(1, 1)
DistributionSpec erlang_spec(int stages);          // Gamma(s, 1/s)
DistributionSpec bates_spec(int points, double half_width);
DistributionSpec lattice_spec(int points, double half_width);
DistributionSpec two_point_spec(double low, double high);
DistributionSpec inverse_gaussian_spec(double shape);
DistributionSpec deterministic_spec();

// Same validation path, for specs assembled programmatically.
inline DistributionSpec validate(SpecVariant v) { return DistributionSpec(std::move(v)); }

// Upper bound for sup_{|y| >= y_min} |f(x + iy)|, monotone nonincreasing in
// y_min. Exact for Gamma and inverse Gaussian; for lattice specs there is no
// decay and the bound is f(x).
double mgf_abs_bound(const DistributionSpec& spec, double x, double y_min);

namespace detail {

// --- small series kernels for the Bates log-mgf around w = 0 -------------

template <class R>
std::complex<R> log_sinhc(const std::complex<R>& w) {
    // log(sinh(w)/w)
    if (std::abs(w) < R(0.15)) {
        const std::complex<R> w2 = w * w;
        return w2 * (R(1) / R(6) +
                     w2 * (R(-1) / R(180) + w2 * (R(1) / R(2835) + w2 * (R(-1) / R(37800)))));
    }
    return std::log(std::sinh(w) / w);
}

template <class R>
std::complex<R> coth_minus_inv(const std::complex<R>& w) {
    // coth(w) - 1/w
    if (std::abs(w) < R(0.15)) {
        const std::complex<R> w2 = w * w;
        return w * (R(1) / R(3) +
                    w2 * (R(-1) / R(45) + w2 * (R(2) / R(945) + w2 * (R(-1) / R(4725)))));
    }
    return std::cosh(w) / std::sinh(w) - R(1) / w;
}

template <class R>
std::complex<R> inv_sq_minus_csch_sq(const std::complex<R>& w) {
    // 1/w^2 - 1/sinh(w)^2
    if (std::abs(w) < R(0.15)) {
        const std::complex<R> w2 = w * w;
        return R(1) / R(3) +
               w2 * (R(-1) / R(15) + w2 * (R(2) / R(189) + w2 * (R(-1) / R(675))));
    }
    const std::complex<R> s = std::sinh(w);
    return R(1) / (w * w) - R(1) / (s * s);
}

template <class R>
std::complex<R> d_inv_sq_minus_csch_sq(const std::complex<R>& w) {
    // d/dw of the above: -2/w^3 + 2 cosh(w)/sinh(w)^3
    if (std::abs(w) < R(0.15)) {
        const std::complex<R> w2 = w * w;
        return w * (R(-2) / R(15) + w2 * (R(8) / R(189) + w2 * (R(-2) / R(225))));
    }
    const std::complex<R> s = std::sinh(w);
    return R(-2) / (w * w * w) + R(2) * std::cosh(w) / (s * s * s);
}

template <class R>
struct LogMgfDerivs {
    std::complex<R> value;  // log f(z)
    std::complex<R> d1, d2, d3;
};

// log f(z) and its derivatives, analytic per family. No strip checks here;
// callers validate Re(z) < mgf_edge first.
template <class R>
LogMgfDerivs<R> log_mgf_derivs(const DistributionSpec& spec, const std::complex<R>& z) {
    using C = std::complex<R>;
    LogMgfDerivs<R> out;
    const SpecVariant& v = spec.variant();

    if (const auto* g = std::get_if<GammaSpec>(&v)) {
        const R k = R(g->shape), th = R(g->scale);
        const C one_minus = -th * z;  // log f = -k log(1 - theta z)
        out.value = -k * clog1p(one_minus);
        const C d = R(1) - th * z;
        out.d1 = k * th / d;
        out.d2 = k * th * th / (d * d);
        out.d3 = R(2) * k * th * th * th / (d * d * d);
        return out;
    }
    if (const auto* b = std::get_if<BatesSpec>(&v)) {
        const R m = R(b->points), de = R(b->half_width);
        const C w = z * de / m;
        out.value = z + m * log_sinhc(w);
        out.d1 = R(1) + de * coth_minus_inv(w);
        out.d2 = (de * de / m) * inv_sq_minus_csch_sq(w);
        out.d3 = (de * de * de / (m * m)) * d_inv_sq_minus_csch_sq(w);
        return out;
    }
    if (std::get_if<LatticeSpec>(&v) || std::get_if<TwoPointSpec>(&v)) {
        // f = sum_j p_j exp(z a_j); factor out the smallest atom to keep the
        // exponentials tame for large negative Re(z*a_j).
        const auto& atoms = spec.atoms();
        const R a0 = R(atoms.front().value);
        C f(0), f1(0), f2(0), f3(0);
        for (const Atom& a : atoms) {
            const R av = R(a.value);
            const C e = R(a.mass) * std::exp(z * (av - a0));
            f += e;
            f1 += av * e;
            f2 += av * av * e;
            f3 += av * av * av * e;
        }
        out.value = z * a0 + std::log(f);
        const C r1 = f1 / f, r2 = f2 / f, r3 = f3 / f;
        out.d1 = r1;
        out.d2 = r2 - r1 * r1;
        out.d3 = r3 - R(3) * r2 * r1 + R(2) * r1 * r1 * r1;
        return out;
    }
    if (const auto* ig = std::get_if<InverseGaussianSpec>(&v)) {
        // f = exp(lambda (1 - sqrt(1 - 2z/lambda))), principal square root.
        // lambda(1 - sqrt(w)) = 2z/(1 + sqrt(w)) sidesteps the cancellation at
        // small z that otherwise poisons the heavy-traffic contours.
        const R la = R(ig->shape);
        const C w = R(1) - R(2) * z / la;
        const C sq = std::sqrt(w);
        out.value = R(2) * z / (R(1) + sq);
        out.d1 = R(1) / sq;
        out.d2 = (R(1) / la) / (sq * w);
        out.d3 = (R(3) / (la * la)) / (sq * w * w);
        return out;
    }
    // Deterministic(1): f = exp(z)
    out.value = z;
    out.d1 = R(1);
    out.d2 = R(0);
    out.d3 = R(0);
    return out;
}

template <class R>
std::complex<R> log_mgf(const DistributionSpec& spec, const std::complex<R>& z) {
    using C = std::complex<R>;
    const SpecVariant& v = spec.variant();
    if (const auto* g = std::get_if<GammaSpec>(&v)) return -R(g->shape) * clog1p(C(-R(g->scale)) * z);
    if (const auto* b = std::get_if<BatesSpec>(&v)) {
        const R m = R(b->points), de = R(b->half_width);
        return z + m * log_sinhc(z * de / m);
    }
    if (std::get_if<LatticeSpec>(&v) || std::get_if<TwoPointSpec>(&v)) {
        const auto& atoms = spec.atoms();
        const R a0 = R(atoms.front().value);
        C f(0);
        for (const Atom& a : atoms) f += R(a.mass) * std::exp(z * (R(a.value) - a0));
        return z * a0 + std::log(f);
    }
    if (const auto* ig = std::get_if<InverseGaussianSpec>(&v)) {
        const R la = R(ig->shape);
        return R(2) * z / (R(1) + std::sqrt(R(1) - R(2) * z / la));
    }
    return z;
}

}  // namespace detail

void check_strip(const DistributionSpec& spec, double re_z);

// f(z) = E[exp(zX)] on the analyticity strip; throws OutsideAnalyticityStrip.
std::complex<double> mgf(const DistributionSpec& spec, std::complex<double> z);

// r-th derivative of the mgf, r = 1..3, differentiated analytically.
std::complex<double> mgf_derivative(const DistributionSpec& spec, std::complex<double> z, int order);

// (mean, variance, third cumulant) in closed form.
std::array<double, 3> cumulants3(const DistributionSpec& spec);

}  // namespace pollaczek
