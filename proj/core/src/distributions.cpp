#include "pollaczek/distributions.hpp"

#include <algorithm>
#include <sstream>

namespace pollaczek {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonUnitMean: return "NonUnitMean";
        case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
        case ErrorCode::DegenerateLattice: return "DegenerateLattice";
        case ErrorCode::TwoPointOrderViolation: return "TwoPointOrderViolation";
        case ErrorCode::OutsideAnalyticityStrip: return "OutsideAnalyticityStrip";
        case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
        case ErrorCode::LogBranchFailure: return "LogBranchFailure";
        case ErrorCode::NewtonDivergence: return "NewtonDivergence";
        case ErrorCode::NonNegativeSaddle: return "NonNegativeSaddle";
        case ErrorCode::TruncationFailure: return "TruncationFailure";
        case ErrorCode::PanelLimitExceeded: return "PanelLimitExceeded";
        case ErrorCode::BetaOutOfRange: return "BetaOutOfRange";
        case ErrorCode::RefinementDegenerate: return "RefinementDegenerate";
        case ErrorCode::InversionUnstable: return "InversionUnstable";
        case ErrorCode::UnstableLoad: return "UnstableLoad";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "UnknownError";
}

DistributionSpec::DistributionSpec(SpecVariant v) : v_(std::move(v)) {
    if (auto* g = std::get_if<GammaSpec>(&v_)) {
        if (g->shape <= 0.0 || g->scale <= 0.0)
            raise(ErrorCode::NonPositiveParameter, "gamma shape and scale must be positive");
        if (std::abs(g->shape * g->scale - 1.0) > 1e-12)
            raise(ErrorCode::NonUnitMean, "gamma requires shape*scale == 1");
        g->scale = 1.0 / g->shape;  // normalize exactly
        variance_ = g->shape * g->scale * g->scale;  // = scale
        c3_ = 2.0 * g->shape * g->scale * g->scale * g->scale;
        edge_ = 1.0 / g->scale;
        return;
    }
    if (const auto* b = std::get_if<BatesSpec>(&v_)) {
        if (b->points < 1) raise(ErrorCode::DegenerateLattice, "bates needs points >= 1");
        if (b->half_width <= 0.0 || b->half_width > 1.0)
            raise(ErrorCode::NonPositiveParameter, "bates half_width must lie in (0, 1]");
        variance_ = b->half_width * b->half_width / (3.0 * b->points);
        c3_ = 0.0;
        return;
    }
    if (const auto* l = std::get_if<LatticeSpec>(&v_)) {
        if (l->points < 2) raise(ErrorCode::DegenerateLattice, "lattice needs points >= 2");
        if (l->half_width <= 0.0 || l->half_width > 1.0)
            raise(ErrorCode::NonPositiveParameter, "lattice half_width must lie in (0, 1]");
        const int m = l->points;
        const double d = l->half_width;
        std::vector<Atom> atoms(m);
        const double gap = 2.0 * d / (m - 1);
        for (int k = 0; k < m; ++k) atoms[k] = {1.0 - d + k * gap, 1.0 / m};
        atoms_ = std::move(atoms);
        atom_gap_ = gap;
        max_atom_ = 1.0 + d;
        variance_ = d * d * (m + 1) / (3.0 * (m - 1));
        c3_ = 0.0;
        return;
    }
    if (const auto* t = std::get_if<TwoPointSpec>(&v_)) {
        if (!(t->low > 0.0 && t->low < 1.0 && t->high > 1.0))
            raise(ErrorCode::TwoPointOrderViolation, "two-point needs 0 < low < 1 < high");
        const double a = t->low, b = t->high;
        const double p = (b - 1.0) / (b - a);
        atoms_ = std::vector<Atom>{{a, p}, {b, 1.0 - p}};
        atom_gap_ = b - a;
        max_atom_ = b;
        variance_ = (1.0 - a) * (b - 1.0);
        c3_ = (a + b - 2.0) * variance_;
        return;
    }
    if (const auto* ig = std::get_if<InverseGaussianSpec>(&v_)) {
        if (ig->shape <= 0.0) raise(ErrorCode::NonPositiveParameter, "inverse gaussian shape must be positive");
        variance_ = 1.0 / ig->shape;
        c3_ = 3.0 / (ig->shape * ig->shape);
        edge_ = ig->shape / 2.0;
        return;
    }
    // Deterministic(1)
    variance_ = 0.0;
    c3_ = 0.0;
}

const std::vector<Atom>& DistributionSpec::atoms() const {
    if (!atoms_) raise(ErrorCode::UnsupportedOrder, "atoms() is only defined for lattice specs");
    return *atoms_;
}

std::string DistributionSpec::describe() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GammaSpec>)
                os << "gamma(shape=" << s.shape << ", scale=" << s.scale << ")";
            else if constexpr (std::is_same_v<T, BatesSpec>)
                os << "bates(points=" << s.points << ", half_width=" << s.half_width << ")";
            else if constexpr (std::is_same_v<T, LatticeSpec>)
                os << "lattice(points=" << s.points << ", half_width=" << s.half_width << ")";
            else if constexpr (std::is_same_v<T, TwoPointSpec>)
                os << "two_point(low=" << s.low << ", high=" << s.high << ")";
            else if constexpr (std::is_same_v<T, InverseGaussianSpec>)
                os << "inverse_gaussian(shape=" << s.shape << ")";
            else
                os << "deterministic(1)";
        },
        v_);
    return os.str();
}

DistributionSpec gamma_spec(double shape, double scale) { return DistributionSpec(GammaSpec{shape, scale}); }
DistributionSpec exponential_spec() { return gamma_spec(1.0, 1.0); }
DistributionSpec erlang_spec(int stages) {
    if (stages < 1) raise(ErrorCode::NonPositiveParameter, "erlang needs stages >= 1");
    return gamma_spec(static_cast<double>(stages), 1.0 / stages);
}
DistributionSpec bates_spec(int points, double half_width) {
    return DistributionSpec(BatesSpec{points, half_width});
}
DistributionSpec lattice_spec(int points, double half_width) {
    return DistributionSpec(LatticeSpec{points, half_width});
}
DistributionSpec two_point_spec(double low, double high) {
    return DistributionSpec(TwoPointSpec{low, high});
}
DistributionSpec inverse_gaussian_spec(double shape) {
    return DistributionSpec(InverseGaussianSpec{shape});
}
DistributionSpec deterministic_spec() { return DistributionSpec(DeterministicSpec{}); }

void check_strip(const DistributionSpec& spec, double re_z) {
    if (re_z >= spec.mgf_edge())
        raise(ErrorCode::OutsideAnalyticityStrip,
              "Re(z) must stay below the analyticity edge of " + spec.describe());
}

std::complex<double> mgf(const DistributionSpec& spec, std::complex<double> z) {
    check_strip(spec, z.real());
    return std::exp(detail::log_mgf(spec, z));
}

std::complex<double> mgf_derivative(const DistributionSpec& spec, std::complex<double> z, int order) {
    if (order < 1 || order > 3)
        raise(ErrorCode::UnsupportedOrder, "mgf derivatives available for orders 1..3");
    check_strip(spec, z.real());
    const auto d = detail::log_mgf_derivs(spec, z);
    const std::complex<double> f = std::exp(d.value);
    switch (order) {
        case 1: return f * d.d1;
        case 2: return f * (d.d2 + d.d1 * d.d1);
        default: return f * (d.d3 + 3.0 * d.d2 * d.d1 + d.d1 * d.d1 * d.d1);
    }
}

std::array<double, 3> cumulants3(const DistributionSpec& spec) {
    return {1.0, spec.variance(), spec.third_cumulant()};
}

double mgf_abs_bound(const DistributionSpec& spec, double x, double y_min) {
    check_strip(spec, x);
    const double at_axis = std::exp(detail::log_mgf(spec, std::complex<double>(x, 0.0)).real());
    const double y = std::abs(y_min);
    if (y == 0.0) return at_axis;

    const SpecVariant& v = spec.variant();
    if (const auto* g = std::get_if<GammaSpec>(&v)) {
        const double a = 1.0 - g->scale * x;
        const double b = g->scale * y;
        return std::pow(a * a + b * b, -g->shape / 2.0);
    }
    if (const auto* b = std::get_if<BatesSpec>(&v)) {
        const double m = b->points, de = b->half_width;
        const double wr = x * de / m;
        const double num = std::sqrt(std::sinh(wr) * std::sinh(wr) + 1.0);
        const double decay = std::exp(x) * std::pow(num / (de * y / m), m);
        return std::min(at_axis, decay);
    }
    if (const auto* ig = std::get_if<InverseGaussianSpec>(&v)) {
        const double la = ig->shape;
        // Re sqrt(1 - 2z/la) >= sqrt(|y|/la) for Re(z) < la/2
        const double decay = std::exp(la - std::sqrt(la * y));
        return std::min(at_axis, decay);
    }
    // Lattice, two-point, deterministic: |f(x+iy)| <= f(x) and the bound is tight
    // infinitely often, so there is nothing better.
    return at_axis;
}

}  // namespace pollaczek
