#include "pollaczek/lst.hpp"

#include <cmath>
#include <memory>

#include "pollaczek/approx.hpp"

namespace pollaczek {
namespace {

double mean_from_mesh(const ContourMesh& mesh, double scale) {
    // c_1 of the scaled variable straight off the cached l=1 mesh
    double acc = 0.0;
    for (size_t i = 0; i < mesh.nodes.size(); ++i) {
        const std::complex<double> z(mesh.abscissa, mesh.nodes[i]);
        acc += mesh.weights[i] * (mesh.log_one_minus_g[i] / (z * z)).real();
    }
    return -scale * acc / M_PI;
}

LSTHandle handle_from_mesh(ContourMesh mesh, double arg_scale, std::string label) {
    auto shared = std::make_shared<ContourMesh>(std::move(mesh));
    LSTHandle h;
    h.mean_hint = mean_from_mesh(*shared, arg_scale);
    h.label = std::move(label);
    h.eval = [shared, arg_scale](std::complex<double> s) {
        return std::exp(pollaczek_log_lst(*shared, arg_scale * s));
    };
    return h;
}

}  // namespace

LSTHandle make_exact_lst(const QueueInstance& q, const QuadratureConfig& cfg) {
    const double x0 = -1.0 / sigma_alpha_sq(q) * cfg.abscissa_factor;
    return handle_from_mesh(contour_mesh(classical_integrand(q, 1, x0), cfg), 1.0, "exact alpha*W");
}

LSTHandle make_exact_lst(const ThinnedQueueInstance& tq, const QuadratureConfig& cfg) {
    if (tq.regime == Regime::NdGaussian) {
        const SaddleInfo saddle = gaussian_regime_params(tq);
        const double x0 = saddle.zeta_sp * cfg.abscissa_factor;
        const double scale = 1.0 / (saddle.sigma_n * std::sqrt(double(tq.n)));
        return handle_from_mesh(contour_mesh(nd_gaussian_integrand(tq, saddle, 1, x0), cfg), scale,
                                "exact sqrt(n)/sigma_n*W_n");
    }
    const double x0 = -1.0 / (2.0 * gamma_coefficient(tq)) * cfg.abscissa_factor;
    return handle_from_mesh(contour_mesh(nd_kingman_integrand(tq, 1, x0), cfg), 1.0, "exact W_n");
}

LSTHandle make_exponential_lst(double mean) {
    if (!(mean > 0.0)) raise(ErrorCode::ConfigError, "exponential mean must be positive");
    LSTHandle h;
    h.mean_hint = mean;
    h.label = "exponential";
    h.eval = [mean](std::complex<double> s) { return 1.0 / (1.0 + mean * s); };
    return h;
}

LSTHandle make_mgw_lst(double beta, const QuadratureConfig& cfg) {
    auto lst = std::make_shared<MgwLst>(beta, cfg);
    LSTHandle h;
    h.mean_hint = mgw_moments(beta, 1).m(1);
    h.label = "gaussian-walk maximum";
    h.eval = [lst](std::complex<double> s) { return std::exp(lst->log_lst(s)); };
    return h;
}

LSTHandle make_mgw_refined_lst(const SaddleInfo& saddle, const QuadratureConfig& cfg) {
    const double denom = 1.0 + saddle.beta_n * saddle.phi_n;
    if (!(denom > 0.0))
        raise(ErrorCode::RefinementDegenerate, "1 + beta_n phi_n must be positive");
    auto lst = std::make_shared<MgwLst>(saddle.B_n, cfg);
    const double beta = saddle.beta_n, phi = saddle.phi_n;
    LSTHandle h;
    h.mean_hint = mgw_moments(saddle.B_n, 1).m(1) / (denom * denom);
    h.label = "gaussian-walk maximum (refined)";
    h.eval = [lst, beta, phi, denom](std::complex<double> s) {
        const std::complex<double> r = s / (denom * (1.0 + (s + beta) * phi));
        return std::exp(lst->log_lst(r));
    };
    return h;
}

namespace {

double euler_invert(const LSTHandle& h, double t, const EulerConfig& cfg, bool* unstable) {
    const double A = cfg.discretization;
    const int n = cfg.terms, m = cfg.average;
    if (n < 2 || m < 1 || !(A > 0.0))
        raise(ErrorCode::ConfigError, "EULER needs terms >= 2, average >= 1, discretization > 0");
    const double x = A / (2.0 * t);
    const double pit = M_PI / t;

    auto cdf_hat = [&](std::complex<double> s) { return h.eval(s) / s; };

    std::vector<double> partial(size_t(n + m) + 1);
    double sum = 0.5 * cdf_hat(std::complex<double>(x, 0.0)).real();
    partial[0] = sum;
    for (int k = 1; k <= n + m; ++k) {
        const double term = cdf_hat(std::complex<double>(x, k * pit)).real();
        sum += (k % 2) ? -term : term;
        partial[size_t(k)] = sum;
    }

    auto average = [&](int from) {
        double acc = 0.0, binom = 1.0;  // C(m, j) / 2^m
        for (int j = 0; j <= m; ++j) {
            acc += binom * partial[size_t(from + j)];
            binom *= double(m - j) / double(j + 1);
        }
        return std::ldexp(acc, -m);
    };

    const double e1 = average(n);
    const double e0 = average(n - 1);
    const double scale = std::exp(A / 2.0) / t;
    const double value = scale * e1;
    if (unstable)
        *unstable = std::abs(scale * (e1 - e0)) > cfg.stability_tol * std::max(1.0, std::abs(value));
    return value;
}

}  // namespace

double invert_cdf_at(const LSTHandle& h, double t, const EulerConfig& cfg) {
    if (!(t > 0.0)) raise(ErrorCode::ConfigError, "CDF inversion needs t > 0");
    bool unstable = false;
    const double v = euler_invert(h, t, cfg, &unstable);
    if (unstable)
        raise(ErrorCode::InversionUnstable,
              "Euler partial sums disagree at t=" + std::to_string(t));
    return v;
}

CdfResult invert_cdf(const LSTHandle& h, const std::vector<double>& grid, const EulerConfig& cfg) {
    CdfResult out;
    out.t = grid;
    out.raw.reserve(grid.size());
    out.F.reserve(grid.size());
    for (double t : grid) {
        const double v = invert_cdf_at(h, t, cfg);
        out.raw.push_back(v);
        double clamped = v;
        if (v < 0.0 || v > 1.0) {
            ++out.clamped;
            clamped = std::min(1.0, std::max(0.0, v));
        }
        out.F.push_back(clamped);
    }
    return out;
}

double atom_at_zero(const LSTHandle& h, const EulerConfig& cfg) {
    const double scale = h.mean_hint > 0.0 ? h.mean_hint : 1.0;
    const double v = invert_cdf_at(h, 1e-6 * scale, cfg);
    return std::min(1.0, std::max(0.0, v));
}

}  // namespace pollaczek
