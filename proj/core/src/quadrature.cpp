#include "pollaczek/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "pollaczek/complexmath.hpp"

namespace pollaczek {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kGaussW[8] = {
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
};

template <class R>
struct Evaluator {
    std::function<std::complex<R>(R)> log_g;
    R abscissa;
    int order;
    long evals = 0;

    // Re[ log(1 - e^{w(y)}) / z^{l+1} ]
    R integrand(R y) {
        ++evals;
        const std::complex<R> w = log_g(y);
        std::complex<R> log_u;
        if (w.real() < R(-9)) {
            log_u = log_one_minus_exp(w);
        } else {
            const std::complex<R> u = -cexpm1(w);
            if (!(u.real() > R(0)))
                raise(ErrorCode::LogBranchFailure,
                      "Re(1-g) <= 0 on the contour at y=" + std::to_string(double(y)) +
                          "; abscissa is outside the admissible range");
            log_u = std::log(u);
        }
        const std::complex<R> z(abscissa, y);
        return (log_u / cpow_int(z, order + 1)).real();
    }
};

template <class R>
struct Panel {
    R a, b;
    R value;
    R abs_mass;
    R error;
};

template <class R>
Panel<R> gk15(Evaluator<R>& ev, R a, R b) {
    const R mid = (a + b) / R(2);
    const R hw = (b - a) / R(2);
    R k15 = 0, g7 = 0, mass = 0;
    {
        const R f = ev.integrand(mid);
        k15 += kKronrodW[7] * f;
        g7 += kGaussW[7] * f;
        mass += kKronrodW[7] * std::abs(f);
    }
    for (int i = 0; i < 7; ++i) {
        const R dx = hw * R(kGK15Nodes[i]);
        const R f1 = ev.integrand(mid - dx);
        const R f2 = ev.integrand(mid + dx);
        k15 += R(kKronrodW[i]) * (f1 + f2);
        g7 += R(kGaussW[i]) * (f1 + f2);
        mass += R(kKronrodW[i]) * (std::abs(f1) + std::abs(f2));
    }
    return {a, b, k15 * hw, mass * hw, std::abs(k15 - g7) * hw};
}

template <class R>
struct HeapLess {
    bool operator()(const Panel<R>& x, const Panel<R>& y) const { return x.error < y.error; }
};

struct Factorials {
    static double get(int l) {
        double f = 1.0;
        for (int i = 2; i <= l; ++i) f *= i;
        return f;
    }
};

template <class R>
struct Driver {
    Evaluator<R> ev;
    const ContourIntegrand& ci;
    const QuadratureConfig& cfg;
    std::vector<Panel<R>> heap;    // refinable panels
    std::vector<Panel<R>> frozen;  // panels at their width or noise floor
    double heap_err = 0.0;
    double frozen_err = 0.0;
    double sum_val = 0.0;
    double coarse_cap = std::numeric_limits<double>::infinity();
    std::vector<double> chunk_mass;
    double prefactor;

    Driver(Evaluator<R> e, const ContourIntegrand& c, const QuadratureConfig& f)
        : ev(std::move(e)), ci(c), cfg(f) {
        const int l = ci.order;
        prefactor = ((l % 2) ? -1.0 : 1.0) * Factorials::get(l) / M_PI *
                    std::pow(ci.result_scale, l);
        for (const BumpTrain& t : ci.bump_trains) coarse_cap = std::min(coarse_cap, t.period);
    }

    long panel_count() const { return long(heap.size() + frozen.size()); }
    double sum_err() const { return heap_err + frozen_err; }

    void push(Panel<R> p) {
        heap_err += double(p.error);
        sum_val += double(p.value);
        heap.push_back(std::move(p));
        std::push_heap(heap.begin(), heap.end(), HeapLess<R>{});
    }

    void freeze(Panel<R> p) {
        frozen_err += double(p.error);
        sum_val += double(p.value);
        frozen.push_back(std::move(p));
    }

    Panel<R> pop() {
        std::pop_heap(heap.begin(), heap.end(), HeapLess<R>{});
        Panel<R> p = heap.back();
        heap.pop_back();
        heap_err -= double(p.error);
        sum_val -= double(p.value);
        return p;
    }

    // Integral-space tolerance derived from cumulant-space abs/rel targets.
    double target() const {
        const double scale = std::abs(prefactor);
        return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(sum_val) * scale) / scale;
    }

    void extend(double from, double to) {
        std::set<double> cuts{from, to};
        for (double b : ci.breakpoints)
            if (b > from && b < to) cuts.insert(b);
        for (const BumpTrain& t : ci.bump_trains) {
            double c = std::ceil(from / t.period) * t.period;
            if (c == 0.0) c = t.period;
            for (; c < to; c += t.period) {
                for (double d : {-t.window, -2 * t.fine, -t.fine, 0.0, t.fine, 2 * t.fine, t.window}) {
                    const double p = c + d;
                    if (p > from && p < to) cuts.insert(p);
                }
            }
        }
        std::vector<double> pts(cuts.begin(), cuts.end());
        double mass = 0.0;
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            double a = pts[i];
            const double b = pts[i + 1];
            const int splits =
                std::isfinite(coarse_cap) ? int(std::ceil((b - a) / coarse_cap)) : 1;
            const double step = (b - a) / splits;
            for (int s = 0; s < splits; ++s) {
                Panel<R> p = gk15(ev, R(a), R(std::min(b, a + step)));
                mass += double(p.abs_mass);
                push(std::move(p));
                a += step;
            }
        }
        chunk_mass.push_back(mass);
    }

    void refine() {
        // Refine toward the tolerance, but stop chasing error that bisection
        // demonstrably cannot reduce (width floor, or the estimate stagnating
        // at the integrand's own rounding noise); such panels are frozen and
        // their error stays in the reported estimate.
        while (!heap.empty()) {
            const double goal = std::max(0.5 * target(), 1.05 * frozen_err);
            if (sum_err() <= goal) break;
            if (panel_count() >= cfg.max_panels)
                raise(ErrorCode::PanelLimitExceeded,
                      "panel budget exhausted (" + std::to_string(cfg.max_panels) + ")");
            Panel<R> p = pop();
            if (double(p.b - p.a) <= 1e-14 * (1.0 + double(p.b))) {
                freeze(std::move(p));
                continue;
            }
            const R mid = (p.a + p.b) / R(2);
            Panel<R> left = gk15(ev, p.a, mid);
            Panel<R> right = gk15(ev, mid, p.b);
            // Noise-floor signature: bisection stopped helping while the
            // estimate already sits many digits below the local mass. An
            // under-resolved panel also stagnates but fails the mass test,
            // so it keeps refining.
            const bool stagnant =
                double(left.error) + double(right.error) > 0.8 * double(p.error);
            const bool at_floor = double(p.error) <= 1e-8 * double(p.abs_mass) + 1e-300;
            if (stagnant && at_floor) {
                freeze(std::move(left));
                freeze(std::move(right));
            } else {
                push(std::move(left));
                push(std::move(right));
            }
        }
    }

    double tail_bound(double y, int l) const {
        double bound = std::numeric_limits<double>::infinity();
        if (ci.abs_g_tail) {
            const double ghat = ci.abs_g_tail(y);
            if (ghat < 1.0 && ghat > 0.0)
                bound = -std::log1p(-ghat) / (l * std::pow(y, l));
            else if (ghat <= 0.0)
                bound = 0.0;
        }
        // Measured algebraic decay: chunk masses of a y^{-(l+1)}-enveloped
        // integrand drop by 2^{-l} per doubling; once that is observed, the
        // remaining tail is below mass/(2^l - 1), padded by 4x.
        const size_t n = chunk_mass.size();
        if (n >= 3) {
            const double r1 = chunk_mass[n - 1] / std::max(chunk_mass[n - 2], 1e-300);
            const double r2 = chunk_mass[n - 2] / std::max(chunk_mass[n - 3], 1e-300);
            if (r1 < 0.75 && r2 < 0.75) {
                const double emp = 4.0 * chunk_mass[n - 1] / (std::pow(2.0, l) - 1.0);
                bound = std::min(bound, emp);
            }
        }
        return bound;
    }

    double run() {  // returns Y actually used; panels stay in `heap`
        double y = 0.0;
        double next = cfg.initial_truncation;
        while (true) {
            extend(y, next);
            y = next;
            next = 2.0 * y;
            refine();
            const double tail = tail_bound(y, ci.order);
            if (tail <= 0.5 * target()) return y;
            if (y >= cfg.max_truncation)
                raise(ErrorCode::TruncationFailure,
                      "tail bound " + std::to_string(tail) + " above tolerance at Y_max=" +
                          std::to_string(cfg.max_truncation));
        }
    }
};

template <class R>
IntegralResult run_integral(Evaluator<R> ev, const ContourIntegrand& ci, const QuadratureConfig& cfg,
                            ContourMesh* mesh) {
    if (ci.order < 1) raise(ErrorCode::UnsupportedOrder, "contour cumulants need order >= 1");
    if (!(ci.abscissa < 0.0))
        raise(ErrorCode::LogBranchFailure, "contour abscissa must be negative");

    Driver<R> d(std::move(ev), ci, cfg);
    const double y_used = d.run();

    std::vector<Panel<R>> all = std::move(d.heap);
    all.insert(all.end(), d.frozen.begin(), d.frozen.end());
    std::sort(all.begin(), all.end(),
              [](const Panel<R>& x, const Panel<R>& y) { return x.a < y.a; });
    CompensatedSum<double> total;
    for (const Panel<R>& p : all) total.add(double(p.value));

    IntegralResult out;
    out.truncation = y_used;
    out.panels = long(all.size());
    out.evals = d.ev.evals;
    const double tail = d.tail_bound(y_used, ci.order);
    out.value = d.prefactor * total.value();
    out.abs_error = std::abs(d.prefactor) * (d.sum_err() + (std::isfinite(tail) ? tail : 0.0));

    if (mesh) {
        mesh->abscissa = ci.abscissa;
        mesh->truncation = y_used;
        mesh->nodes.clear();
        mesh->weights.clear();
        mesh->log_one_minus_g.clear();
        // The transform argument moves a 1/(z(s-z)) kernel along the contour,
        // so the mesh has to stay fine wherever log(1-g) is still
        // non-negligible, not just where the order-1 integrand put panels.
        const double ax = std::max(std::abs(ci.abscissa), 1e-3);
        auto width_cap = [&](double a) {
            double tier = std::numeric_limits<double>::infinity();
            if (ci.abs_g_tail) {
                const double env = ci.abs_g_tail(a);
                if (env > 1e-4)
                    tier = 0.25 * ax;
                else if (env > 1e-6)
                    tier = ax;
                else if (env > 1e-8)
                    tier = 4.0 * ax;
                else if (env > 1e-10)
                    tier = 16.0 * ax;
            } else {
                tier = 0.25 * ax;
            }
            return std::max(tier, a / 512.0);
        };
        auto record = [&](double a, double b) {
            const double mid = (a + b) / 2.0;
            const double hw = (b - a) / 2.0;
            for (int i = 0; i < 15; ++i) {
                const int j = i < 8 ? i : 14 - i;
                const double sign = i < 8 ? -1.0 : 1.0;
                const double yy = mid + sign * hw * kGK15Nodes[j];
                const std::complex<double> w = ci.log_g(yy);
                mesh->nodes.push_back(yy);
                mesh->weights.push_back(hw * kKronrodW[j]);
                mesh->log_one_minus_g.push_back(log_one_minus_exp(w));
            }
        };
        for (const Panel<R>& p : all) {
            const double a = double(p.a), b = double(p.b);
            const double cap = width_cap(a);
            const int pieces = (b - a) > cap ? int(std::ceil((b - a) / cap)) : 1;
            const double step = (b - a) / pieces;
            for (int i = 0; i < pieces; ++i) record(a + i * step, a + (i + 1) * step);
        }
    }
    return out;
}

}  // namespace

IntegralResult cumulant_contour_integral(const ContourIntegrand& ci, const QuadratureConfig& cfg) {
    if (cfg.precision == WorkingPrecision::Extended && ci.log_g_ext) {
        Evaluator<long double> ev{ci.log_g_ext, (long double)ci.abscissa, ci.order};
        return run_integral<long double>(std::move(ev), ci, cfg, nullptr);
    }
    Evaluator<double> ev{ci.log_g, ci.abscissa, ci.order};
    return run_integral<double>(std::move(ev), ci, cfg, nullptr);
}

ContourMesh contour_mesh(const ContourIntegrand& ci, const QuadratureConfig& cfg) {
    ContourMesh mesh;
    Evaluator<double> ev{ci.log_g, ci.abscissa, ci.order};
    run_integral<double>(std::move(ev), ci, cfg, &mesh);
    return mesh;
}

std::complex<double> pollaczek_log_lst(const ContourMesh& mesh, std::complex<double> s) {
    if (s == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
    std::complex<double> acc(0.0, 0.0);
    const size_t n = mesh.nodes.size();
    for (size_t i = 0; i < n; ++i) {
        const std::complex<double> z(mesh.abscissa, mesh.nodes[i]);
        const std::complex<double> zc = std::conj(z);
        const std::complex<double>& lu = mesh.log_one_minus_g[i];
        acc += mesh.weights[i] * (lu / (z * (s - z)) + std::conj(lu) / (zc * (s - zc)));
    }
    return -s * acc / (2.0 * M_PI);
}

}  // namespace pollaczek
