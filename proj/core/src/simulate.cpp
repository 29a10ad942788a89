#include "pollaczek/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

namespace pollaczek {
namespace {

double standard_normal(Xoshiro256pp& rng) {
    // Marsaglia polar method
    while (true) {
        const double u = 2.0 * rng.uniform01() - 1.0;
        const double v = 2.0 * rng.uniform01() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

// Marsaglia-Tsang, with the u^{1/k} boost for shape < 1.
double sample_gamma(double shape, double scale, Xoshiro256pp& rng) {
    if (shape < 1.0) {
        const double u = rng.uniform01();
        return sample_gamma(shape + 1.0, scale, rng) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        const double x = standard_normal(rng);
        const double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = rng.uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
}

// Michael-Schucany-Haas transform, mu = 1.
double sample_inverse_gaussian(double lambda, Xoshiro256pp& rng) {
    const double nu = standard_normal(rng);
    const double y = nu * nu;
    const double x = 1.0 + y / (2.0 * lambda) - std::sqrt(4.0 * lambda * y + y * y) / (2.0 * lambda);
    return (rng.uniform01() <= 1.0 / (1.0 + x)) ? x : 1.0 / x;
}

}  // namespace

double sample_variate(const DistributionSpec& spec, Xoshiro256pp& rng) {
    const SpecVariant& v = spec.variant();
    if (const auto* g = std::get_if<GammaSpec>(&v)) return sample_gamma(g->shape, g->scale, rng);
    if (const auto* b = std::get_if<BatesSpec>(&v)) {
        double sum = 0.0;
        for (int i = 0; i < b->points; ++i)
            sum += 1.0 - b->half_width + 2.0 * b->half_width * rng.uniform01();
        return sum / b->points;
    }
    if (std::get_if<LatticeSpec>(&v) || std::get_if<TwoPointSpec>(&v)) {
        double u = rng.uniform01();
        for (const Atom& a : spec.atoms()) {
            u -= a.mass;
            if (u <= 0.0) return a.value;
        }
        return spec.atoms().back().value;
    }
    if (const auto* ig = std::get_if<InverseGaussianSpec>(&v))
        return sample_inverse_gaussian(ig->shape, rng);
    return 1.0;  // deterministic
}

namespace {

double t_quantile_995(int df) {
    static constexpr double kTable[30] = {
        63.657, 9.925, 5.841, 4.604, 4.032, 3.707, 3.499, 3.355, 3.250, 3.169,
        3.106,  3.055, 3.012, 2.977, 2.947, 2.921, 2.898, 2.878, 2.861, 2.845,
        2.831,  2.819, 2.807, 2.797, 2.787, 2.779, 2.771, 2.763, 2.756, 2.750};
    if (df < 1) return kTable[0];
    if (df <= 30) return kTable[df - 1];
    return 2.576;
}

struct ReplicationStats {
    std::vector<double> moments;  // sample means of (scale*W)^k
    double p_zero = 0.0;
};

ReplicationStats run_replication(const QueueInstance& q, long n_fold, long warmup, long customers,
                                 double scale, int max_order, Xoshiro256pp rng) {
    const double inv_rho = 1.0 / q.load;
    const double inv_n = 1.0 / double(n_fold);
    auto draw_mean = [&](const DistributionSpec& spec) {
        if (n_fold == 1) return sample_variate(spec, rng);
        double sum = 0.0;
        for (long i = 0; i < n_fold; ++i) sum += sample_variate(spec, rng);
        return sum * inv_n;
    };

    double w = 0.0;
    for (long i = 0; i < warmup; ++i)
        w = std::max(0.0, w + draw_mean(q.service) - inv_rho * draw_mean(q.arrival));

    ReplicationStats st;
    st.moments.assign(size_t(max_order), 0.0);
    long zeros = 0;
    for (long i = 0; i < customers; ++i) {
        w = std::max(0.0, w + draw_mean(q.service) - inv_rho * draw_mean(q.arrival));
        if (w == 0.0) ++zeros;
        const double sw = scale * w;
        double p = 1.0;
        for (int k = 0; k < max_order; ++k) {
            p *= sw;
            st.moments[size_t(k)] += p;
        }
    }
    for (double& m : st.moments) m /= double(customers);
    st.p_zero = double(zeros) / double(customers);
    return st;
}

SimResult aggregate(const QueueInstance& q, long n_fold, const SimConfig& cfg, double scale) {
    if (cfg.replications < 2)
        raise(ErrorCode::ConfigError, "need at least 2 replications for a CI");
    long warmup = cfg.warmup;
    const double omr = 1.0 - q.load;
    if (omr < 0.1) warmup = long(double(cfg.warmup) * std::pow(0.1 / omr, 2.0));

    std::vector<std::future<ReplicationStats>> jobs;
    Xoshiro256pp stream(cfg.seed);
    for (int r = 0; r < cfg.replications; ++r) {
        Xoshiro256pp rng = stream;
        stream.jump();
        jobs.push_back(std::async(std::launch::async, run_replication, q, n_fold, warmup,
                                  cfg.customers, scale, cfg.max_order, rng));
    }
    std::vector<ReplicationStats> reps;
    reps.reserve(jobs.size());
    for (auto& j : jobs) reps.push_back(j.get());

    const int R = cfg.replications;
    const double tq = t_quantile_995(R - 1);
    auto ci = [&](auto&& get) {
        double mean = 0.0;
        for (const auto& r : reps) mean += get(r);
        mean /= R;
        double var = 0.0;
        for (const auto& r : reps) var += (get(r) - mean) * (get(r) - mean);
        var /= (R - 1);
        return SimEstimate{mean, tq * std::sqrt(var / R)};
    };

    SimResult out;
    for (int k = 0; k < cfg.max_order; ++k)
        out.moments.push_back(ci([k](const ReplicationStats& r) { return r.moments[size_t(k)]; }));
    out.p_zero = ci([](const ReplicationStats& r) { return r.p_zero; });
    out.total_customers = cfg.customers * R;
    return out;
}

}  // namespace

SimResult simulate_waiting(const QueueInstance& q, const SimConfig& cfg) {
    return aggregate(q, 1, cfg, q.alpha());
}

SimResult simulate_waiting(const ThinnedQueueInstance& tq, const SimConfig& cfg, double report_scale) {
    return aggregate(tq.base, tq.n, cfg, report_scale);
}

}  // namespace pollaczek
