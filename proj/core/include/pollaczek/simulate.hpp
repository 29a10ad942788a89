#pragma once

#include <cstdint>
#include <vector>

#include "pollaczek/rng.hpp"
#include "pollaczek/transform.hpp"

// Monte-Carlo Lindley recursion W <- (W + V - U/rho)^+, the independent
// oracle used to cross-check the transform pipeline at moderate loads.

namespace pollaczek {

struct SimConfig {
    long warmup = 10000;      // discarded customers per replication (at rho <= 0.9;
                              // stretched by (0.1/(1-rho))^2 closer to criticality)
    long customers = 1000000; // measured customers per replication
    int replications = 10;
    std::uint64_t seed = 0x5eed5eed5eed5eedull;
    int max_order = 5;
};

// One draw from a validated spec.
double sample_variate(const DistributionSpec& spec, Xoshiro256pp& rng);

struct SimEstimate {
    double mean = 0.0;
    double half_width = 0.0;  // 99% CI via t-quantiles across replications

    bool contains(double x) const { return x >= mean - half_width && x <= mean + half_width; }
};

struct SimResult {
    std::vector<SimEstimate> moments;  // m_1..m_K of the regime-scaled waiting time
    SimEstimate p_zero;
    long total_customers = 0;
};

// Classical regime: moments of alpha*W.
SimResult simulate_waiting(const QueueInstance& q, const SimConfig& cfg);

// Thinned regimes: V_n, U_n are means of n i.i.d. draws. report_scale is the
// regime scaling applied before reporting (1 for the Kingman regime,
// sqrt(n)/sigma_n for the Gaussian regime).
SimResult simulate_waiting(const ThinnedQueueInstance& tq, const SimConfig& cfg,
                           double report_scale = 1.0);

}  // namespace pollaczek
