#pragma once

#include <optional>
#include <vector>

#include "pollaczek/quadrature.hpp"
#include "pollaczek/transform.hpp"

namespace pollaczek {

struct CumulantVector {
    enum class Source { Contour, ZetaSeries, ClosedForm };
    std::vector<double> values;  // values[l-1] = c_l
    std::vector<double> errors;  // optional, same indexing
    Source source = Source::ClosedForm;

    int order() const { return int(values.size()); }
    double c(int l) const { return values.at(size_t(l) - 1); }
};

struct MomentVector {
    std::vector<double> values;  // values[k] = m_k, m_0 = 1

    int order() const { return int(values.size()) - 1; }
    double m(int k) const { return values.at(size_t(k)); }
};

// m_0 = 1; m_k = sum_{l=1}^{k} C(k-1, l-1) c_l m_{k-l}
MomentVector moments_from_cumulants(const CumulantVector& c);

struct ExactMoments {
    MomentVector moments;  // of alpha*W, W_n, or sqrt(n)/sigma_n * W_n
    CumulantVector cumulants;
    std::vector<IntegralResult> integrals;
    std::optional<SaddleInfo> saddle;  // set for the Gaussian regime
};

// Exact moments through the Pollaczek contour cumulants. The classical
// overload reports moments of alpha*W with alpha = 1 - load; the thinned
// overload reports W_n (Kingman regime) or sqrt(n)/sigma_n W_n (Gaussian
// regime).
ExactMoments exact_scaled_moments(const QueueInstance& q, int max_order,
                                  const QuadratureConfig& cfg = {});
ExactMoments exact_scaled_moments(const ThinnedQueueInstance& tq, int max_order,
                                  const QuadratureConfig& cfg = {});

}  // namespace pollaczek
