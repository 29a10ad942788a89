#pragma once

#include "pollaczek/gaussian_walk.hpp"
#include "pollaczek/moments.hpp"
#include "pollaczek/transform.hpp"

// Closed-form heavy-traffic approximations. This module is the single source
// of sigma_alpha^2 and gamma_n; the exact engine takes its contour abscissas
// from here.

namespace pollaczek {

// sigma_alpha^2 = (sigma_V^2 + sigma_U^2/rho^2) rho, with rho = 1 - alpha.
double sigma_alpha_sq(const QueueInstance& q);

// n (1 - rho_n); exactly beta (Kingman thinning) or beta sqrt(n) (Gaussian).
double n_times_one_minus_rho(const ThinnedQueueInstance& tq);

// gamma_n = (sigma_V^2 + sigma_U^2/rho_n^2) rho_n / (2 n (1 - rho_n)).
double gamma_coefficient(const ThinnedQueueInstance& tq);

// m_k(alpha W) ~ k! (sigma_alpha^2/2)^k. The k = 1 value is Kingman's bound.
MomentVector classical_kingman(const QueueInstance& q, int max_order);

// m_k(W_n) ~ k! gamma_n^k.
MomentVector nd_kingman_approx(const ThinnedQueueInstance& tq, int max_order);

// m_k(sqrt(n)/sigma_n W_n) ~ m_k(beta_n).
MomentVector nd_gaussian_standard(const ThinnedQueueInstance& tq, int max_order,
                                  const SaddleInfo& saddle, MgwMethod method = MgwMethod::Auto);

// Refined version: m_k(B_n)/(1+beta_n phi_n)^{2k}
//                  + k(k-1) m_{k-1}(B_n) phi_n/(1+beta_n phi_n)^{2k-1}.
MomentVector nd_gaussian_refined(const ThinnedQueueInstance& tq, int max_order,
                                 const SaddleInfo& saddle, MgwMethod method = MgwMethod::Auto);

}  // namespace pollaczek
