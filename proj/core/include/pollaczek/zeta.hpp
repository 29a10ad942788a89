#pragma once

// Riemann zeta on the real line (Euler-Maclaurin on the right half-plane,
// functional equation elsewhere) plus the handful of gamma values the
// Gaussian-walk cumulant series needs.

namespace pollaczek {

// sin(pi x) with exact zeros at integer x.
double sin_pi(double x);

// zeta(s) for real s != 1. Overflows to +-inf for s below about -170;
// use log_abs_riemann_zeta there.
double riemann_zeta(double s);

// log|zeta(s)| and the sign, usable arbitrarily far down the negative axis.
double log_abs_riemann_zeta(double s, int& sign);

// Gamma(half/2) for half >= 1, exact sqrt(pi) recurrences.
double gamma_of_half(int half);

}  // namespace pollaczek
