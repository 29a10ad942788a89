#pragma once

#include <cmath>
#include <complex>

// Cancellation-safe complex helpers used by every transform evaluation. The
// contour integrands live very close to log(1-exp(w)) with w near 0 (heavy
// traffic) or w very negative (far tails), so the naive forms lose most of
// their digits exactly where the tables are computed.

namespace pollaczek {

// log(1+w), stable for |w| << 1.
template <class R>
std::complex<R> clog1p(const std::complex<R>& w) {
    const R aw = std::abs(w);
    if (aw < R(1e-4)) {
        // log(1+w) = w - w^2/2 + w^3/3 - w^4/4, error O(|w|^5)
        const std::complex<R> w2 = w * w;
        return w - w2 / R(2) + w2 * w / R(3) - w2 * w2 / R(4);
    }
    const R re = w.real(), im = w.imag();
    const R log_abs = R(0.5) * std::log1p(R(2) * re + (re * re + im * im));
    return {log_abs, std::atan2(im, R(1) + re)};
}

// exp(w)-1, stable for |w| << 1.
template <class R>
std::complex<R> cexpm1(const std::complex<R>& w) {
    const R x = w.real(), y = w.imag();
    // Re(e^w - 1) = expm1(x)*cos(y) - 2 sin^2(y/2),  Im = e^x sin(y)
    const R sy2 = std::sin(y / R(2));
    return {std::expm1(x) * std::cos(y) - R(2) * sy2 * sy2, std::exp(x) * std::sin(y)};
}

// log(1 - exp(w)) for Re(w) < 0, i.e. |exp(w)| < 1 so the principal branch
// applies throughout.
template <class R>
std::complex<R> log_one_minus_exp(const std::complex<R>& w) {
    if (w.real() < R(-9)) {
        // |g| < 1.3e-4: log(1-g) = -(g + g^2/2 + g^3/3 + g^4/4)
        const std::complex<R> g = std::exp(w);
        const std::complex<R> g2 = g * g;
        return -(g + g2 / R(2) + g2 * g / R(3) + g2 * g2 / R(4));
    }
    return std::log(-cexpm1(w));
}

// Integer power by repeated squaring; avoids std::pow branch-cut surprises.
template <class R>
std::complex<R> cpow_int(std::complex<R> z, int n) {
    std::complex<R> out(R(1), R(0));
    for (; n > 0; n >>= 1) {
        if (n & 1) out *= z;
        z *= z;
    }
    return out;
}

// Neumaier compensated accumulator for panel sums.
template <class R>
struct CompensatedSum {
    R sum = R(0);
    R comp = R(0);

    void add(R v) {
        const R t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    R value() const { return sum + comp; }
};

}  // namespace pollaczek
