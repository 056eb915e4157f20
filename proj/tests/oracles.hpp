#pragma once

// Test-only reference implementations. These evaluate the defining sums
// directly and share no code path with the library (no FFT, no pulse
// synthesis, no echo simulator).

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using cvec = std::vector<cd>;

inline constexpr double pi = 3.14159265358979323846;

/// sign = -1 forward, +1 inverse; unitary scaling.
inline cvec dft(const cvec& x, int sign) {
    const std::size_t n = x.size();
    cvec out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cd acc{};
        for (std::size_t i = 0; i < n; ++i)
            acc += x[i] * std::exp(cd(0.0, sign * 2.0 * pi * double((i * k) % n) / double(n)));
        out[k] = acc / std::sqrt(double(n));
    }
    return out;
}

inline cvec zc(std::size_t n, std::size_t mu) {
    cvec s(n);
    const double parity = double(n % 2);
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = double(k);
        s[k] = std::exp(cd(0.0, -pi * double(mu) * kk * (kk + parity) / double(n)));
    }
    return s;
}

/// CP-OFDM pulse: [s(N-L..N-1), s(0..N-1)] with s the direct IDFT.
inline cvec pulse(const cvec& weights, std::size_t cp) {
    const cvec s = dft(weights, +1);
    const std::size_t n = s.size();
    cvec u(n + cp);
    for (std::size_t i = 0; i < n + cp; ++i) u[i] = i < cp ? s[i + n - cp] : s[i - cp];
    return u;
}

/// r(n) = sum_m sum_l h_m(l) u_m(n - l), 0 <= n < len(u) + L_p - 1.
inline cvec echo(const std::vector<cvec>& h, const std::vector<cvec>& u) {
    const std::size_t lp = h.front().size();
    const std::size_t len = u.front().size() + lp - 1;
    cvec r(len);
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t m = 0; m < h.size(); ++m)
            for (std::size_t l = 0; l < lp; ++l) {
                const std::ptrdiff_t j = std::ptrdiff_t(i) - std::ptrdiff_t(l);
                if (j >= 0 && j < std::ptrdiff_t(u[m].size())) r[i] += h[m][l] * u[m][std::size_t(j)];
            }
    return r;
}

inline cvec random_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    cvec x(n);
    for (auto& v : x) v = {g(rng), g(rng)};
    return x;
}

inline double max_abs_diff(const cvec& a, const cvec& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace oracle
