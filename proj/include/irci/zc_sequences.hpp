#pragma once

// Zadoff-Chu frequency-domain weights and the circularly shifted
// multi-transmitter weight set built from them.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "irci/errors.hpp"
#include "irci/spectral.hpp"

namespace irci {

struct ZcParams {
    std::size_t n = 0;   // sequence length
    std::size_t mu = 1;  // root index, coprime to n

    void validate() const {
        if (n == 0) throw std::invalid_argument("zc: sequence length must be positive");
        if (mu == 0) throw std::invalid_argument("zc: root index must be positive");
        if (mu >= n) throw std::invalid_argument("zc: root index must be less than N");
        if (std::gcd(mu, n) != 1) {
            throw std::invalid_argument("zc: root index " + std::to_string(mu) +
                                        " is not coprime to N=" + std::to_string(n));
        }
    }

    bool even() const { return n % 2 == 0; }
};

struct WeightSequence {
    ComplexVector values;
    std::size_t channel_index = 1;  // 1-based transmitter index
    ZcParams params;

    std::size_t size() const { return values.size(); }
    const Complex& operator[](std::size_t k) const { return values[k]; }
};

/// mu^{-1} mod n via extended Euclid. Throws if no inverse exists.
inline std::size_t modular_inverse(std::size_t mu, std::size_t n) {
    if (n == 1) return 0;
    std::int64_t r0 = static_cast<std::int64_t>(n), r1 = static_cast<std::int64_t>(mu % n);
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    if (r0 != 1) throw std::invalid_argument("modular_inverse: arguments are not coprime");
    const auto sn = static_cast<std::int64_t>(n);
    return static_cast<std::size_t>(((t0 % sn) + sn) % sn);
}

/// S_1(k) = exp(-j pi mu k (k + <N>_2) / N), k = 0..N-1.
inline WeightSequence generate_zc(const ZcParams& params) {
    params.validate();
    const std::size_t n = params.n;
    const std::uint64_t parity = n % 2;
    WeightSequence seq;
    seq.params = params;
    seq.channel_index = 1;
    seq.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        // Reduce mu*k*(k+parity) modulo 2N before converting to a phase; the
        // exponent is 2N-periodic and the reduction keeps large N exact.
        const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
        const std::uint64_t kk = (static_cast<std::uint64_t>(k) * (k + parity)) % two_n;
        const std::uint64_t e = (static_cast<std::uint64_t>(params.mu % two_n) * kk) % two_n;
        const double phase = -kPi * static_cast<double>(e) / static_cast<double>(n);
        seq.values[k] = std::polar(1.0, phase);
    }
    return seq;
}

/// S_m(k) = S_1(k) exp(j 2 pi (m-1) k / M_T), m = 1..M_T.
///
/// Each ramp is a circular spectral shift by (m-1)N/M_T, so after matched
/// filtering with S_m the other transmitters land at offsets that are
/// multiples of N/M_T. For M_T = 2 the ramp is exp(j pi k).
inline std::vector<WeightSequence> build_weight_set(const WeightSequence& base, std::size_t m_t) {
    if (m_t < 1) throw std::invalid_argument("build_weight_set: need at least one transmitter");
    if (base.channel_index != 1)
        throw std::invalid_argument("build_weight_set: base sequence must be channel 1");
    const std::size_t n = base.size();
    if (n == 0) throw std::invalid_argument("build_weight_set: empty base sequence");
    if (m_t >= 2 && n % 2 != 0)
        throw std::invalid_argument("build_weight_set: multi-channel sets require even N");
    if (n % m_t != 0) {
        throw std::invalid_argument("build_weight_set: N=" + std::to_string(n) +
                                    " is not divisible by M_T=" + std::to_string(m_t));
    }
    if (m_t >= 2 && base.params.mu % 2 == 0)
        throw std::invalid_argument("build_weight_set: root index must be odd");

    std::vector<WeightSequence> set;
    set.reserve(m_t);
    set.push_back(base);
    for (std::size_t m = 2; m <= m_t; ++m) {
        WeightSequence seq;
        seq.params = base.params;
        seq.channel_index = m;
        seq.values.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            // (m-1)k/M_T reduced mod 1 in integers keeps the ramp exact: for
            // M_T = 2 this is exactly +/-1.
            const std::size_t num = ((m - 1) * k) % m_t;
            const Complex ramp = num == 0 ? Complex{1.0, 0.0}
                                 : 2 * num == m_t
                                     ? Complex{-1.0, 0.0}
                                     : std::polar(1.0, 2.0 * kPi * static_cast<double>(num) /
                                                           static_cast<double>(m_t));
            seq.values[k] = base.values[k] * ramp;
        }
        set.push_back(std::move(seq));
    }
    return set;
}

/// beta = exp(-j pi mu N / 4), the constant of the half-length circular shift identity
/// S_1(<k - N/2>_N) = beta S_1(k) exp(j pi mu k).
inline Complex shift_beta(const ZcParams& params) {
    const std::uint64_t e = (static_cast<std::uint64_t>(params.mu) * params.n) % 8;
    return std::polar(1.0, -kPi * static_cast<double>(e) / 4.0);
}

/// Time-domain waveform of an even-length ZC weight sequence without an IDFT:
/// s_1(n) = conj(S_1(<mu^{-1} n>_N)) * s_1(0), with s_1(0) = (1/sqrt N) sum_k S_1(k).
inline ComplexVector closed_form_time(const ZcParams& params, const WeightSequence& s1_freq) {
    params.validate();
    if (!params.even())
        throw Unsupported("closed_form_time: only even N has a closed form without the odd-length phase term");
    if (s1_freq.size() != params.n)
        throw std::invalid_argument("closed_form_time: sequence length does not match N");

    const std::size_t n = params.n;
    const std::size_t mu_inv = modular_inverse(params.mu, n);
    Complex s0{0.0, 0.0};
    for (const auto& v : s1_freq.values) s0 += v;
    s0 /= std::sqrt(static_cast<double>(n));

    ComplexVector s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t idx = static_cast<std::size_t>((static_cast<std::uint64_t>(mu_inv) * i) % n);
        s[i] = std::conj(s1_freq.values[idx]) * s0;
    }
    return s;
}

/// sum_k a(k) conj(b(<k + lag>_N))
inline Complex periodic_xcorr(std::span<const Complex> a, std::span<const Complex> b, std::size_t lag) {
    if (a.size() != b.size()) throw std::invalid_argument("periodic_xcorr: length mismatch");
    if (a.empty()) throw std::invalid_argument("periodic_xcorr: empty input");
    const std::size_t n = a.size();
    if (lag >= n) throw std::invalid_argument("periodic_xcorr: lag out of range");
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) acc += a[k] * std::conj(b[(k + lag) % n]);
    return acc;
}

}  // namespace irci
