#pragma once

// Built-in invariant checks behind `irci_sar selftest`.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "irci/ofdm_waveform.hpp"
#include "irci/reconstruction.hpp"
#include "irci/scene_channel.hpp"
#include "irci/spectral.hpp"
#include "irci/zc_sequences.hpp"

namespace irci {

struct SelftestOptions {
    /// Mutation hook: evaluates the shift identity with the conjugate beta.
    /// A correct build must report the shift-identity property as failed.
    bool inject_shift_sign_error = false;
};

struct PropertyResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;      // largest observed deviation
    double tolerance = 0.0;
};

namespace selftest_detail {

// Plain O(N^2) unitary transform, kept independent of the FFT path.
inline ComplexVector direct_transform(const ComplexVector& x, int sign) {
    const std::size_t n = x.size();
    ComplexVector out(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{};
        for (std::size_t i = 0; i < n; ++i) {
            const double ph = sign * 2.0 * kPi * static_cast<double>((i * k) % n) / static_cast<double>(n);
            acc += x[i] * std::polar(1.0, ph);
        }
        out[k] = scale * acc;
    }
    return out;
}

struct Case {
    std::size_t n, mu;
};

inline std::vector<Case> sequence_cases() {
    std::vector<Case> cases;
    for (std::size_t n : {4u, 6u, 10u, 16u, 1024u})
        for (std::size_t mu : {1u, 3u, 5u})
            if (mu < n && std::gcd(mu, n) == 1) cases.push_back({n, mu});
    return cases;
}

}  // namespace selftest_detail

inline std::vector<PropertyResult> run_selftest(const SelftestOptions& opts = {}) {
    using selftest_detail::direct_transform;
    std::vector<PropertyResult> results;
    auto record = [&](std::string name, double worst, double tol) {
        results.push_back({std::move(name), worst <= tol, worst, tol});
    };
    const auto cases = selftest_detail::sequence_cases();

    {
        double worst = 0.0;
        for (auto [n, mu] : cases) {
            const auto set = build_weight_set(generate_zc({n, mu}), 2);
            for (const auto& w : set) {
                for (const auto& v : w.values) worst = std::max(worst, std::abs(std::abs(v) - 1.0));
                for (const auto& v : unitary_idft(w.values)) worst = std::max(worst, std::abs(std::abs(v) - 1.0));
            }
        }
        record("constant modulus (frequency and time)", worst, 1e-10);
    }
    {
        double worst = 0.0;
        for (auto [n, mu] : cases) {
            const auto s = generate_zc({n, mu});
            for (std::size_t lag = 1; lag < n; ++lag)
                worst = std::max(worst, std::abs(periodic_xcorr(s.values, s.values, lag)) / double(n));
        }
        record("ideal periodic autocorrelation", worst, 1e-9);
    }
    {
        double worst = 0.0;
        for (auto [n, mu] : cases) {
            const ZcParams params{n, mu};
            const auto s1 = generate_zc(params);
            Complex beta = shift_beta(params);
            if (opts.inject_shift_sign_error) beta = std::conj(beta);
            for (std::size_t k = 0; k < n; ++k) {
                const Complex lhs = s1[(k + n - n / 2) % n];
                const Complex rhs = beta * s1[k] * std::polar(1.0, kPi * double((mu * k) % (2 * n)));
                worst = std::max(worst, std::abs(lhs - rhs));
            }
            const auto set = build_weight_set(s1, 2);
            for (std::size_t k = 0; k < n; ++k)
                worst = std::max(worst, std::abs(set[1][k] - std::conj(beta) * s1[(k + n - n / 2) % n]));
        }
        record("half-length circular shift identity", worst, 1e-10);
    }
    {
        double worst = 0.0;
        for (auto [n, mu] : cases) {
            const auto set = build_weight_set(generate_zc({n, mu}), 2);
            for (std::size_t tau : {std::size_t{0}, std::size_t{1}, n / 4, n - 1}) {
                Complex acc{};
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex delay = std::polar(1.0, -2.0 * kPi * double((k * tau) % n) / double(n));
                    acc += std::conj(set[0][k] * delay) * (set[1][k] * delay);
                }
                worst = std::max(worst, std::abs(acc));
            }
        }
        record("delay-robust channel orthogonality", worst, 1e-9);
    }
    {
        double worst = 0.0;
        for (auto [n, mu] : cases) {
            const ZcParams params{n, mu};
            const auto s1 = generate_zc(params);
            const auto closed = closed_form_time(params, s1);
            const auto numeric = direct_transform(s1.values, +1);
            for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(closed[i] - numeric[i]));
        }
        record("closed-form time waveform", worst, 1e-10);
    }
    {
        // N = 8, L = L_p = 2, M_T = 2; the echo is built by direct double
        // summation from directly transformed pulses.
        constexpr std::size_t n = 8, l = 2;
        const auto set = build_weight_set(generate_zc({n, 1}), 2);
        std::vector<ComplexVector> s;
        for (const auto& w : set) s.push_back(direct_transform(w.values, +1));
        auto u = [&](std::size_t m, std::ptrdiff_t i) -> Complex {
            if (i < 0 || i >= std::ptrdiff_t(n + l)) return {};
            return i < std::ptrdiff_t(l) ? s[m][std::size_t(i) + n - l] : s[m][std::size_t(i) - l];
        };
        std::mt19937_64 rng(8);
        std::normal_distribution<double> g(0.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<ComplexVector> h(2, ComplexVector(l));
            for (auto& row : h)
                for (auto& v : row) v = {g(rng), g(rng)};
            EchoRecord echo;
            echo.cp_len = l;
            echo.l_p = l;
            echo.samples.resize(n + l + l - 1);
            for (std::size_t i = 0; i < echo.samples.size(); ++i)
                for (std::size_t m = 0; m < 2; ++m)
                    for (std::size_t c = 0; c < l; ++c)
                        echo.samples[i] += h[m][c] * u(m, std::ptrdiff_t(i) - std::ptrdiff_t(c));
            const auto rec = recover_subswath(echo, set, l);
            for (std::size_t m = 0; m < 2; ++m)
                for (std::size_t c = 0; c < l; ++c) worst = std::max(worst, std::abs(rec[m].values[c] - h[m][c]));
        }
        record("small-N brute-force oracle", worst, 1e-12);
    }
    {
        constexpr std::size_t n = 64, l_p = 20;
        const auto set = build_weight_set(generate_zc({n, 1}), 2);
        std::vector<OfdmPulse> pulses;
        for (const auto& w : set) pulses.push_back(synthesize_pulse(w, l_p));
        std::mt19937_64 rng(64);
        std::normal_distribution<double> g(0.0, 1.0);
        std::vector<ComplexVector> h(2, ComplexVector(l_p));
        for (auto& row : h)
            for (auto& v : row) v = {g(rng), g(rng)};

        const auto clean = channel_responses(
            simulate_subswath_echo(h, pulses, NoiseSpec::noiseless(), 0.0), set);
        double sep = 0.0;
        for (std::size_t i = l_p; i < n / 2; ++i) sep = std::max(sep, std::abs(clean.responses[0][i]));
        record("support separation", sep, 1e-10);

        const auto noisy = channel_responses(simulate_subswath_echo(h, pulses, NoiseSpec{0.0, 99}, 1.0), set);
        double red = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            red = std::max(red, std::abs(noisy.responses[1][i] - noisy.responses[0][(i + n / 2) % n]));
        record("redundancy identity (noisy)", red, 1e-10);
    }
    {
        double worst = 0.0;
        for (auto [n, mu] : cases) {
            const auto set = build_weight_set(generate_zc({n, mu}), 2);
            for (const auto& w : set) {
                const auto pulse = synthesize_pulse(w, n / 4);
                worst = std::max(worst, std::abs(papr_db(pulse)));
                for (std::size_t i = 0; i < pulse.cp_len; ++i)
                    if (pulse.samples[i] != pulse.samples[i + n]) worst = std::max(worst, 1.0);
            }
        }
        record("cyclic prefix copy and 0 dB PAPR", worst, 1e-9);
    }
    return results;
}

inline std::string format_selftest(const std::vector<PropertyResult>& results) {
    std::ostringstream os;
    os << "property                                  status  worst        tolerance\n";
    for (const auto& r : results) {
        char line[160];
        std::snprintf(line, sizeof line, "%-41s %-7s %-12.3e %.0e\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                      r.worst, r.tolerance);
        os << line;
    }
    return os.str();
}

}  // namespace irci
