#pragma once

// CP-OFDM pulse synthesis and the CP sizing rule.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "irci/errors.hpp"
#include "irci/spectral.hpp"
#include "irci/zc_sequences.hpp"

namespace irci {

struct OfdmPulse {
    ComplexVector samples;  // N + L samples, CP first
    std::size_t n_subcarriers = 0;
    std::size_t cp_len = 0;
    std::size_t channel_index = 1;

    std::size_t size() const { return samples.size(); }

    /// The N-sample symbol after the CP.
    std::span<const Complex> symbol() const {
        return std::span<const Complex>(samples).subspan(cp_len, n_subcarriers);
    }
};

/// u_m = [s_m(N-L..N-1), s_m(0..N-1)] with s_m the unitary IDFT of the weights.
inline OfdmPulse synthesize_pulse(const WeightSequence& weights, std::size_t cp_len) {
    const std::size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("synthesize_pulse: empty weight sequence");
    if (cp_len > n) {
        throw std::invalid_argument("synthesize_pulse: CP length " + std::to_string(cp_len) +
                                    " exceeds symbol length " + std::to_string(n));
    }
    const ComplexVector s = unitary_idft(weights.values);

    OfdmPulse pulse;
    pulse.n_subcarriers = n;
    pulse.cp_len = cp_len;
    pulse.channel_index = weights.channel_index;
    pulse.samples.reserve(n + cp_len);
    pulse.samples.insert(pulse.samples.end(), s.end() - static_cast<std::ptrdiff_t>(cp_len), s.end());
    pulse.samples.insert(pulse.samples.end(), s.begin(), s.end());
    return pulse;
}

/// CP length L = L_o = max_p L_p, valid only while L_o <= N / M_T.
inline std::size_t required_cp_len(std::span<const std::size_t> subswath_lengths,
                                   std::size_t n_subcarriers, std::size_t m_t) {
    if (subswath_lengths.empty()) throw std::invalid_argument("required_cp_len: empty partition");
    if (m_t < 1) throw std::invalid_argument("required_cp_len: need at least one transmitter");
    if (std::any_of(subswath_lengths.begin(), subswath_lengths.end(),
                    [](std::size_t l) { return l < 1; }))
        throw std::invalid_argument("required_cp_len: subswath lengths must be positive");

    const std::size_t l_o = *std::max_element(subswath_lengths.begin(), subswath_lengths.end());
    const std::size_t limit = n_subcarriers / m_t;
    if (l_o > limit) {
        throw ConstraintViolation("longest subswath has " + std::to_string(l_o) +
                                      " range cells but N/M_T = " + std::to_string(limit) +
                                      " (requires L_o <= N/M_T); split the swath into more subswaths",
                                  l_o, limit);
    }
    return l_o;
}

/// Peak-to-average power of the N-sample symbol, in dB.
inline double papr_db(const OfdmPulse& pulse) {
    if (pulse.samples.empty()) throw std::invalid_argument("papr_db: empty pulse");
    const auto sym = pulse.symbol();
    double peak = 0.0, total = 0.0;
    for (const auto& v : sym) {
        const double p = std::norm(v);
        peak = std::max(peak, p);
        total += p;
    }
    if (peak == 0.0) throw UndefinedMetric("papr_db: all-zero pulse");
    const double mean = total / static_cast<double>(sym.size());
    return 10.0 * std::log10(peak / mean);
}

}  // namespace irci
