#pragma once

/**
 * @file reconstruction.hpp
 * @brief Single-pulse IRCI-free range reconstruction for CP-OFDM MIMO echoes.
 *
 * Per subswath: drop the CP, take the unitary DFT, multiply by each channel's
 * conjugated weights (scaled by 1/sqrt N), and return to the time domain.
 * With circularly shifted ZC weights the contribution of channel m' appears in
 * channel m's response shifted by (m' - m) N / M_T, so as long as every
 * subswath holds at most N / M_T cells the first L_p samples are exactly the
 * channel's own range profile. Subswath profiles are concatenated into
 * whole-swath profiles.
 */

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "irci/errors.hpp"
#include "irci/scene_channel.hpp"
#include "irci/spectral.hpp"
#include "irci/zc_sequences.hpp"

namespace irci {

enum class ProfileScope { Subswath, Swath };

struct RangeProfile {
    ComplexVector values;
    std::size_t channel_index = 1;
    ProfileScope scope = ProfileScope::Subswath;
    std::size_t subswath_index = 0;  // 0 for whole-swath profiles

    std::size_t size() const { return values.size(); }
};

/// Z_p, Y_{p,m} and the full N-point responses, kept only on request.
struct SubswathIntermediates {
    std::size_t subswath_index = 1;
    ComplexVector spectrum;                     // Z_p(k)
    std::vector<ComplexVector> filtered;        // Y_{p,m}(k)
    std::vector<ComplexVector> responses;       // hat h_{p,m}(n), n = 0..N-1
};

struct ReconstructionReport {
    std::vector<RangeProfile> profiles;  // one whole-swath profile per channel
    std::vector<SubswathIntermediates> intermediates;
};

/// z_p(n) = r_p(n + L), 0 <= n < N
inline ComplexVector strip_cp(const EchoRecord& echo, std::size_t n_subcarriers) {
    if (echo.samples.size() < echo.cp_len + n_subcarriers) {
        throw std::invalid_argument("strip_cp: echo has " + std::to_string(echo.samples.size()) +
                                    " samples, need at least L + N = " +
                                    std::to_string(echo.cp_len + n_subcarriers));
    }
    const auto first = echo.samples.begin() + static_cast<std::ptrdiff_t>(echo.cp_len);
    return ComplexVector(first, first + static_cast<std::ptrdiff_t>(n_subcarriers));
}

/// Y(k) = (1/sqrt N) conj(S_m(k)) Z(k)
inline ComplexVector matched_filter_freq(std::span<const Complex> spectrum, const WeightSequence& weights) {
    if (spectrum.size() != weights.size()) {
        throw std::invalid_argument("matched_filter_freq: spectrum length " + std::to_string(spectrum.size()) +
                                    " != weight length " + std::to_string(weights.size()));
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(spectrum.size()));
    ComplexVector y(spectrum.size());
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = scale * std::conj(weights.values[k]) * spectrum[k];
    return y;
}

namespace detail {

inline void check_weight_set(std::span<const WeightSequence> weight_set) {
    if (weight_set.empty()) throw std::invalid_argument("reconstruction: empty weight set");
    const std::size_t n = weight_set.front().size();
    for (std::size_t m = 0; m < weight_set.size(); ++m) {
        if (weight_set[m].size() != n)
            throw std::invalid_argument("reconstruction: weight sequences differ in length");
        if (weight_set[m].channel_index != m + 1)
            throw std::invalid_argument("reconstruction: weight set is not ordered by channel");
    }
}

}  // namespace detail

/// All N samples of hat h_{p,m} for every channel, plus Z_p and Y_{p,m}.
inline SubswathIntermediates channel_responses(const EchoRecord& echo,
                                               std::span<const WeightSequence> weight_set) {
    detail::check_weight_set(weight_set);
    const std::size_t n = weight_set.front().size();

    SubswathIntermediates out;
    out.subswath_index = echo.subswath_index;
    out.spectrum = unitary_dft(strip_cp(echo, n));
    out.filtered.reserve(weight_set.size());
    out.responses.reserve(weight_set.size());
    for (const auto& w : weight_set) {
        out.filtered.push_back(matched_filter_freq(out.spectrum, w));
        out.responses.push_back(unitary_idft(out.filtered.back()));
    }
    return out;
}

/// Keeps window [0, L_p) of each channel's response; everything else belongs
/// to the other transmitters.
inline std::vector<RangeProfile> profiles_from_responses(const SubswathIntermediates& responses,
                                                         std::size_t l_p) {
    std::vector<RangeProfile> profiles;
    profiles.reserve(responses.responses.size());
    for (std::size_t m = 0; m < responses.responses.size(); ++m) {
        const auto& full = responses.responses[m];
        RangeProfile prof;
        prof.channel_index = m + 1;
        prof.scope = ProfileScope::Subswath;
        prof.subswath_index = responses.subswath_index;
        prof.values.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(l_p));
        profiles.push_back(std::move(prof));
    }
    return profiles;
}

inline void check_subswath_length(std::size_t l_p, std::size_t n, std::size_t m_t) {
    if (l_p < 1) throw std::invalid_argument("recover_subswath: subswath length must be positive");
    const std::size_t limit = n / m_t;
    if (l_p > limit) {
        throw ConstraintViolation("recover_subswath: L_p = " + std::to_string(l_p) + " exceeds N/M_T = " +
                                      std::to_string(limit) + "; channel supports would overlap",
                                  l_p, limit);
    }
}

inline std::vector<RangeProfile> recover_subswath(const EchoRecord& echo,
                                                  std::span<const WeightSequence> weight_set,
                                                  std::size_t l_p) {
    detail::check_weight_set(weight_set);
    check_subswath_length(l_p, weight_set.front().size(), weight_set.size());
    return profiles_from_responses(channel_responses(echo, weight_set), l_p);
}

/// h_m = [h_{1,m}, ..., h_{P,m}]; input is indexed [p][m].
inline std::vector<RangeProfile> stitch_swath(std::span<const std::vector<RangeProfile>> subswath_profiles) {
    if (subswath_profiles.empty()) throw std::invalid_argument("stitch_swath: no subswaths");
    const std::size_t m_t = subswath_profiles.front().size();
    if (m_t == 0) throw std::invalid_argument("stitch_swath: no channels");

    std::vector<RangeProfile> swath(m_t);
    for (std::size_t m = 0; m < m_t; ++m) {
        swath[m].channel_index = m + 1;
        swath[m].scope = ProfileScope::Swath;
        swath[m].subswath_index = 0;
    }
    for (std::size_t p = 0; p < subswath_profiles.size(); ++p) {
        const auto& pieces = subswath_profiles[p];
        if (pieces.size() != m_t) {
            throw std::invalid_argument("stitch_swath: subswath " + std::to_string(p + 1) + " has " +
                                        std::to_string(pieces.size()) + " channels, expected " +
                                        std::to_string(m_t));
        }
        for (std::size_t m = 0; m < m_t; ++m) {
            if (pieces[m].channel_index != m + 1)
                throw std::invalid_argument("stitch_swath: channel order mismatch in subswath " +
                                            std::to_string(p + 1));
            if (pieces[m].subswath_index != 0 && pieces[m].subswath_index != p + 1)
                throw std::invalid_argument("stitch_swath: subswaths out of order or missing");
            swath[m].values.insert(swath[m].values.end(), pieces[m].values.begin(), pieces[m].values.end());
        }
    }
    return swath;
}

/// Full receive chain over a set of subswath echoes (one per subswath, in order).
inline ReconstructionReport reconstruct_swath(std::span<const EchoRecord> echoes,
                                              std::span<const WeightSequence> weight_set,
                                              bool keep_intermediates = false) {
    detail::check_weight_set(weight_set);
    const std::size_t n = weight_set.front().size();
    ReconstructionReport report;
    std::vector<std::vector<RangeProfile>> pieces;
    pieces.reserve(echoes.size());
    for (const auto& echo : echoes) {
        check_subswath_length(echo.l_p, n, weight_set.size());
        auto responses = channel_responses(echo, weight_set);
        pieces.push_back(profiles_from_responses(responses, echo.l_p));
        if (keep_intermediates) report.intermediates.push_back(std::move(responses));
    }
    report.profiles = stitch_swath(pieces);
    return report;
}

}  // namespace irci
