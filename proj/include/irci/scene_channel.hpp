#pragma once

// Swath scene, ideal subswath gating and the received echo of one subswath.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "irci/errors.hpp"
#include "irci/ofdm_waveform.hpp"
#include "irci/spectral.hpp"

namespace irci {

/// Per-transmitter complex RCS over the whole swath, partitioned into subswaths.
struct SwathScene {
    std::vector<ComplexVector> rcs;       // [m][global cell], M_T rows
    std::vector<std::size_t> partition;   // subswath lengths L_1..L_P

    std::size_t m_t() const { return rcs.size(); }
    std::size_t subswath_count() const { return partition.size(); }
    std::size_t total_cells() const {
        return std::accumulate(partition.begin(), partition.end(), std::size_t{0});
    }

    /// Global index of the first cell of subswath p (1-based).
    std::size_t subswath_offset(std::size_t p) const {
        return std::accumulate(partition.begin(), partition.begin() + static_cast<std::ptrdiff_t>(p - 1),
                               std::size_t{0});
    }

    static SwathScene zeros(std::size_t m_t, std::vector<std::size_t> partition) {
        SwathScene scene;
        scene.partition = std::move(partition);
        scene.rcs.assign(m_t, ComplexVector(scene.total_cells()));
        return scene;
    }

    void validate() const {
        if (rcs.empty()) throw std::invalid_argument("scene: no transmit channels");
        if (partition.empty()) throw std::invalid_argument("scene: empty partition");
        if (std::any_of(partition.begin(), partition.end(), [](std::size_t l) { return l < 1; }))
            throw std::invalid_argument("scene: subswath lengths must be positive");
        const std::size_t cells = total_cells();
        for (const auto& row : rcs) {
            if (row.size() != cells) {
                throw std::invalid_argument("scene: RCS row has " + std::to_string(row.size()) +
                                            " cells, partition covers " + std::to_string(cells));
            }
        }
    }

    /// Enforces L_o <= N / M_T against a concrete waveform size.
    void validate_for(std::size_t n_subcarriers) const {
        validate();
        required_cp_len(partition, n_subcarriers, m_t());
    }
};

/// Additive noise for one echo. An empty snr_db means noiseless.
struct NoiseSpec {
    std::optional<double> snr_db;
    std::uint64_t seed = 0;

    static NoiseSpec noiseless() { return {}; }
    bool is_noiseless() const { return !snr_db.has_value(); }
};

struct EchoRecord {
    ComplexVector samples;  // r_p(n), 0 <= n < N + L_p + L - 1
    std::size_t subswath_index = 1;
    std::size_t cp_len = 0;
    std::size_t l_p = 0;
    NoiseSpec noise;
    double noise_sigma = 0.0;  // per-sample standard deviation actually applied
};

/// splitmix64 finalizer; derives independent stream seeds from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Circularly symmetric complex Gaussian source with E|v|^2 = sigma^2.
class ComplexGaussianNoise {
public:
    ComplexGaussianNoise(std::uint64_t seed, double sigma)
        : engine_(seed), normal_(0.0, sigma / std::sqrt(2.0)) {}

    Complex operator()() {
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {re, im};
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

/// Ideal rect spatial filter: the subswath's slice of every channel, re-indexed from 0.
inline std::vector<ComplexVector> gate_subswath(const SwathScene& scene, std::size_t p) {
    scene.validate();
    if (p < 1 || p > scene.subswath_count()) {
        throw std::invalid_argument("gate_subswath: subswath " + std::to_string(p) + " out of range [1, " +
                                    std::to_string(scene.subswath_count()) + "]");
    }
    const auto begin = static_cast<std::ptrdiff_t>(scene.subswath_offset(p));
    const auto len = static_cast<std::ptrdiff_t>(scene.partition[p - 1]);
    std::vector<ComplexVector> local;
    local.reserve(scene.m_t());
    for (const auto& row : scene.rcs) local.emplace_back(row.begin() + begin, row.begin() + begin + len);
    return local;
}

/// sigma^2 = max |h|^2 / 10^(snr/10); the reference is the strongest scatterer over all channels.
inline double noise_sigma_from_snr(const SwathScene& scene, double snr_db) {
    double peak = 0.0;
    for (const auto& row : scene.rcs)
        for (const auto& h : row) peak = std::max(peak, std::norm(h));
    if (peak == 0.0) throw UndefinedMetric("noise_sigma_from_snr: scene has no nonzero scatterer");
    return std::sqrt(peak / std::pow(10.0, snr_db / 10.0));
}

/// r(n) = sum_m sum_l h_m(l) u_m(n - l) + v(n), 0 <= n < N + L_p + L - 1.
///
/// `sigma` is the per-sample noise standard deviation; it is ignored when the
/// spec is noiseless.
inline EchoRecord simulate_subswath_echo(std::span<const ComplexVector> local_rcs,
                                         std::span<const OfdmPulse> pulses, const NoiseSpec& noise,
                                         double sigma, std::size_t subswath_index = 1) {
    if (pulses.empty()) throw std::invalid_argument("simulate_subswath_echo: no pulses");
    if (local_rcs.size() != pulses.size()) {
        throw std::invalid_argument("simulate_subswath_echo: " + std::to_string(local_rcs.size()) +
                                    " RCS rows for " + std::to_string(pulses.size()) + " pulses");
    }
    const std::size_t n = pulses.front().n_subcarriers;
    const std::size_t cp = pulses.front().cp_len;
    for (const auto& u : pulses) {
        if (u.n_subcarriers != n || u.cp_len != cp || u.size() != n + cp)
            throw std::invalid_argument("simulate_subswath_echo: pulses disagree on N or CP length");
    }
    const std::size_t l_p = local_rcs.front().size();
    if (l_p == 0) throw std::invalid_argument("simulate_subswath_echo: empty subswath");
    for (const auto& row : local_rcs) {
        if (row.size() != l_p) throw std::invalid_argument("simulate_subswath_echo: ragged RCS rows");
    }

    const std::size_t pulse_len = n + cp;
    EchoRecord echo;
    echo.subswath_index = subswath_index;
    echo.cp_len = cp;
    echo.l_p = l_p;
    echo.noise = noise;
    echo.samples.assign(pulse_len + l_p - 1, Complex{});

    for (std::size_t m = 0; m < pulses.size(); ++m) {
        const auto& u = pulses[m].samples;
        const auto& h = local_rcs[m];
        for (std::size_t l = 0; l < l_p; ++l) {
            if (h[l] == Complex{}) continue;
            for (std::size_t i = 0; i < pulse_len; ++i) echo.samples[i + l] += h[l] * u[i];
        }
    }

    if (!noise.is_noiseless()) {
        if (!(sigma >= 0.0) || !std::isfinite(sigma))
            throw std::invalid_argument("simulate_subswath_echo: invalid noise sigma");
        echo.noise_sigma = sigma;
        ComplexGaussianNoise v(noise.seed, sigma);
        for (auto& r : echo.samples) r += v();
    }
    return echo;
}

}  // namespace irci
