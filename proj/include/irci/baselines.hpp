#pragma once

// Conventional LFM matched-filter range compression, used as the sidelobe
// reference against the IRCI-free reconstruction.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "irci/scene_channel.hpp"
#include "irci/spectral.hpp"

namespace irci {

/// Default swept fraction of the sample rate; the chirp is then sampled at
/// twice its bandwidth and shows the usual ~-13 dB first sidelobe.
inline constexpr double kDefaultChirpBandwidth = 0.5;

struct ChirpWaveform {
    ComplexVector samples;
    int sweep_sign = +1;
    double normalized_bandwidth = kDefaultChirpBandwidth;

    std::size_t size() const { return samples.size(); }
};

/// w(n) = exp(j sign pi B n^2 / N)
inline ChirpWaveform lfm_chirp(std::size_t n_samples, int sweep_sign, double normalized_bandwidth) {
    if (n_samples < 2) throw std::invalid_argument("lfm_chirp: need at least two samples");
    if (sweep_sign != 1 && sweep_sign != -1) throw std::invalid_argument("lfm_chirp: sweep sign must be +1 or -1");
    if (!(normalized_bandwidth > 0.0 && normalized_bandwidth <= 1.0))
        throw std::invalid_argument("lfm_chirp: normalized bandwidth must lie in (0, 1]");

    ChirpWaveform w;
    w.sweep_sign = sweep_sign;
    w.normalized_bandwidth = normalized_bandwidth;
    w.samples.resize(n_samples);
    const double n = static_cast<double>(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i);
        w.samples[i] = std::polar(1.0, sweep_sign * kPi * normalized_bandwidth * t * t / n);
    }
    return w;
}

/// Time-domain correlation against the waveform, one output per delay cell
/// 0 .. echo.size() - waveform.size(). Scaled by the waveform energy so a unit
/// scatterer peaks at 1.
inline std::vector<double> matched_filter_profile(std::span<const Complex> echo, const ChirpWaveform& waveform) {
    const std::size_t len = waveform.size();
    if (len == 0) throw std::invalid_argument("matched_filter_profile: empty waveform");
    if (echo.size() < len) {
        throw std::invalid_argument("matched_filter_profile: echo (" + std::to_string(echo.size()) +
                                    ") shorter than waveform (" + std::to_string(len) + ")");
    }
    const double norm = energy(waveform.samples);
    const std::size_t cells = echo.size() - len + 1;
    std::vector<double> profile(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        Complex acc{};
        for (std::size_t i = 0; i < len; ++i) acc += echo[c + i] * std::conj(waveform.samples[i]);
        profile[c] = std::abs(acc) / norm;
    }
    return profile;
}

/// Superposed chirp echo of the whole swath (no spatial gating), noise added,
/// then each channel's matched filter over the swath cells.
inline std::vector<std::vector<double>> simulate_baseline(const SwathScene& scene,
                                                          std::span<const ChirpWaveform> waveforms,
                                                          const NoiseSpec& noise, double sigma = 0.0) {
    scene.validate();
    if (waveforms.size() != scene.m_t()) {
        throw std::invalid_argument("simulate_baseline: " + std::to_string(waveforms.size()) +
                                    " waveforms for " + std::to_string(scene.m_t()) + " channels");
    }
    const std::size_t len = waveforms.front().size();
    for (const auto& w : waveforms)
        if (w.size() != len) throw std::invalid_argument("simulate_baseline: waveforms differ in length");

    const std::size_t cells = scene.total_cells();
    ComplexVector echo(len + cells - 1);
    for (std::size_t m = 0; m < scene.m_t(); ++m) {
        const auto& h = scene.rcs[m];
        const auto& w = waveforms[m].samples;
        for (std::size_t l = 0; l < cells; ++l) {
            if (h[l] == Complex{}) continue;
            for (std::size_t i = 0; i < len; ++i) echo[l + i] += h[l] * w[i];
        }
    }
    if (!noise.is_noiseless()) {
        ComplexGaussianNoise v(noise.seed, sigma);
        for (auto& r : echo) r += v();
    }

    std::vector<std::vector<double>> profiles;
    profiles.reserve(scene.m_t());
    for (const auto& w : waveforms) profiles.push_back(matched_filter_profile(echo, w));
    return profiles;
}

}  // namespace irci
