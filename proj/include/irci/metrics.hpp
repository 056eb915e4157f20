#pragma once

// Error, sidelobe and noise-floor measures for recovered range profiles.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "irci/errors.hpp"
#include "irci/spectral.hpp"

namespace irci {

/// Reported in place of -inf when a ratio's numerator is exactly zero.
inline constexpr double kDbFloor = -300.0;

inline double to_db20(double ratio) {
    if (ratio <= 0.0) return kDbFloor;
    return std::max(kDbFloor, 20.0 * std::log10(ratio));
}

inline double to_db10(double ratio) {
    if (ratio <= 0.0) return kDbFloor;
    return std::max(kDbFloor, 10.0 * std::log10(ratio));
}

struct ProfileError {
    double max_abs_error = 0.0;
    double mse = 0.0;
};

inline ProfileError profile_error(std::span<const Complex> recovered, std::span<const Complex> truth) {
    if (recovered.size() != truth.size()) {
        throw std::invalid_argument("profile_error: length mismatch (" + std::to_string(recovered.size()) +
                                    " vs " + std::to_string(truth.size()) + ")");
    }
    if (recovered.empty()) return {};
    ProfileError err;
    double sum = 0.0;
    for (std::size_t i = 0; i < recovered.size(); ++i) {
        const double d2 = std::norm(recovered[i] - truth[i]);
        err.max_abs_error = std::max(err.max_abs_error, std::sqrt(d2));
        sum += d2;
    }
    err.mse = sum / static_cast<double>(recovered.size());
    return err;
}

/// 20 log10(max outside mainlobe / max inside mainlobe), floored at kDbFloor.
inline double peak_sidelobe_db(std::span<const double> magnitude, const std::set<std::size_t>& mainlobe_cells) {
    if (mainlobe_cells.empty()) throw std::invalid_argument("peak_sidelobe_db: empty mainlobe set");
    double main = 0.0, side = 0.0;
    for (std::size_t i = 0; i < magnitude.size(); ++i) {
        if (mainlobe_cells.count(i))
            main = std::max(main, magnitude[i]);
        else
            side = std::max(side, magnitude[i]);
    }
    if (main == 0.0) throw UndefinedMetric("peak_sidelobe_db: mainlobe peak is zero");
    return to_db20(side / main);
}

inline std::vector<double> magnitudes(std::span<const Complex> x) {
    std::vector<double> out(x.size());
    std::transform(x.begin(), x.end(), out.begin(), [](const Complex& v) { return std::abs(v); });
    return out;
}

/// Cells with nonzero truth, widened by `guard` cells on each side.
inline std::set<std::size_t> support_cells(std::span<const Complex> truth, std::size_t guard = 0) {
    std::set<std::size_t> cells;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == Complex{}) continue;
        const std::size_t lo = i >= guard ? i - guard : 0;
        const std::size_t hi = std::min(truth.size() - 1, i + guard);
        for (std::size_t c = lo; c <= hi; ++c) cells.insert(c);
    }
    return cells;
}

/// Largest relative magnitude error over the true scatterer cells.
inline double peak_amplitude_error(std::span<const double> magnitude, std::span<const Complex> truth) {
    if (magnitude.size() != truth.size()) throw std::invalid_argument("peak_amplitude_error: length mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double t = std::abs(truth[i]);
        if (t == 0.0) continue;
        worst = std::max(worst, std::abs(magnitude[i] - t) / t);
    }
    return worst;
}

/// Energy off the true support relative to energy on it, in dB.
inline double leakage_db(std::span<const Complex> recovered, std::span<const Complex> truth) {
    if (recovered.size() != truth.size()) throw std::invalid_argument("leakage_db: length mismatch");
    double on = 0.0, off = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == Complex{})
            off += std::norm(recovered[i]);
        else
            on += std::norm(truth[i]);
    }
    if (on == 0.0) throw UndefinedMetric("leakage_db: truth profile is all zero");
    return to_db10(off / on);
}

inline constexpr std::size_t kMinNoiseTrials = 100;

/// Pooled per-cell variance E|h|^2 of recovered zero-scene profiles (zero mean assumed).
/// Each trial contributes every cell of every profile it holds.
inline double noise_floor(std::span<const std::vector<ComplexVector>> trials) {
    if (trials.size() < kMinNoiseTrials) {
        throw InsufficientData("noise_floor: " + std::to_string(trials.size()) + " trials, need at least " +
                               std::to_string(kMinNoiseTrials));
    }
    double sum = 0.0;
    std::size_t cells = 0;
    for (const auto& trial : trials) {
        for (const auto& profile : trial) {
            for (const auto& v : profile) sum += std::norm(v);
            cells += profile.size();
        }
    }
    if (cells == 0) throw InsufficientData("noise_floor: trials contain no cells");
    return sum / static_cast<double>(cells);
}

struct ChannelMetrics {
    std::size_t channel = 1;
    ProfileError error;
    std::optional<double> peak_sidelobe_db;
    std::optional<double> leakage_db;
    std::optional<double> peak_amplitude_error;
    std::optional<double> papr_db;
};

struct MetricReport {
    std::vector<ChannelMetrics> channels;
    double max_abs_error = 0.0;  // worst over channels
    double mse = 0.0;            // mean over channels
    std::optional<double> peak_sidelobe_db;
    std::optional<double> leakage_db;
    std::optional<double> noise_floor_estimate;
};

}  // namespace irci
