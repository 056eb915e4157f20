#pragma once

// End-to-end drivers: weight set -> pulses -> per-subswath echoes ->
// reconstruction -> metrics, plus the LFM comparison and Monte Carlo noise runs.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

#include "irci/baselines.hpp"
#include "irci/metrics.hpp"
#include "irci/ofdm_waveform.hpp"
#include "irci/reconstruction.hpp"
#include "irci/scenario.hpp"
#include "irci/scene_channel.hpp"
#include "irci/zc_sequences.hpp"

namespace irci {

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Results must be
/// written by index; the first exception is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t workers = 0) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Transmit side shared by every subswath.
struct TransmitSystem {
    std::vector<WeightSequence> weights;
    std::vector<OfdmPulse> pulses;
    std::size_t cp_len = 0;

    std::size_t n() const { return weights.front().size(); }
    std::size_t m_t() const { return weights.size(); }
};

inline TransmitSystem build_transmit_system(std::size_t n, std::size_t mu, std::size_t m_t,
                                            std::span<const std::size_t> partition) {
    TransmitSystem sys;
    sys.cp_len = required_cp_len(partition, n, m_t);
    sys.weights = build_weight_set(generate_zc({n, mu}), m_t);
    sys.pulses.reserve(m_t);
    for (const auto& w : sys.weights) sys.pulses.push_back(synthesize_pulse(w, sys.cp_len));
    return sys;
}

inline TransmitSystem build_transmit_system(const ScenarioConfig& cfg) {
    return build_transmit_system(cfg.n, cfg.mu, cfg.m_t, cfg.partition);
}

/// One echo per subswath; noise streams are derived from `seed` per subswath.
inline std::vector<EchoRecord> simulate_echoes(const TransmitSystem& sys, const SwathScene& scene,
                                               std::optional<double> snr_db, double sigma, std::uint64_t seed) {
    scene.validate_for(sys.n());
    if (scene.m_t() != sys.m_t())
        throw std::invalid_argument("simulate_echoes: scene and transmit system disagree on M_T");
    std::vector<EchoRecord> echoes(scene.subswath_count());
    parallel_for(echoes.size(), [&](std::size_t i) {
        const std::size_t p = i + 1;
        NoiseSpec noise{snr_db, streams::subswath_noise(seed, p)};
        const auto local = gate_subswath(scene, p);
        echoes[i] = simulate_subswath_echo(local, sys.pulses, noise, sigma, p);
    });
    return echoes;
}

struct SimulationResult {
    SwathScene truth;
    double sigma = 0.0;  // per-sample echo noise std (0 when noiseless)
    std::vector<EchoRecord> echoes;
    ReconstructionReport report;
    MetricReport metrics;
};

inline MetricReport score_profiles(const SwathScene& truth, std::span<const RangeProfile> profiles) {
    MetricReport rep;
    double mse_sum = 0.0;
    for (std::size_t m = 0; m < profiles.size(); ++m) {
        ChannelMetrics cm;
        cm.channel = m + 1;
        cm.error = profile_error(profiles[m].values, truth.rcs[m]);
        const auto mag = magnitudes(profiles[m].values);
        const auto support = support_cells(truth.rcs[m]);
        if (!support.empty()) {
            try {
                cm.peak_sidelobe_db = peak_sidelobe_db(mag, support);
            } catch (const UndefinedMetric&) {
            }
            cm.leakage_db = leakage_db(profiles[m].values, truth.rcs[m]);
            cm.peak_amplitude_error = peak_amplitude_error(mag, truth.rcs[m]);
        }
        rep.max_abs_error = std::max(rep.max_abs_error, cm.error.max_abs_error);
        mse_sum += cm.error.mse;
        if (cm.peak_sidelobe_db)
            rep.peak_sidelobe_db = std::max(rep.peak_sidelobe_db.value_or(kDbFloor), *cm.peak_sidelobe_db);
        if (cm.leakage_db) rep.leakage_db = std::max(rep.leakage_db.value_or(kDbFloor), *cm.leakage_db);
        rep.channels.push_back(cm);
    }
    if (!profiles.empty()) rep.mse = mse_sum / static_cast<double>(profiles.size());
    return rep;
}

inline SimulationResult run_scene(const TransmitSystem& sys, SwathScene scene, std::optional<double> snr_db,
                                  std::uint64_t seed, bool keep_intermediates = false) {
    SimulationResult res;
    res.sigma = 0.0;
    if (snr_db) {
        // An all-zero scene has no SNR reference; it is simulated without noise.
        try {
            res.sigma = noise_sigma_from_snr(scene, *snr_db);
        } catch (const UndefinedMetric&) {
            snr_db.reset();
        }
    }
    res.echoes = simulate_echoes(sys, scene, snr_db, res.sigma, seed);
    res.report = reconstruct_swath(res.echoes, sys.weights, keep_intermediates);
    res.metrics = score_profiles(scene, res.report.profiles);
    for (std::size_t m = 0; m < sys.pulses.size(); ++m) res.metrics.channels[m].papr_db = papr_db(sys.pulses[m]);
    res.truth = std::move(scene);
    return res;
}

/// Pooled per-cell variance of recovered profiles for a zero scene with echo
/// noise std `sigma`, over `trials` independent seeded runs.
inline double monte_carlo_noise_floor(const TransmitSystem& sys, const std::vector<std::size_t>& partition,
                                      double sigma, std::size_t trials, std::uint64_t seed) {
    const SwathScene zero = SwathScene::zeros(sys.m_t(), partition);
    std::vector<std::vector<ComplexVector>> recovered(trials);
    parallel_for(trials, [&](std::size_t t) {
        const std::uint64_t trial_seed = streams::trial(seed, t);
        std::vector<EchoRecord> echoes;
        for (std::size_t p = 1; p <= zero.subswath_count(); ++p) {
            NoiseSpec noise{0.0, streams::subswath_noise(trial_seed, p)};
            echoes.push_back(simulate_subswath_echo(gate_subswath(zero, p), sys.pulses, noise, sigma, p));
        }
        auto report = reconstruct_swath(echoes, sys.weights);
        for (auto& prof : report.profiles) recovered[t].push_back(std::move(prof.values));
    });
    return noise_floor(recovered);
}

struct ComparisonResult {
    SimulationResult proposed;
    std::vector<std::vector<double>> baseline;  // per-channel magnitude profiles
    MetricReport baseline_metrics;
};

inline std::vector<ChirpWaveform> baseline_waveforms(std::size_t n, std::size_t m_t, double bandwidth) {
    if (m_t > 2) throw std::invalid_argument("baseline: the up/down chirp pair covers at most two transmitters");
    std::vector<ChirpWaveform> w;
    w.push_back(lfm_chirp(n, +1, bandwidth));
    if (m_t == 2) w.push_back(lfm_chirp(n, -1, bandwidth));
    return w;
}

/// Sidelobes are measured outside the scatterer cells widened by this guard,
/// which covers the chirp mainlobe.
inline constexpr std::size_t kBaselineMainlobeGuard = 1;

inline MetricReport score_magnitudes(const SwathScene& truth, const std::vector<std::vector<double>>& profiles) {
    MetricReport rep;
    double mse_sum = 0.0;
    for (std::size_t m = 0; m < profiles.size(); ++m) {
        ChannelMetrics cm;
        cm.channel = m + 1;
        ComplexVector as_complex(profiles[m].begin(), profiles[m].end());
        ComplexVector truth_mag(truth.rcs[m].size());
        for (std::size_t i = 0; i < truth_mag.size(); ++i) truth_mag[i] = std::abs(truth.rcs[m][i]);
        cm.error = profile_error(as_complex, truth_mag);
        const auto support = support_cells(truth.rcs[m], kBaselineMainlobeGuard);
        if (!support.empty()) {
            try {
                cm.peak_sidelobe_db = peak_sidelobe_db(profiles[m], support);
            } catch (const UndefinedMetric&) {
            }
            cm.leakage_db = leakage_db(as_complex, truth_mag);
            cm.peak_amplitude_error = peak_amplitude_error(profiles[m], truth.rcs[m]);
        }
        rep.max_abs_error = std::max(rep.max_abs_error, cm.error.max_abs_error);
        mse_sum += cm.error.mse;
        if (cm.peak_sidelobe_db)
            rep.peak_sidelobe_db = std::max(rep.peak_sidelobe_db.value_or(kDbFloor), *cm.peak_sidelobe_db);
        if (cm.leakage_db) rep.leakage_db = std::max(rep.leakage_db.value_or(kDbFloor), *cm.leakage_db);
        rep.channels.push_back(cm);
    }
    if (!profiles.empty()) rep.mse = mse_sum / static_cast<double>(profiles.size());
    return rep;
}

inline ComparisonResult run_comparison(const TransmitSystem& sys, SwathScene scene, std::optional<double> snr_db,
                                       std::uint64_t seed, double bandwidth) {
    ComparisonResult out;
    const auto chirps = baseline_waveforms(sys.n(), sys.m_t(), bandwidth);
    out.proposed = run_scene(sys, std::move(scene), snr_db, seed);
    const auto& truth = out.proposed.truth;
    NoiseSpec noise{out.proposed.sigma > 0.0 ? snr_db : std::nullopt, derive_seed(seed, streams::kBaselineNoise)};
    out.baseline = simulate_baseline(truth, chirps, noise, out.proposed.sigma);
    out.baseline_metrics = score_magnitudes(truth, out.baseline);
    return out;
}

}  // namespace irci
