#include <gtest/gtest.h>

#include "irci/baselines.hpp"
#include "irci/metrics.hpp"

using namespace irci;

TEST(LfmChirp, BasicShape) {
    const auto up = lfm_chirp(1024, +1, 1.0);
    const auto down = lfm_chirp(1024, -1, 1.0);
    EXPECT_EQ(up.samples[0], Complex(1.0, 0.0));
    for (std::size_t i = 0; i < 1024; ++i) {
        EXPECT_NEAR(std::abs(up.samples[i]), 1.0, 1e-12);
        EXPECT_EQ(down.samples[i], std::conj(up.samples[i]));
    }
    EXPECT_THROW(lfm_chirp(1, 1, 0.5), std::invalid_argument);
    EXPECT_THROW(lfm_chirp(64, 1, 0.0), std::invalid_argument);
    EXPECT_THROW(lfm_chirp(64, 1, 1.5), std::invalid_argument);
    EXPECT_THROW(lfm_chirp(64, 0, 0.5), std::invalid_argument);
}

TEST(MatchedFilterProfile, NormalizedAutocorrelation) {
    const auto w = lfm_chirp(256, +1, 0.5);
    const auto prof = matched_filter_profile(w.samples, w);
    ASSERT_EQ(prof.size(), 1u);
    EXPECT_NEAR(prof[0], 1.0, 1e-12);

    ComplexVector echo(256 + 9);
    const auto zero = matched_filter_profile(echo, w);
    for (double v : zero) EXPECT_EQ(v, 0.0);
    EXPECT_THROW(matched_filter_profile(ComplexVector(100), w), std::invalid_argument);
}

TEST(MatchedFilterProfile, LfmSidelobeNearThirteenDb) {
    // Place one scatterer mid-swath so the profile covers lags on both sides.
    const std::size_t n = 1024;
    const auto w = lfm_chirp(n, +1, kDefaultChirpBandwidth);
    ComplexVector echo(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) echo[n / 2 + i] = w.samples[i];
    const auto prof = matched_filter_profile(echo, w);
    EXPECT_NEAR(prof[n / 2], 1.0, 1e-9);
    const double psl = peak_sidelobe_db(prof, {n / 2 - 1, n / 2, n / 2 + 1});
    EXPECT_GT(psl, -20.0);
    EXPECT_LT(psl, -10.0);
}

TEST(SimulateBaseline, EmptyAndSingleScatterer) {
    auto scene = SwathScene::zeros(2, {64});
    const std::vector<ChirpWaveform> w{lfm_chirp(256, +1, 0.5), lfm_chirp(256, -1, 0.5)};
    for (const auto& prof : simulate_baseline(scene, w, NoiseSpec::noiseless()))
        for (double v : prof) EXPECT_EQ(v, 0.0);

    scene.rcs[0][20] = 1.0;
    const auto profs = simulate_baseline(scene, w, NoiseSpec::noiseless());
    ASSERT_EQ(profs[0].size(), 64u);
    const auto peak = std::max_element(profs[0].begin(), profs[0].end()) - profs[0].begin();
    EXPECT_EQ(peak, 20);
    EXPECT_NEAR(profs[0][20], 1.0, 1e-9);
    EXPECT_THROW(simulate_baseline(scene, std::vector<ChirpWaveform>{w[0]}, NoiseSpec::noiseless()),
                 std::invalid_argument);
}

TEST(SimulateBaseline, CloselySpacedScatterersDistortPeaks) {
    auto scene = SwathScene::zeros(1, {200});
    scene.rcs[0][100] = 1.0;
    scene.rcs[0][103] = 1.0;
    const std::vector<ChirpWaveform> w{lfm_chirp(1024, +1, kDefaultChirpBandwidth)};
    const auto prof = simulate_baseline(scene, w, NoiseSpec::noiseless())[0];
    EXPECT_GT(std::abs(prof[100] - 1.0), 1e-3);
    EXPECT_GT(std::abs(prof[103] - 1.0), 1e-3);
    EXPECT_GT(prof[101], 1e-3);
    EXPECT_GT(prof[90], 1e-4);
}

TEST(SimulateBaseline, CrossChannelLeakage) {
    auto scene = SwathScene::zeros(2, {128});
    scene.rcs[0][40] = 1.0;
    const std::vector<ChirpWaveform> w{lfm_chirp(1024, +1, 0.5), lfm_chirp(1024, -1, 0.5)};
    const auto profs = simulate_baseline(scene, w, NoiseSpec::noiseless());
    // channel 2 has no scatterers, but the up-chirp leaks through the down-chirp filter
    const double leak = *std::max_element(profs[1].begin(), profs[1].end());
    EXPECT_GT(leak, 1e-3);
    EXPECT_LT(leak, 0.5);
}
