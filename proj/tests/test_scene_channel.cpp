#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "irci/scene_channel.hpp"
#include "oracles.hpp"

using namespace irci;

namespace {

SwathScene ramp_scene(std::size_t m_t, std::vector<std::size_t> partition) {
    auto scene = SwathScene::zeros(m_t, std::move(partition));
    for (std::size_t m = 0; m < m_t; ++m)
        for (std::size_t c = 0; c < scene.total_cells(); ++c) scene.rcs[m][c] = Complex(double(c), double(m));
    return scene;
}

std::vector<OfdmPulse> zc_pulses(std::size_t n, std::size_t cp, std::size_t m_t = 2) {
    std::vector<OfdmPulse> out;
    for (const auto& w : build_weight_set(generate_zc({n, 1}), m_t)) out.push_back(synthesize_pulse(w, cp));
    return out;
}

}  // namespace

TEST(GateSubswath, SlicesAndReindexes) {
    const auto scene = ramp_scene(2, {2, 3});
    const auto first = gate_subswath(scene, 1);
    ASSERT_EQ(first.size(), 2u);
    EXPECT_EQ(first[0], (ComplexVector{0.0, 1.0}));
    const auto second = gate_subswath(scene, 2);
    EXPECT_EQ(second[0], (ComplexVector{2.0, 3.0, 4.0}));
    EXPECT_EQ(second[1], (ComplexVector{{2, 1}, {3, 1}, {4, 1}}));
    EXPECT_THROW(gate_subswath(scene, 0), std::invalid_argument);
    EXPECT_THROW(gate_subswath(scene, 3), std::invalid_argument);
}

TEST(GateSubswath, SingleSubswathIsWholeScene) {
    const auto scene = ramp_scene(2, {7});
    EXPECT_EQ(gate_subswath(scene, 1), scene.rcs);
}

TEST(NoiseSigma, FromPeakScatterer) {
    auto scene = SwathScene::zeros(2, {10});
    scene.rcs[1][4] = 1.0;
    EXPECT_NEAR(std::pow(noise_sigma_from_snr(scene, 0.0), 2), 1.0, 1e-15);
    EXPECT_NEAR(std::pow(noise_sigma_from_snr(scene, 20.0), 2), 0.01, 1e-15);
    scene.rcs[0][2] = 2.0;
    EXPECT_NEAR(std::pow(noise_sigma_from_snr(scene, 0.0), 2), 4.0, 1e-14);
    EXPECT_THROW(noise_sigma_from_snr(SwathScene::zeros(2, {10}), 0.0), UndefinedMetric);
}

TEST(SubswathEcho, UnitScattererAtOrigin) {
    const auto pulses = zc_pulses(16, 4);
    std::vector<ComplexVector> h(2, ComplexVector(3));
    h[0][0] = 1.0;
    const auto echo = simulate_subswath_echo(h, pulses, NoiseSpec::noiseless(), 0.0);
    ASSERT_EQ(echo.samples.size(), 16u + 3 + 4 - 1);
    for (std::size_t i = 0; i < pulses[0].size(); ++i) EXPECT_EQ(echo.samples[i], pulses[0].samples[i]);
    for (std::size_t i = pulses[0].size(); i < echo.samples.size(); ++i) EXPECT_EQ(echo.samples[i], Complex{});
}

TEST(SubswathEcho, ZeroScene) {
    const auto echo = simulate_subswath_echo(std::vector<ComplexVector>(2, ComplexVector(5)), zc_pulses(16, 5),
                                             NoiseSpec::noiseless(), 0.0);
    for (const auto& v : echo.samples) EXPECT_EQ(v, Complex{});
}

TEST(SubswathEcho, DelayedScattererMatchesDoubleSum) {
    const auto pulses = zc_pulses(32, 8);
    for (std::size_t d : {0u, 3u, 7u}) {
        std::vector<ComplexVector> h(2, ComplexVector(8));
        h[0][d] = 1.0;
        const auto echo = simulate_subswath_echo(h, pulses, NoiseSpec::noiseless(), 0.0);
        const auto ref = oracle::echo(h, {pulses[0].samples, pulses[1].samples});
        EXPECT_LT(oracle::max_abs_diff(echo.samples, ref), 1e-14);
        for (std::size_t i = 0; i < pulses[0].size(); ++i) EXPECT_EQ(echo.samples[i + d], pulses[0].samples[i]);
    }
}

TEST(SubswathEcho, LinearityAndChannelSuperposition) {
    std::mt19937_64 rng(11);
    const auto pulses = zc_pulses(64, 16);
    std::vector<ComplexVector> a{oracle::random_vector(16, rng), oracle::random_vector(16, rng)};
    std::vector<ComplexVector> b{oracle::random_vector(16, rng), oracle::random_vector(16, rng)};
    std::vector<ComplexVector> sum(2, ComplexVector(16));
    for (std::size_t m = 0; m < 2; ++m)
        for (std::size_t l = 0; l < 16; ++l) sum[m][l] = a[m][l] + b[m][l];
    const auto ea = simulate_subswath_echo(a, pulses, NoiseSpec::noiseless(), 0.0).samples;
    const auto eb = simulate_subswath_echo(b, pulses, NoiseSpec::noiseless(), 0.0).samples;
    const auto es = simulate_subswath_echo(sum, pulses, NoiseSpec::noiseless(), 0.0).samples;
    for (std::size_t i = 0; i < es.size(); ++i) EXPECT_NEAR(std::abs(es[i] - ea[i] - eb[i]), 0.0, 1e-12);

    std::vector<ComplexVector> only1{a[0], ComplexVector(16)}, only2{ComplexVector(16), a[1]};
    const auto e1 = simulate_subswath_echo(only1, pulses, NoiseSpec::noiseless(), 0.0).samples;
    const auto e2 = simulate_subswath_echo(only2, pulses, NoiseSpec::noiseless(), 0.0).samples;
    for (std::size_t i = 0; i < ea.size(); ++i) EXPECT_NEAR(std::abs(ea[i] - e1[i] - e2[i]), 0.0, 1e-12);
}

TEST(SubswathEcho, SeededNoiseIsReproducible) {
    const auto pulses = zc_pulses(64, 8);
    std::vector<ComplexVector> h(2, ComplexVector(8));
    h[1][2] = {0.5, -0.5};
    const auto e1 = simulate_subswath_echo(h, pulses, NoiseSpec{0.0, 42}, 0.7);
    const auto e2 = simulate_subswath_echo(h, pulses, NoiseSpec{0.0, 42}, 0.7);
    const auto e3 = simulate_subswath_echo(h, pulses, NoiseSpec{0.0, 43}, 0.7);
    ASSERT_EQ(e1.samples.size(), e2.samples.size());
    EXPECT_EQ(std::memcmp(e1.samples.data(), e2.samples.data(), e1.samples.size() * sizeof(Complex)), 0);
    EXPECT_NE(e1.samples, e3.samples);
    EXPECT_DOUBLE_EQ(e1.noise_sigma, 0.7);
}

TEST(SubswathEcho, NoiseVarianceCalibrated) {
    // zero scene, N = 1024 -> 1223 samples per echo; 100 echoes pool > 1e5 samples
    const auto pulses = zc_pulses(1024, 200);
    const std::vector<ComplexVector> h(2, ComplexVector(200));
    const double sigma = 1.5;
    double sum = 0.0, mean_re = 0.0;
    std::size_t count = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto e = simulate_subswath_echo(h, pulses, NoiseSpec{0.0, derive_seed(77, s)}, sigma);
        for (const auto& v : e.samples) {
            sum += std::norm(v);
            mean_re += v.real();
        }
        count += e.samples.size();
    }
    ASSERT_GE(count, 100000u);
    EXPECT_NEAR(sum / double(count), sigma * sigma, 0.02 * sigma * sigma);
    EXPECT_NEAR(mean_re / double(count), 0.0, 0.02);
}

TEST(SubswathEcho, RejectsMismatchedInputs) {
    const auto pulses = zc_pulses(16, 4);
    EXPECT_THROW(simulate_subswath_echo(std::vector<ComplexVector>(3, ComplexVector(4)), pulses,
                                        NoiseSpec::noiseless(), 0.0),
                 std::invalid_argument);
    EXPECT_THROW(simulate_subswath_echo(std::vector<ComplexVector>{ComplexVector(4), ComplexVector(3)}, pulses,
                                        NoiseSpec::noiseless(), 0.0),
                 std::invalid_argument);
    auto mixed = pulses;
    mixed[1] = synthesize_pulse(generate_zc({16, 1}), 2);
    EXPECT_THROW(simulate_subswath_echo(std::vector<ComplexVector>(2, ComplexVector(4)), mixed,
                                        NoiseSpec::noiseless(), 0.0),
                 std::invalid_argument);
}

TEST(SwathScene, ValidatesAgainstWaveform) {
    auto scene = SwathScene::zeros(2, {200, 180});
    EXPECT_NO_THROW(scene.validate_for(1024));
    scene.partition = {513};
    scene.rcs.assign(2, ComplexVector(513));
    EXPECT_THROW(scene.validate_for(1024), ConstraintViolation);
    scene.rcs[0].pop_back();
    EXPECT_THROW(scene.validate(), std::invalid_argument);
}

TEST(DeriveSeed, DistinctStreams) {
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(5, 9), derive_seed(5, 9));
}
