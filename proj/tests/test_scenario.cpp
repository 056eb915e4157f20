#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "irci/io.hpp"
#include "irci/pipeline.hpp"
#include "irci/scenario.hpp"
#include "irci/selftest.hpp"

using namespace irci;
using nlohmann::json;

namespace {

const std::filesystem::path kConfigs = IRCI_CONFIG_DIR;

json two_channel_json() {
    return json{{"n", 1024}, {"mu", 1}, {"m_t", 2}, {"partition", {200}}, {"snr_db", 0.0}, {"seed", 3},
                {"scatterers", {{"random", {{"per_channel", 8}}}}}};
}

}  // namespace

TEST(LoadConfig, BundledTwoChannel) {
    const auto cfg = load_config(kConfigs / "two_channel_noisy.json");
    EXPECT_EQ(cfg.n, 1024u);
    EXPECT_EQ(cfg.mu, 1u);
    EXPECT_EQ(cfg.m_t, 2u);
    EXPECT_EQ(cfg.partition, std::vector<std::size_t>{200});
    ASSERT_TRUE(cfg.snr_db.has_value());
    EXPECT_EQ(*cfg.snr_db, 0.0);
    ASSERT_TRUE(cfg.random_scatterers.has_value());
    EXPECT_EQ(cfg.random_scatterers->per_channel, 8u);
}

TEST(LoadConfig, AllBundledConfigsLoad) {
    for (const auto& entry : std::filesystem::directory_iterator(kConfigs))
        EXPECT_NO_THROW(load_config(entry.path())) << entry.path();
}

TEST(LoadConfig, CpConstraintBoundary) {
    auto j = two_channel_json();
    j["partition"] = {512};
    EXPECT_NO_THROW(parse_config(j));
    j["partition"] = {513};
    try {
        parse_config(j);
        FAIL() << "expected constraint violation";
    } catch (const ConstraintViolation& e) {
        EXPECT_EQ(e.value(), 513u);
        EXPECT_EQ(e.limit(), 512u);
        EXPECT_NE(std::string(e.what()).find("partition"), std::string::npos);
    }
}

TEST(LoadConfig, RejectsBadRootIndex) {
    auto j = two_channel_json();
    j["mu"] = 2;
    try {
        parse_config(j);
        FAIL() << "expected config error";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "mu");
    }
}

TEST(LoadConfig, ParseErrors) {
    auto j = two_channel_json();
    j["n"] = "big";
    EXPECT_THROW(parse_config(j), ParseError);
    j = two_channel_json();
    j.erase("partition");
    EXPECT_THROW(parse_config(j), ParseError);
    j = two_channel_json();
    j["snr_db"] = true;
    EXPECT_THROW(parse_config(j), ParseError);
    EXPECT_THROW(load_config("/nonexistent/config.json"), ParseError);

    const auto tmp = std::filesystem::temp_directory_path() / "irci_bad.json";
    std::ofstream(tmp) << "{ \"n\": 1024, ";
    EXPECT_THROW(load_config(tmp), ParseError);
    std::filesystem::remove(tmp);
}

TEST(LoadConfig, ScattererValidation) {
    auto j = two_channel_json();
    j["scatterers"] = {{"channels", {{{3, 1.0, 0.0}}, {{250, 1.0, 0.0}}}}};
    EXPECT_THROW(parse_config(j), ConfigError);
    j["scatterers"] = {{"channels", {{{3, 1.0, 0.0}}}}};
    EXPECT_THROW(parse_config(j), ConfigError);
    j["scatterers"] = {{"channels", {{{3, 1.0, 0.0}}, {{199, 0.0, 1.0}}}}};
    const auto cfg = parse_config(j);
    const auto scene = build_scene(cfg);
    EXPECT_EQ(scene.rcs[1][199], Complex(0.0, 1.0));
}

TEST(RandomScene, DistinctCellsAndRanges) {
    const RandomScatterers spec{8, 0.2, 1.0};
    const auto scene = random_scene(2, {200}, spec, 99);
    for (const auto& row : scene.rcs) {
        std::size_t nonzero = 0;
        for (const auto& v : row) {
            if (v == Complex{}) continue;
            ++nonzero;
            EXPECT_GE(std::abs(v), 0.2 - 1e-12);
            EXPECT_LE(std::abs(v), 1.0 + 1e-12);
        }
        EXPECT_EQ(nonzero, 8u);
    }
    EXPECT_EQ(random_scene(2, {200}, spec, 99).rcs, scene.rcs);
    EXPECT_NE(random_scene(2, {200}, spec, 100).rcs, scene.rcs);
}

TEST(Pipeline, ZeroScatterersNoiseless) {
    auto j = two_channel_json();
    j["scatterers"] = {{"channels", {json::array(), json::array()}}};
    j["snr_db"] = "noiseless";
    const auto cfg = parse_config(j);
    const auto res = run_scene(build_transmit_system(cfg), build_scene(cfg), cfg.snr_db, cfg.seed);
    for (const auto& p : res.report.profiles)
        for (const auto& v : p.values) EXPECT_EQ(std::abs(v), 0.0);
    EXPECT_EQ(res.metrics.max_abs_error, 0.0);
}

TEST(Pipeline, ArtifactsAreByteIdentical) {
    const auto cfg = load_config(kConfigs / "two_channel_noisy.json");
    auto render = [&] {
        const auto sys = build_transmit_system(cfg);
        auto res = run_scene(sys, build_scene(cfg), cfg.snr_db, cfg.seed);
        res.metrics.noise_floor_estimate = monte_carlo_noise_floor(sys, cfg.partition, res.sigma, 100, cfg.seed);
        return io::profiles_csv(res.truth, res.report.profiles) + io::to_json(res.metrics).dump(2);
    };
    EXPECT_EQ(render(), render());
}

TEST(Pipeline, CompareFaintScatterer) {
    const auto cfg = load_config(kConfigs / "faint_scatterer.json");
    const auto cmp = run_comparison(build_transmit_system(cfg), build_scene(cfg), cfg.snr_db, cfg.seed,
                                    cfg.baseline.bandwidth);
    const auto& truth = cmp.proposed.truth;
    // faint scatterer of channel 1 at cell 47
    EXPECT_NEAR(std::abs(cmp.proposed.report.profiles[0].values[47] - truth.rcs[0][47]), 0.0, 1e-9);
    EXPECT_LE(*cmp.proposed.metrics.peak_sidelobe_db, -180.0);
    EXPECT_GE(*cmp.baseline_metrics.peak_sidelobe_db, -40.0);
    // baseline sidelobes next to the faint scatterer exceed its level
    double near = 0.0;
    for (std::size_t c = 44; c <= 52; ++c)
        if (c != 47) near = std::max(near, cmp.baseline[0][c]);
    EXPECT_GT(near, std::abs(truth.rcs[0][47]));
}

TEST(Io, CsvSchemas) {
    auto scene = SwathScene::zeros(2, {3});
    scene.rcs[0][1] = {0.5, -0.25};
    const auto sys = build_transmit_system(16, 1, 2, scene.partition);
    const auto res = run_scene(sys, scene, std::nullopt, 0);
    const auto csv = io::profiles_csv(res.truth, res.report.profiles);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "cell,channel,truth_re,truth_im,rec_re,rec_im,rec_mag");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 2);
    EXPECT_NE(csv.find("\n1,1,0.5,-0.25,"), std::string::npos);

    const auto w = io::weights_csv(sys.weights);
    EXPECT_EQ(w.substr(0, w.find('\n')), "k,channel,re,im");
    EXPECT_EQ(std::count(w.begin(), w.end(), '\n'), 1 + 16 * 2);
    const auto p = io::pulses_csv(sys.pulses);
    EXPECT_EQ(std::count(p.begin(), p.end(), '\n'), 1 + 19 * 2);
}

TEST(Io, SvgIsWellFormed) {
    const auto svg = io::svg_plot("t", {{"a", {0.0, 1.0, 0.5}, "red", 'o'}, {"b", {0.1, 0.9, 0.4}, "blue", '+'}});
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_NE(svg.find("<circle"), std::string::npos);
}

TEST(Selftest, DefaultBuildPasses) {
    for (const auto& r : run_selftest()) EXPECT_TRUE(r.passed) << r.name << " worst " << r.worst;
}

TEST(Selftest, InjectedShiftSignErrorIsCaught) {
    SelftestOptions opts;
    opts.inject_shift_sign_error = true;
    for (const auto& r : run_selftest(opts)) {
        if (r.name.find("shift identity") != std::string::npos)
            EXPECT_FALSE(r.passed);
        else
            EXPECT_TRUE(r.passed) << r.name;
    }
}
