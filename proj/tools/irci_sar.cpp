// irci_sar: scenario driver for the IRCI-free MIMO-OFDM range reconstruction.
//
//   irci_sar simulate --config configs/two_channel_noisy.json [--noiseless] [--out DIR] [--verbose] [--trials K]
//   irci_sar compare  --config configs/faint_scatterer.json [--noiseless] [--out DIR]
//   irci_sar selftest
//   irci_sar export-waveforms --config configs/two_channel_noisy.json [--out DIR]
//
// Exit codes: 0 success, 1 property or constraint failure, 2 I/O or parse error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "irci/io.hpp"
#include "irci/irci.hpp"
#include "irci/selftest.hpp"

namespace fs = std::filesystem;
using namespace irci;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitIo = 2;

struct RunOptions {
    std::string config;
    std::string out;
    bool noiseless = false;
    bool verbose = false;
    std::optional<std::size_t> trials;
    bool inject_shift_sign_error = false;
};

fs::path output_dir(const RunOptions& opt, const ScenarioConfig& cfg) {
    return opt.out.empty() ? fs::path(cfg.output_dir) : fs::path(opt.out);
}

void write_profile_plots(const fs::path& dir, const SimulationResult& res) {
    for (std::size_t m = 0; m < res.report.profiles.size(); ++m) {
        const std::string ch = std::to_string(m + 1);
        std::vector<io::PlotSeries> series{
            {"truth", magnitudes(res.truth.rcs[m]), "#1f77b4", 'o'},
            {"recovered", magnitudes(res.report.profiles[m].values), "#d62728", '+'},
        };
        io::write_text(dir / ("profile_ch" + ch + ".svg"),
                       io::svg_plot("Channel " + ch + " range profile amplitude", series));
    }
}

int run_simulate(const RunOptions& opt) {
    ScenarioConfig cfg = load_config(opt.config);
    if (opt.noiseless) cfg.snr_db.reset();
    const fs::path dir = output_dir(opt, cfg);

    const TransmitSystem sys = build_transmit_system(cfg);
    SimulationResult res = run_scene(sys, build_scene(cfg), cfg.snr_db, cfg.seed, opt.verbose);

    const std::size_t trials = opt.trials.value_or(res.sigma > 0.0 ? kMinNoiseTrials : 0);
    if (trials > 0) {
        res.metrics.noise_floor_estimate = monte_carlo_noise_floor(sys, cfg.partition, res.sigma, trials, cfg.seed);
    }

    nlohmann::ordered_json j;
    j["command"] = "simulate";
    j["scenario"] = io::scenario_json(cfg, res.sigma > 0.0 ? cfg.snr_db : std::nullopt, res.sigma);
    j["metrics"] = io::to_json(res.metrics);
    if (trials > 0) {
        j["noise_floor"] = {{"trials", trials},
                            {"expected", res.sigma * res.sigma / static_cast<double>(cfg.n)},
                            {"estimate", *res.metrics.noise_floor_estimate}};
    }

    io::write_text(dir / "profiles.csv", io::profiles_csv(res.truth, res.report.profiles));
    io::write_text(dir / "metrics.json", j.dump(2) + "\n");
    write_profile_plots(dir, res);
    if (opt.verbose) io::write_text(dir / "intermediates.csv", io::intermediates_csv(res.report.intermediates));

    std::cout << "simulate: " << cfg.partition.size() << " subswath(s), " << cfg.m_t << " channel(s), max |error| "
              << io::num(res.metrics.max_abs_error);
    if (res.metrics.noise_floor_estimate) std::cout << ", noise floor " << io::num(*res.metrics.noise_floor_estimate);
    std::cout << "\nwrote " << dir.string() << "\n";
    return kExitOk;
}

int run_compare(const RunOptions& opt) {
    ScenarioConfig cfg = load_config(opt.config);
    if (opt.noiseless) cfg.snr_db.reset();
    const fs::path dir = output_dir(opt, cfg);
    const TransmitSystem sys = build_transmit_system(cfg);

    if (!cfg.baseline.enabled) {
        std::cout << "compare: baseline disabled in config, writing proposed outputs only\n";
        const SimulationResult res = run_scene(sys, build_scene(cfg), cfg.snr_db, cfg.seed);
        nlohmann::ordered_json j;
        j["command"] = "compare";
        j["scenario"] = io::scenario_json(cfg, res.sigma > 0.0 ? cfg.snr_db : std::nullopt, res.sigma);
        j["proposed"] = io::to_json(res.metrics);
        j["baseline"] = nullptr;
        io::write_text(dir / "profiles.csv", io::profiles_csv(res.truth, res.report.profiles));
        io::write_text(dir / "metrics.json", j.dump(2) + "\n");
        write_profile_plots(dir, res);
        return kExitOk;
    }

    const ComparisonResult cmp = run_comparison(sys, build_scene(cfg), cfg.snr_db, cfg.seed, cfg.baseline.bandwidth);
    const auto& res = cmp.proposed;

    nlohmann::ordered_json j;
    j["command"] = "compare";
    j["scenario"] = io::scenario_json(cfg, res.sigma > 0.0 ? cfg.snr_db : std::nullopt, res.sigma);
    j["baseline_waveform"] = {{"type", "lfm up/down chirp pair"},
                              {"normalized_bandwidth", cfg.baseline.bandwidth},
                              {"mainlobe_guard_cells", kBaselineMainlobeGuard}};
    j["proposed"] = io::to_json(res.metrics);
    j["baseline"] = io::to_json(cmp.baseline_metrics);

    io::write_text(dir / "profiles.csv", io::profiles_csv(res.truth, res.report.profiles));
    io::write_text(dir / "compare.csv", io::comparison_csv(cmp));
    io::write_text(dir / "metrics.json", j.dump(2) + "\n");
    for (std::size_t m = 0; m < res.report.profiles.size(); ++m) {
        const std::string ch = std::to_string(m + 1);
        std::vector<io::PlotSeries> series{
            {"truth", magnitudes(res.truth.rcs[m]), "#1f77b4", 'o'},
            {"proposed", magnitudes(res.report.profiles[m].values), "#d62728", '+'},
            {"LFM matched filter", cmp.baseline[m], "#2ca02c", '*'},
        };
        io::write_text(dir / ("compare_ch" + ch + ".svg"),
                       io::svg_plot("Channel " + ch + ": proposed vs LFM matched filter", series));
    }

    auto db = [](const std::optional<double>& v) { return v ? io::num(*v) + " dB" : std::string("n/a"); };
    std::cout << "compare: peak sidelobe proposed " << db(res.metrics.peak_sidelobe_db) << ", baseline "
              << db(cmp.baseline_metrics.peak_sidelobe_db) << "\nwrote " << dir.string() << "\n";
    return kExitOk;
}

int run_export(const RunOptions& opt) {
    const ScenarioConfig cfg = load_config(opt.config);
    const fs::path dir = output_dir(opt, cfg);
    const TransmitSystem sys = build_transmit_system(cfg);
    io::write_text(dir / "weights.csv", io::weights_csv(sys.weights));
    io::write_text(dir / "pulses.csv", io::pulses_csv(sys.pulses));
    std::cout << "export-waveforms: N=" << cfg.n << " L=" << sys.cp_len << " M_T=" << cfg.m_t << "\nwrote "
              << dir.string() << "\n";
    return kExitOk;
}

int run_selftest_cmd(const RunOptions& opt) {
    SelftestOptions so;
    so.inject_shift_sign_error = opt.inject_shift_sign_error;
    const auto results = run_selftest(so);
    std::cout << format_selftest(results);
    bool ok = true;
    for (const auto& r : results) {
        if (!r.passed) {
            if (ok) std::cerr << "failed properties:\n";
            std::cerr << "  " << r.name << "\n";
            ok = false;
        }
    }
    return ok ? kExitOk : kExitFailure;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const io::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ConstraintViolation& e) {
        std::cerr << "constraint violation: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IRCI-free MIMO-OFDM SAR range reconstruction simulator"};
    app.require_subcommand(1);
    RunOptions opt;

    auto add_common = [&](CLI::App* sub, bool with_noise) {
        sub->add_option("--config", opt.config, "Scenario JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "Output directory (overrides config output_dir)");
        if (with_noise) sub->add_flag("--noiseless", opt.noiseless, "Ignore snr_db and simulate without noise");
    };

    auto* simulate = app.add_subcommand("simulate", "Simulate echoes and reconstruct range profiles");
    add_common(simulate, true);
    simulate->add_flag("--verbose", opt.verbose, "Also write Z, Y and full channel responses");
    simulate->add_option("--trials", opt.trials, "Monte Carlo zero-scene runs for the noise floor (>= 100, 0 to skip)");

    auto* compare = app.add_subcommand("compare", "Compare against an LFM matched-filter baseline");
    add_common(compare, true);

    auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");
    selftest->add_flag("--inject-shift-sign-error", opt.inject_shift_sign_error,
                       "Mutation check: evaluate the shift identity with a conjugated phase constant");

    auto* export_cmd = app.add_subcommand("export-waveforms", "Write weight sets and pulses as CSV");
    add_common(export_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitIo;
    }

    if (simulate->parsed()) return guarded([&] { return run_simulate(opt); });
    if (compare->parsed()) return guarded([&] { return run_compare(opt); });
    if (export_cmd->parsed()) return guarded([&] { return run_export(opt); });
    return guarded([&] { return run_selftest_cmd(opt); });
}
