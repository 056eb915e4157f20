#pragma once

// CSV / JSON / SVG artifact writers. All numbers are printed with %.17g so
// identical inputs give byte-identical files.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "irci/metrics.hpp"
#include "irci/ofdm_waveform.hpp"
#include "irci/pipeline.hpp"
#include "irci/reconstruction.hpp"
#include "irci/scenario.hpp"
#include "irci/zc_sequences.hpp"

namespace irci::io {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_output(path);
    out << text;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

/// k,channel,re,im
inline std::string weights_csv(const std::vector<WeightSequence>& weights) {
    std::ostringstream os;
    os << "k,channel,re,im\n";
    for (const auto& w : weights)
        for (std::size_t k = 0; k < w.size(); ++k)
            os << k << ',' << w.channel_index << ',' << num(w[k].real()) << ',' << num(w[k].imag()) << '\n';
    return os.str();
}

/// n,channel,re,im
inline std::string pulses_csv(const std::vector<OfdmPulse>& pulses) {
    std::ostringstream os;
    os << "n,channel,re,im\n";
    for (const auto& u : pulses)
        for (std::size_t i = 0; i < u.size(); ++i)
            os << i << ',' << u.channel_index << ',' << num(u.samples[i].real()) << ','
               << num(u.samples[i].imag()) << '\n';
    return os.str();
}

/// cell,channel,truth_re,truth_im,rec_re,rec_im,rec_mag; one row per (cell, channel).
inline std::string profiles_csv(const SwathScene& truth, const std::vector<RangeProfile>& profiles) {
    std::ostringstream os;
    os << "cell,channel,truth_re,truth_im,rec_re,rec_im,rec_mag\n";
    const std::size_t cells = truth.total_cells();
    for (std::size_t c = 0; c < cells; ++c) {
        for (std::size_t m = 0; m < profiles.size(); ++m) {
            const Complex t = truth.rcs[m][c];
            const Complex r = profiles[m].values[c];
            os << c << ',' << m + 1 << ',' << num(t.real()) << ',' << num(t.imag()) << ',' << num(r.real()) << ','
               << num(r.imag()) << ',' << num(std::abs(r)) << '\n';
        }
    }
    return os.str();
}

/// cell,channel,truth,proposed,baseline (magnitudes)
inline std::string comparison_csv(const ComparisonResult& cmp) {
    std::ostringstream os;
    os << "cell,channel,truth,proposed,baseline\n";
    const auto& truth = cmp.proposed.truth;
    const auto& prof = cmp.proposed.report.profiles;
    for (std::size_t c = 0; c < truth.total_cells(); ++c) {
        for (std::size_t m = 0; m < prof.size(); ++m) {
            os << c << ',' << m + 1 << ',' << num(std::abs(truth.rcs[m][c])) << ','
               << num(std::abs(prof[m].values[c])) << ',' << num(cmp.baseline[m][c]) << '\n';
        }
    }
    return os.str();
}

/// p,channel,k,Z_re,Z_im,Y_re,Y_im,h_re,h_im over the full N points of every subswath.
inline std::string intermediates_csv(const std::vector<SubswathIntermediates>& inter) {
    std::ostringstream os;
    os << "p,channel,k,Z_re,Z_im,Y_re,Y_im,h_re,h_im\n";
    for (const auto& sub : inter) {
        for (std::size_t m = 0; m < sub.filtered.size(); ++m) {
            for (std::size_t k = 0; k < sub.spectrum.size(); ++k) {
                const auto z = sub.spectrum[k], y = sub.filtered[m][k], h = sub.responses[m][k];
                os << sub.subswath_index << ',' << m + 1 << ',' << k << ',' << num(z.real()) << ','
                   << num(z.imag()) << ',' << num(y.real()) << ',' << num(y.imag()) << ',' << num(h.real())
                   << ',' << num(h.imag()) << '\n';
            }
        }
    }
    return os.str();
}

inline nlohmann::ordered_json to_json(const MetricReport& rep) {
    auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
        return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    nlohmann::ordered_json j;
    j["max_abs_error"] = rep.max_abs_error;
    j["mse"] = rep.mse;
    j["peak_sidelobe_db"] = opt(rep.peak_sidelobe_db);
    j["leakage_db"] = opt(rep.leakage_db);
    j["noise_floor_estimate"] = opt(rep.noise_floor_estimate);
    auto channels = nlohmann::ordered_json::array();
    for (const auto& c : rep.channels) {
        nlohmann::ordered_json cj;
        cj["channel"] = c.channel;
        cj["max_abs_error"] = c.error.max_abs_error;
        cj["mse"] = c.error.mse;
        cj["peak_sidelobe_db"] = opt(c.peak_sidelobe_db);
        cj["leakage_db"] = opt(c.leakage_db);
        cj["peak_amplitude_error"] = opt(c.peak_amplitude_error);
        cj["papr_db"] = opt(c.papr_db);
        channels.push_back(cj);
    }
    j["channels"] = channels;
    return j;
}

inline nlohmann::ordered_json scenario_json(const ScenarioConfig& cfg, std::optional<double> snr_db, double sigma) {
    nlohmann::ordered_json j;
    j["n"] = cfg.n;
    j["mu"] = cfg.mu;
    j["m_t"] = cfg.m_t;
    j["partition"] = cfg.partition;
    j["cp_len"] = *std::max_element(cfg.partition.begin(), cfg.partition.end());
    j["snr_db"] = snr_db ? nlohmann::ordered_json(*snr_db) : nlohmann::ordered_json("noiseless");
    j["noise_sigma"] = sigma;
    j["seed"] = cfg.seed;
    j["scatterer_model"] = cfg.scatterer_model();
    return j;
}

struct PlotSeries {
    std::string label;
    std::vector<double> values;
    std::string color;
    char marker = 'o';  // 'o' circle, '+' plus, 'x' cross, '*' star
};

/// Minimal standalone SVG amplitude-vs-cell plot with markers.
inline std::string svg_plot(const std::string& title, const std::vector<PlotSeries>& series) {
    constexpr double width = 900, height = 360, left = 60, right = 20, top = 40, bottom = 40;
    std::size_t cells = 0;
    double ymax = 0.0;
    for (const auto& s : series) {
        cells = std::max(cells, s.values.size());
        for (double v : s.values) ymax = std::max(ymax, v);
    }
    if (ymax <= 0.0) ymax = 1.0;
    ymax *= 1.1;
    const double pw = width - left - right, ph = height - top - bottom;
    auto xpos = [&](std::size_t i) { return left + (cells > 1 ? pw * double(i) / double(cells - 1) : pw / 2); };
    auto ypos = [&](double v) { return top + ph * (1.0 - v / ymax); };
    auto f = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = ymax * t / 4.0;
        os << "<text x=\"" << left - 6 << "\" y=\"" << f(ypos(v) + 4) << "\" text-anchor=\"end\">" << f(v)
           << "</text>\n";
    }
    if (cells > 0) {
        for (int t = 0; t <= 4; ++t) {
            const std::size_t i = (cells - 1) * static_cast<std::size_t>(t) / 4;
            os << "<text x=\"" << f(xpos(i)) << "\" y=\"" << height - bottom + 16 << "\" text-anchor=\"middle\">"
               << i << "</text>\n";
        }
    }
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - 6 << "\" text-anchor=\"middle\">range cell</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        os << "<g stroke=\"" << s.color << "\" fill=\"none\" stroke-width=\"1\">\n";
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            if (s.values[i] <= ymax * 1e-3 && s.marker == 'o') continue;
            const double x = xpos(i), y = ypos(s.values[i]);
            switch (s.marker) {
                case 'o':
                    os << "<circle cx=\"" << f(x) << "\" cy=\"" << f(y) << "\" r=\"3\"/>\n";
                    break;
                case 'x':
                    os << "<path d=\"M" << f(x - 3) << ' ' << f(y - 3) << "L" << f(x + 3) << ' ' << f(y + 3) << "M"
                       << f(x - 3) << ' ' << f(y + 3) << "L" << f(x + 3) << ' ' << f(y - 3) << "\"/>\n";
                    break;
                case '*':
                    os << "<path d=\"M" << f(x - 3) << ' ' << f(y) << "L" << f(x + 3) << ' ' << f(y) << "M" << f(x)
                       << ' ' << f(y - 3) << "L" << f(x) << ' ' << f(y + 3) << "M" << f(x - 2) << ' ' << f(y - 2)
                       << "L" << f(x + 2) << ' ' << f(y + 2) << "\"/>\n";
                    break;
                default:
                    os << "<path d=\"M" << f(x - 3) << ' ' << f(y) << "L" << f(x + 3) << ' ' << f(y) << "M" << f(x)
                       << ' ' << f(y - 3) << "L" << f(x) << ' ' << f(y + 3) << "\"/>\n";
            }
        }
        os << "</g>\n";
        const double ly = top + 14 + 16 * static_cast<double>(si);
        os << "<text x=\"" << width - right - 8 << "\" y=\"" << ly << "\" text-anchor=\"end\" fill=\"" << s.color
           << "\">" << s.marker << ' ' << s.label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace irci::io
