#pragma once

/**
 * @file scenario.hpp
 * @brief Scenario configuration: JSON loading, validation and scene generation.
 *
 * Config fields follow the usual symbols: `n` (subcarriers), `mu` (ZC root),
 * `m_t` (transmitters), `partition` (subswath lengths), `snr_db` (number,
 * or "noiseless"/null), `seed`. Scatterers are either explicit per channel
 * as [global_cell, re, im] triples or drawn at random from the seed.
 *
 *   {
 *     "n": 1024, "mu": 1, "m_t": 2, "partition": [200],
 *     "snr_db": 0, "seed": 7,
 *     "scatterers": { "random": { "per_channel": 8 } },
 *     "baseline": { "enabled": true, "bandwidth": 0.5 },
 *     "output_dir": "out"
 *   }
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "irci/baselines.hpp"
#include "irci/errors.hpp"
#include "irci/ofdm_waveform.hpp"
#include "irci/scene_channel.hpp"
#include "irci/zc_sequences.hpp"

namespace irci {

/// Malformed or unreadable config file.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed config whose values violate a constraint; names the field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& reason)
        : std::invalid_argument(field + ": " + reason), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct Scatterer {
    std::size_t cell = 0;  // global range cell
    Complex value;
};

struct RandomScatterers {
    std::size_t per_channel = 8;
    double amplitude_min = 0.2;
    double amplitude_max = 1.0;
};

struct BaselineOptions {
    bool enabled = false;
    double bandwidth = kDefaultChirpBandwidth;
};

struct ScenarioConfig {
    std::size_t n = 1024;
    std::size_t mu = 1;
    std::size_t m_t = 2;
    std::vector<std::size_t> partition{200};
    std::vector<std::vector<Scatterer>> scatterers;  // explicit, one list per channel
    std::optional<RandomScatterers> random_scatterers;
    std::optional<double> snr_db;  // empty: noiseless
    std::uint64_t seed = 0;
    BaselineOptions baseline;
    std::string output_dir = "out";

    std::size_t total_cells() const {
        return std::accumulate(partition.begin(), partition.end(), std::size_t{0});
    }

    void validate() const {
        if (n < 2) throw ConfigError("n", "must be at least 2");
        if (m_t < 1) throw ConfigError("m_t", "must be at least 1");
        try {
            ZcParams{n, mu}.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError("mu", e.what());
        }
        if (m_t >= 2 && n % 2 != 0) throw ConfigError("n", "must be even for more than one transmitter");
        if (n % m_t != 0) throw ConfigError("m_t", "must divide n");
        if (partition.empty()) throw ConfigError("partition", "needs at least one subswath");
        for (std::size_t l : partition)
            if (l < 1) throw ConfigError("partition", "subswath lengths must be positive");
        try {
            required_cp_len(partition, n, m_t);
        } catch (const ConstraintViolation& e) {
            throw ConstraintViolation(std::string("partition: ") + e.what(), e.value(), e.limit());
        }
        const std::size_t cells = total_cells();
        if (!scatterers.empty()) {
            if (scatterers.size() != m_t)
                throw ConfigError("scatterers", "expected one list per transmitter (" + std::to_string(m_t) + ")");
            for (const auto& list : scatterers) {
                for (const auto& s : list) {
                    if (s.cell >= cells) {
                        throw ConfigError("scatterers", "cell " + std::to_string(s.cell) +
                                                            " outside swath of " + std::to_string(cells) +
                                                            " cells");
                    }
                }
            }
        }
        if (random_scatterers) {
            const auto& r = *random_scatterers;
            if (r.per_channel > cells)
                throw ConfigError("scatterers.random.per_channel", "exceeds number of swath cells");
            if (!(r.amplitude_min >= 0.0 && r.amplitude_min <= r.amplitude_max))
                throw ConfigError("scatterers.random", "need 0 <= amplitude_min <= amplitude_max");
        }
        if (!(baseline.bandwidth > 0.0 && baseline.bandwidth <= 1.0))
            throw ConfigError("baseline.bandwidth", "must lie in (0, 1]");
    }

    std::string scatterer_model() const {
        if (!random_scatterers) return "explicit";
        std::ostringstream os;
        os << "random: " << random_scatterers->per_channel
           << " distinct cells per channel drawn without replacement from the swath, independently per channel; "
           << "amplitude uniform in [" << random_scatterers->amplitude_min << ", "
           << random_scatterers->amplitude_max << "], phase uniform in [0, 2pi); seeded from config seed";
        return os.str();
    }
};

namespace detail {

template <typename T>
T get_optional(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

inline std::size_t get_count(const nlohmann::json& j, const char* key, std::optional<std::size_t> fallback) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ParseError(std::string("missing required field '") + key + "'");
    }
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
    if (v.get<std::int64_t>() < 0) throw ConfigError(key, "must be non-negative");
    return v.get<std::size_t>();
}

}  // namespace detail

inline ScenarioConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("config root must be a JSON object");
    ScenarioConfig cfg;
    cfg.n = detail::get_count(j, "n", std::nullopt);
    cfg.mu = detail::get_count(j, "mu", std::size_t{1});
    cfg.m_t = detail::get_count(j, "m_t", std::size_t{2});

    if (!j.contains("partition") || !j.at("partition").is_array())
        throw ParseError("field 'partition' must be an array of subswath lengths");
    cfg.partition.clear();
    for (const auto& v : j.at("partition")) {
        if (!v.is_number_integer()) throw ParseError("field 'partition' must hold integers");
        if (v.get<std::int64_t>() < 1) throw ConfigError("partition", "subswath lengths must be positive");
        cfg.partition.push_back(v.get<std::size_t>());
    }

    if (j.contains("snr_db")) {
        const auto& s = j.at("snr_db");
        if (s.is_null() || (s.is_string() && s.get<std::string>() == "noiseless"))
            cfg.snr_db.reset();
        else if (s.is_number())
            cfg.snr_db = s.get<double>();
        else
            throw ParseError("field 'snr_db' must be a number, null or \"noiseless\"");
    }

    if (j.contains("seed")) {
        const auto& s = j.at("seed");
        if (!s.is_number_integer()) throw ParseError("field 'seed' must be an integer");
        cfg.seed = s.is_number_unsigned() ? s.get<std::uint64_t>()
                                          : static_cast<std::uint64_t>(s.get<std::int64_t>());
    }

    if (j.contains("scatterers")) {
        const auto& sc = j.at("scatterers");
        if (!sc.is_object()) throw ParseError("field 'scatterers' must be an object");
        if (sc.contains("random")) {
            const auto& r = sc.at("random");
            RandomScatterers rs;
            rs.per_channel = detail::get_count(r, "per_channel", std::size_t{8});
            rs.amplitude_min = detail::get_optional<double>(r, "amplitude_min", rs.amplitude_min);
            rs.amplitude_max = detail::get_optional<double>(r, "amplitude_max", rs.amplitude_max);
            cfg.random_scatterers = rs;
        }
        if (sc.contains("channels")) {
            if (cfg.random_scatterers) throw ConfigError("scatterers", "give either 'random' or 'channels', not both");
            const auto& ch = sc.at("channels");
            if (!ch.is_array()) throw ParseError("field 'scatterers.channels' must be an array");
            for (const auto& list : ch) {
                if (!list.is_array()) throw ParseError("each scatterer channel must be an array of triples");
                std::vector<Scatterer> row;
                for (const auto& t : list) {
                    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number() ||
                        !t[2].is_number())
                        throw ParseError("scatterers must be [global_cell, re, im] triples");
                    if (t[0].get<std::int64_t>() < 0) throw ConfigError("scatterers", "negative cell index");
                    row.push_back({t[0].get<std::size_t>(), Complex{t[1].get<double>(), t[2].get<double>()}});
                }
                cfg.scatterers.push_back(std::move(row));
            }
        }
    }

    if (j.contains("baseline")) {
        const auto& b = j.at("baseline");
        if (b.is_boolean()) {
            cfg.baseline.enabled = b.get<bool>();
        } else if (b.is_object()) {
            cfg.baseline.enabled = detail::get_optional<bool>(b, "enabled", true);
            cfg.baseline.bandwidth = detail::get_optional<double>(b, "bandwidth", cfg.baseline.bandwidth);
        } else {
            throw ParseError("field 'baseline' must be a boolean or an object");
        }
    }
    cfg.output_dir = detail::get_optional<std::string>(j, "output_dir", cfg.output_dir);

    cfg.validate();
    return cfg;
}

inline ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path.string() + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("'" + path.string() + "': " + e.what());
    }
    return parse_config(j);
}

/// Seed streams derived from the config seed.
namespace streams {
inline constexpr std::uint64_t kScene = 0x5CE7E;
inline constexpr std::uint64_t kBaselineNoise = 0xBA5E;
inline constexpr std::uint64_t kTrialBase = 1ULL << 32;
inline std::uint64_t subswath_noise(std::uint64_t seed, std::size_t p) { return derive_seed(seed, p); }
inline std::uint64_t trial(std::uint64_t seed, std::size_t t) { return derive_seed(seed, kTrialBase + t); }
}  // namespace streams

/// Random scene: `per_channel` distinct cells per channel, amplitude uniform
/// in [amin, amax], phase uniform in [0, 2 pi).
inline SwathScene random_scene(std::size_t m_t, const std::vector<std::size_t>& partition,
                               const RandomScatterers& spec, std::uint64_t seed) {
    SwathScene scene = SwathScene::zeros(m_t, partition);
    const std::size_t cells = scene.total_cells();
    if (spec.per_channel > cells) throw std::invalid_argument("random_scene: more scatterers than cells");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(spec.amplitude_min, spec.amplitude_max);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    std::vector<std::size_t> pool(cells);
    for (auto& row : scene.rcs) {
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        // partial Fisher-Yates: first per_channel entries are the draw
        for (std::size_t i = 0; i < spec.per_channel; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, cells - 1);
            std::swap(pool[i], pool[pick(rng)]);
            const double a = amp(rng);
            const double ph = phase(rng);
            row[pool[i]] = std::polar(a, ph);
        }
    }
    return scene;
}

inline SwathScene build_scene(const ScenarioConfig& cfg) {
    if (cfg.random_scatterers)
        return random_scene(cfg.m_t, cfg.partition, *cfg.random_scatterers, derive_seed(cfg.seed, streams::kScene));
    SwathScene scene = SwathScene::zeros(cfg.m_t, cfg.partition);
    for (std::size_t m = 0; m < cfg.scatterers.size(); ++m)
        for (const auto& s : cfg.scatterers[m]) scene.rcs[m][s.cell] += s.value;
    return scene;
}

}  // namespace irci
