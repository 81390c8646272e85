// SPDX-License-Identifier: Apache-2.0
#include "iosjam/config.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace iosjam {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_doubles(const std::string& value, std::size_t expected, int line,
                                  const std::string& key) {
    std::istringstream in(value);
    std::vector<double> out;
    double v = 0.0;
    while (in >> v) out.push_back(v);
    if (!in.eof()) throw ConfigError("malformed number in '" + key + "'", line);
    if (out.empty()) throw ConfigError("'" + key + "' needs at least one number", line);
    if (expected != 0 && out.size() != expected)
        throw ConfigError("'" + key + "' expects " + std::to_string(expected) + " values", line);
    return out;
}

double parse_double(const std::string& value, int line, const std::string& key) {
    return parse_doubles(value, 1, line, key)[0];
}

std::size_t parse_count(const std::string& value, int line, const std::string& key,
                        std::size_t min_value = 1) {
    std::istringstream in(value);
    long long v = 0;
    std::string rest;
    if (!(in >> v) || (in >> rest)) throw ConfigError("malformed integer in '" + key + "'", line);
    if (v < static_cast<long long>(min_value))
        throw ConfigError("'" + key + "' must be >= " + std::to_string(min_value), line);
    return static_cast<std::size_t>(v);
}

std::vector<std::size_t> parse_counts(const std::string& value, int line, const std::string& key) {
    std::istringstream in(value);
    std::vector<std::size_t> out;
    long long v = 0;
    while (in >> v) {
        if (v < 1) throw ConfigError("'" + key + "' entries must be >= 1", line);
        out.push_back(static_cast<std::size_t>(v));
    }
    if (!in.eof()) throw ConfigError("malformed integer in '" + key + "'", line);
    if (out.empty()) throw ConfigError("'" + key + "' needs at least one entry", line);
    return out;
}

bool parse_bool(const std::string& value, int line, const std::string& key) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError("'" + key + "' must be true or false", line);
}

arma::vec3 parse_point(const std::string& value, int line, const std::string& key) {
    const auto v = parse_doubles(value, 3, line, key);
    return arma::vec3{v[0], v[1], v[2]};
}

PathLossLaw parse_law(const std::string& value, int line, const std::string& key) {
    const auto v = parse_doubles(value, 2, line, key);
    return PathLossLaw{v[0], v[1]};
}

}  // namespace

EngineConfig SimConfig::engine_config(double per_lu_dbm) const {
    EngineConfig ec;
    ec.n_blocks = n_blocks;
    ec.slots_per_block = slots_per_block;
    ec.batches = batches;
    ec.threads = threads;
    ec.seed = seed;
    ec.total_power_w = total_power_w(per_lu_dbm);
    ec.noise_w = noise_w();
    ec.rician = rician;
    ec.laws = laws;
    ec.condition_cap = condition_cap;
    ec.max_resamples = max_resamples;
    return ec;
}

SimConfig default_config() {
    SimConfig cfg;
    cfg.surface_levels = default_variable_model().levels;
    return cfg;
}

SimConfig parse_config(const std::string& text) {
    SimConfig cfg = default_config();
    std::optional<std::size_t> k_total, k_refr, k_refl;
    bool saw_levels = false;
    int surface_line = 0;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;

        const auto eq = stripped.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key before '='", line);
        if (value.empty()) throw ConfigError("missing value for '" + key + "'", line);

        if (key == "ap_position") {
            cfg.scene.ap_position = parse_point(value, line, key);
        } else if (key == "surface_position") {
            cfg.scene.surface_position = parse_point(value, line, key);
        } else if (key == "lu_disc_center") {
            cfg.scene.lu_disc_center = parse_point(value, line, key);
        } else if (key == "lu_disc_radius") {
            cfg.scene.lu_disc_radius = parse_double(value, line, key);
            if (cfg.scene.lu_disc_radius < 0.0)
                throw ConfigError("'lu_disc_radius' must be >= 0", line);
        } else if (key == "n_antennas") {
            cfg.scene.n_antennas = parse_count(value, line, key);
        } else if (key == "n_elements") {
            cfg.scene.n_elements = parse_count(value, line, key);
        } else if (key == "k_total") {
            k_total = parse_count(value, line, key);
        } else if (key == "k_refractive") {
            k_refr = parse_count(value, line, key, 0);
        } else if (key == "k_reflective") {
            k_refl = parse_count(value, line, key, 0);
        } else if (key == "carrier_hz") {
            cfg.scene.carrier_hz = parse_double(value, line, key);
            if (!(cfg.scene.carrier_hz > 0.0)) throw ConfigError("'carrier_hz' must be > 0", line);
        } else if (key == "pathloss_ap_surface") {
            cfg.laws.ap_surface = parse_law(value, line, key);
        } else if (key == "pathloss_ap_lu") {
            cfg.laws.ap_lu = parse_law(value, line, key);
        } else if (key == "pathloss_surface_lu") {
            cfg.laws.surface_lu = parse_law(value, line, key);
        } else if (key == "rician_factor") {
            cfg.rician.factor = parse_double(value, line, key);
            if (cfg.rician.factor < 0.0) throw ConfigError("'rician_factor' must be >= 0", line);
        } else if (key == "pure_los") {
            cfg.rician.pure_los = parse_bool(value, line, key);
        } else if (key == "bandwidth_hz") {
            cfg.bandwidth_hz = parse_double(value, line, key);
            if (!(cfg.bandwidth_hz > 0.0)) throw ConfigError("'bandwidth_hz' must be > 0", line);
        } else if (key == "noise_psd_dbm_hz") {
            cfg.noise_psd_dbm_hz = parse_double(value, line, key);
        } else if (key == "surface_kind") {
            if (surface_line == 0) surface_line = line;
            if (value == "constant")
                cfg.surface_kind = AmplitudeKind::Constant;
            else if (value == "variable")
                cfg.surface_kind = AmplitudeKind::Variable;
            else
                throw ConfigError("'surface_kind' must be constant or variable", line);
        } else if (key == "surface_level") {
            if (surface_line == 0) surface_line = line;
            if (!saw_levels) {
                cfg.surface_levels.clear();
                saw_levels = true;
            }
            const auto v = parse_doubles(value, 5, line, key);
            cfg.surface_levels.push_back({v[0], v[1], v[2], v[3], v[4]});
        } else if (key == "power_dbm_grid") {
            cfg.power_dbm_grid = parse_doubles(value, 0, line, key);
        } else if (key == "power_dbm") {
            cfg.power_dbm = parse_double(value, line, key);
        } else if (key == "aj_power_dbm") {
            cfg.aj_power_dbm = parse_double(value, line, key);
        } else if (key == "n_blocks") {
            cfg.n_blocks = parse_count(value, line, key);
        } else if (key == "slots_per_block") {
            cfg.slots_per_block = parse_count(value, line, key);
        } else if (key == "batches") {
            cfg.batches = parse_count(value, line, key);
        } else if (key == "threads") {
            cfg.threads = static_cast<unsigned>(parse_count(value, line, key));
        } else if (key == "seed") {
            std::istringstream seed_in(value);
            std::uint64_t s = 0;
            std::string rest;
            if (!(seed_in >> s) || (seed_in >> rest))
                throw ConfigError("malformed integer in 'seed'", line);
            cfg.seed = s;
        } else if (key == "condition_cap") {
            cfg.condition_cap = parse_double(value, line, key);
            if (!(cfg.condition_cap >= 1.0)) throw ConfigError("'condition_cap' must be >= 1", line);
        } else if (key == "max_resamples") {
            cfg.max_resamples = parse_count(value, line, key, 0);
        } else if (key == "va_bound_printed_form") {
            cfg.va_bound_printed_form = parse_bool(value, line, key);
        } else if (key == "elements_grid") {
            cfg.elements_grid = parse_counts(value, line, key);
        } else if (key == "antennas_grid") {
            cfg.antennas_grid = parse_counts(value, line, key);
        } else if (key == "users_grid") {
            cfg.users_grid = parse_counts(value, line, key);
        } else if (key == "elements_per_antenna") {
            cfg.elements_per_antenna = parse_count(value, line, key);
        } else if (key == "out_path") {
            cfg.out_path = value;
        } else {
            throw ConfigError("unknown key '" + key + "'", line);
        }
    }

    if (k_refr || k_refl) {
        cfg.scene.k_refractive = k_refr.value_or(cfg.scene.k_refractive);
        cfg.scene.k_reflective = k_refl.value_or(cfg.scene.k_reflective);
        if (k_total && *k_total != cfg.scene.k_refractive + cfg.scene.k_reflective)
            throw ConfigError("k_total does not equal k_refractive + k_reflective", 0);
    } else if (k_total) {
        cfg.scene.k_refractive = *k_total / 2;
        cfg.scene.k_reflective = *k_total - cfg.scene.k_refractive;
    }

    const std::size_t k = cfg.scene.k_refractive + cfg.scene.k_reflective;
    if (k == 0) throw ConfigError("at least one LU required", 0);
    if (cfg.scene.n_antennas <= k)
        throw ConfigError("n_antennas must exceed the total user count", 0);
    try {
        (void)cfg.surface_model();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), surface_line);
    }
    return cfg;
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace iosjam
