// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "iosjam/engine.hpp"
#include "iosjam/fading.hpp"
#include "iosjam/scene.hpp"
#include "iosjam/surface.hpp"
#include "iosjam/units.hpp"

namespace iosjam {

// Parse or validation failure, anchored to a 1-based config line (0 = document
// level).
struct ConfigError : std::runtime_error {
    ConfigError(const std::string& msg, int line_no)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
    int line;
};

// Full experiment description. Construct via default_config() (the standard
// evaluation setup) or parse_config(); omitted keys keep those defaults.
struct SimConfig {
    SceneParams scene;
    PathLossLawSet laws;
    RicianSpec rician;
    AmplitudeKind surface_kind = AmplitudeKind::Variable;
    std::vector<SurfaceLevel> surface_levels;
    double bandwidth_hz = 180e3;
    double noise_psd_dbm_hz = -170.0;
    std::vector<double> power_dbm_grid{0.0, 5.0, 10.0, 15.0, 20.0};
    double power_dbm = 10.0;  // per-LU power used on non-power axes
    double aj_power_dbm = 5.0;
    std::size_t n_blocks = 500;
    std::size_t slots_per_block = 6;
    std::size_t batches = 10;
    unsigned threads = 1;
    std::uint64_t seed = 29;
    double condition_cap = 1e12;
    std::size_t max_resamples = 32;
    bool va_bound_printed_form = false;
    std::vector<std::size_t> elements_grid{256, 512, 1024, 2048, 4096};
    std::vector<std::size_t> antennas_grid{32, 64, 128, 256};
    std::vector<std::size_t> users_grid{8, 16, 24, 32};
    std::size_t elements_per_antenna = 16;
    std::string out_path = "sweep.csv";

    double noise_w() const {
        return dbm_to_watts(noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz));
    }
    SurfaceModel surface_model() const { return make_model(surface_kind, surface_levels); }
    double total_power_w(double per_lu_dbm) const {
        return static_cast<double>(scene.k_refractive + scene.k_reflective) *
               dbm_to_watts(per_lu_dbm);
    }
    EngineConfig engine_config(double per_lu_dbm) const;
};

SimConfig default_config();

// Line-oriented `key = value` text; '#' starts a comment; values are
// whitespace-separated tuples or lists. Unknown keys and invariant violations
// are rejected with the offending line number.
SimConfig parse_config(const std::string& text);

SimConfig load_config_file(const std::string& path);

}  // namespace iosjam
