// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <cstddef>
#include <vector>

#include "iosjam/rng.hpp"

namespace iosjam {

// Log-distance path loss: loss_db(d) = intercept_db + slope_db_per_decade * log10(d).
struct PathLossLaw {
    double intercept_db = 0.0;
    double slope_db_per_decade = 0.0;
};

enum class LuSide { Refractive, Reflective };

// Fixed geometry for one experiment.
//   AP: half-wavelength ULA along x, centered at ap_origin.
//   Surface: half-wavelength planar array in the x-z plane (broadside toward the
//   +y LU region), rows = floor(sqrt(N_D)), columns = ceil(N_D/rows), column-major
//   fill of the first N_D slots, centered on the full grid at surface_origin.
//   LUs: drawn uniformly in a horizontal disc; the first k_refractive are tagged
//   refractive, the rest reflective.
struct Scene {
    arma::mat ap_positions;       // N_A x 3
    arma::mat surface_positions;  // N_D x 3
    arma::mat lu_positions;       // K x 3
    arma::vec3 ap_origin;
    arma::vec3 surface_origin;
    std::vector<LuSide> sides;    // K entries
    double wavelength = 0.0;      // m
    std::size_t k_refractive = 0;
    std::size_t k_reflective = 0;

    std::size_t n_antennas() const { return ap_positions.n_rows; }
    std::size_t n_elements() const { return surface_positions.n_rows; }
    std::size_t k_total() const { return lu_positions.n_rows; }
};

struct SceneParams {
    arma::vec3 ap_position{0.0, 0.0, 10.0};
    arma::vec3 surface_position{2.0, 2.0, 8.0};
    arma::vec3 lu_disc_center{0.0, 180.0, 0.0};
    double lu_disc_radius = 20.0;
    std::size_t n_antennas = 128;
    std::size_t n_elements = 2048;
    std::size_t k_refractive = 12;
    std::size_t k_reflective = 12;
    double carrier_hz = 3.5e9;
};

double distance(const arma::vec3& a, const arma::vec3& b);

// 10^(-(intercept + slope * log10(d)) / 10); requires d > 0.
double path_gain_linear(const PathLossLaw& law, double dist_m);

// Deterministic given (params, stream); LU positions are the only random part,
// drawn in ascending LU index so prefixes agree across different user counts.
Scene build_scene(const SceneParams& params, RngStream& rng);

}  // namespace iosjam
