// SPDX-License-Identifier: Apache-2.0
#include "iosjam/scene.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace iosjam {

double distance(const arma::vec3& a, const arma::vec3& b) {
    return arma::norm(a - b, 2);
}

double path_gain_linear(const PathLossLaw& law, double dist_m) {
    if (!(dist_m > 0.0)) throw std::domain_error("path_gain_linear: distance must be > 0");
    const double loss_db = law.intercept_db + law.slope_db_per_decade * std::log10(dist_m);
    return std::pow(10.0, -loss_db / 10.0);
}

Scene build_scene(const SceneParams& p, RngStream& rng) {
    const std::size_t k = p.k_refractive + p.k_reflective;
    if (k == 0) throw std::invalid_argument("build_scene: at least one LU required");
    if (p.n_antennas == 0) throw std::invalid_argument("build_scene: n_antennas must be >= 1");
    if (p.n_elements == 0) throw std::invalid_argument("build_scene: n_elements must be >= 1");
    if (!(p.carrier_hz > 0.0)) throw std::invalid_argument("build_scene: carrier_hz must be > 0");
    if (p.lu_disc_radius < 0.0) throw std::invalid_argument("build_scene: negative disc radius");
    if (p.lu_disc_radius == 0.0 && k > 1)
        throw std::invalid_argument("build_scene: zero-radius disc with more than one LU");

    Scene s;
    s.wavelength = 299792458.0 / p.carrier_hz;
    s.ap_origin = p.ap_position;
    s.surface_origin = p.surface_position;
    s.k_refractive = p.k_refractive;
    s.k_reflective = p.k_reflective;
    const double half = s.wavelength / 2.0;

    s.ap_positions.set_size(p.n_antennas, 3);
    for (std::size_t n = 0; n < p.n_antennas; ++n) {
        const double off = (static_cast<double>(n) - (p.n_antennas - 1) / 2.0) * half;
        s.ap_positions(n, 0) = p.ap_position(0) + off;
        s.ap_positions(n, 1) = p.ap_position(1);
        s.ap_positions(n, 2) = p.ap_position(2);
    }

    const auto rows = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(p.n_elements))));
    const std::size_t cols = (p.n_elements + rows - 1) / rows;
    s.surface_positions.set_size(p.n_elements, 3);
    for (std::size_t i = 0; i < p.n_elements; ++i) {
        const std::size_t r = i % rows;
        const std::size_t c = i / rows;
        s.surface_positions(i, 0) =
            p.surface_position(0) + (static_cast<double>(c) - (cols - 1) / 2.0) * half;
        s.surface_positions(i, 1) = p.surface_position(1);
        s.surface_positions(i, 2) =
            p.surface_position(2) + (static_cast<double>(r) - (rows - 1) / 2.0) * half;
    }

    s.lu_positions.set_size(k, 3);
    for (std::size_t u = 0; u < k; ++u) {
        const double r = p.lu_disc_radius * std::sqrt(rng.uniform());
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        s.lu_positions(u, 0) = p.lu_disc_center(0) + r * std::cos(phi);
        s.lu_positions(u, 1) = p.lu_disc_center(1) + r * std::sin(phi);
        s.lu_positions(u, 2) = p.lu_disc_center(2);
    }

    s.sides.assign(k, LuSide::Reflective);
    for (std::size_t u = 0; u < p.k_refractive; ++u) s.sides[u] = LuSide::Refractive;
    return s;
}

}  // namespace iosjam
