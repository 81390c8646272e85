// SPDX-License-Identifier: Apache-2.0
#include "iosjam/fading.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace iosjam {

LargeScale large_scale_gains(const Scene& scene, const PathLossLawSet& laws) {
    LargeScale ls;
    ls.ap_surface = path_gain_linear(laws.ap_surface, distance(scene.ap_origin, scene.surface_origin));
    const std::size_t k = scene.k_total();
    ls.ap_lu.set_size(k);
    ls.surface_lu.set_size(k);
    for (std::size_t u = 0; u < k; ++u) {
        const arma::vec3 lu = scene.lu_positions.row(u).t();
        ls.ap_lu(u) = path_gain_linear(laws.ap_lu, distance(scene.ap_origin, lu));
        ls.surface_lu(u) = path_gain_linear(laws.surface_lu, distance(scene.surface_origin, lu));
    }
    return ls;
}

arma::cx_mat los_phase_matrix(const Scene& scene) {
    const std::size_t n_a = scene.n_antennas();
    const std::size_t n_d = scene.n_elements();
    const double wavenumber = 2.0 * std::numbers::pi / scene.wavelength;
    arma::cx_mat los(n_a, n_d);
    for (std::size_t n = 0; n < n_a; ++n) {
        const arma::vec3 ant = scene.ap_positions.row(n).t();
        const double d_n = distance(ant, scene.surface_origin);
        for (std::size_t s = 0; s < n_d; ++s) {
            const arma::vec3 elem = scene.surface_positions.row(s).t();
            const double d_ns = distance(ant, elem);
            los(n, s) = std::polar(1.0, -wavenumber * (d_ns - d_n));
        }
    }
    return los;
}

arma::cx_mat sample_g(const Scene& scene, const arma::cx_mat& los, const RicianSpec& spec,
                      double gain, RngStream& rng) {
    if (!(gain > 0.0)) throw std::invalid_argument("sample_g: gain must be > 0");
    if (los.n_rows != scene.n_antennas() || los.n_cols != scene.n_elements())
        throw std::invalid_argument("sample_g: los matrix does not match scene");
    if (!spec.pure_los && !(spec.factor >= 0.0 && std::isfinite(spec.factor)))
        throw std::invalid_argument("sample_g: rician factor must be finite and >= 0");

    const double root_gain = std::sqrt(gain);
    if (spec.pure_los) return root_gain * los.t();

    arma::cx_mat nlos(scene.n_elements(), scene.n_antennas());
    rng.fill_cnormal(nlos);
    const double c_los = root_gain * std::sqrt(spec.factor / (1.0 + spec.factor));
    const double c_nlos = root_gain * std::sqrt(1.0 / (1.0 + spec.factor));
    return c_los * los.t() + c_nlos * nlos;
}

arma::cx_vec sample_far_field(std::size_t n, double gain, RngStream& rng) {
    if (!(gain > 0.0)) throw std::invalid_argument("sample_far_field: gain must be > 0");
    arma::cx_vec v(n);
    rng.fill_cnormal(v);
    return std::sqrt(gain) * v;
}

ChannelSet assemble_channels(const Scene& scene, const arma::cx_mat& los, const RicianSpec& spec,
                             const PathLossLawSet& laws, RngStream& rng) {
    ChannelSet cs;
    cs.gains = large_scale_gains(scene, laws);

    const std::size_t k = scene.k_total();
    cs.h_d.set_size(scene.n_antennas(), k);
    for (std::size_t u = 0; u < k; ++u)
        cs.h_d.col(u) = sample_far_field(scene.n_antennas(), cs.gains.ap_lu(u), rng);

    cs.h_i_t.set_size(scene.n_elements(), scene.k_refractive);
    for (std::size_t u = 0; u < scene.k_refractive; ++u)
        cs.h_i_t.col(u) = sample_far_field(scene.n_elements(), cs.gains.surface_lu(u), rng);

    cs.h_i_r.set_size(scene.n_elements(), scene.k_reflective);
    for (std::size_t u = 0; u < scene.k_reflective; ++u)
        cs.h_i_r.col(u) =
            sample_far_field(scene.n_elements(), cs.gains.surface_lu(scene.k_refractive + u), rng);

    cs.g = sample_g(scene, los, spec, cs.gains.ap_surface, rng);
    return cs;
}

}  // namespace iosjam
