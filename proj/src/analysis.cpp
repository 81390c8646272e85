// SPDX-License-Identifier: Apache-2.0
#include "iosjam/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace iosjam {

namespace {

void check_inputs(const BoundInputs& in) {
    const std::size_t k = in.k_refractive + in.k_reflective;
    if (k == 0) throw std::domain_error("bounds: no LUs");
    if (in.n_antennas <= k) throw std::domain_error("bounds: require n_antennas > K");
    if (in.gain_ap_lu.n_elem != k || in.gain_surface_lu.n_elem != k)
        throw std::invalid_argument("bounds: gain vectors must have K entries");
    if (!(in.total_power > 0.0)) throw std::domain_error("bounds: total_power must be > 0");
    if (in.noise_w < 0.0) throw std::domain_error("bounds: negative noise");
    if (!(in.gain_ap_surface > 0.0) || in.gain_ap_lu.min() <= 0.0 || in.gain_surface_lu.min() <= 0.0)
        throw std::domain_error("bounds: gains must be > 0");
    if (in.mu < 0.0 || in.mu > 1.0) throw std::domain_error("bounds: mu outside [0, 1]");
}

double rate_bits(double num, double den) {
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return std::log2(1.0 + num / den);
}

// Shared evaluation: per-LU bound with side-dependent energy factor on the
// surface terms and side-dependent numerator scale (the printed variable-
// amplitude variant multiplies the reflective numerator surface term by N_A).
SideBounds evaluate(const BoundInputs& in, double desired_scale, double noise_scale,
                    double factor_t, double factor_r, double num_extra_r) {
    const std::size_t k = in.k_refractive + in.k_reflective;
    const double k_d = static_cast<double>(k);
    const double inv_gain_sum = arma::sum(1.0 / in.gain_ap_lu);
    const double surf_gain_sum = arma::sum(in.gain_surface_lu);
    const double desired = desired_scale * in.total_power * k_d *
                           static_cast<double>(in.n_antennas - k) / inv_gain_sum;
    const double nd = static_cast<double>(in.n_elements);

    SideBounds out;
    out.refractive_bits.set_size(in.k_refractive);
    out.reflective_bits.set_size(in.k_reflective);
    for (std::size_t u = 0; u < k; ++u) {
        const bool refr = u < in.k_refractive;
        const double factor = refr ? factor_t : factor_r;
        const double own = in.total_power * in.gain_ap_surface * in.gain_surface_lu(u) * nd * factor;
        const double cross = in.total_power * in.gain_ap_surface *
                             (surf_gain_sum - in.gain_surface_lu(u)) * nd * factor;
        const double num = desired + own * (refr ? 1.0 : num_extra_r);
        const double den = cross + noise_scale * k_d * in.noise_w;
        const double bits = rate_bits(num, den);
        if (refr) {
            out.refractive_bits(u) = bits;
            out.sum_refractive_bits += bits;
        } else {
            out.reflective_bits(u - in.k_refractive) = bits;
            out.sum_reflective_bits += bits;
        }
    }
    return out;
}

}  // namespace

double ca_entry_variance(double gain_ap_surface, double gain_surface_lu, std::size_t n_elements) {
    if (!(gain_ap_surface > 0.0) || !(gain_surface_lu > 0.0))
        throw std::domain_error("ca_entry_variance: gains must be > 0");
    return gain_ap_surface * gain_surface_lu * static_cast<double>(n_elements) / 2.0;
}

std::pair<double, double> va_entry_variances(double gain_ap_surface, double gain_surface_lu_t,
                                             double gain_surface_lu_r, std::size_t n_elements,
                                             double mu) {
    if (mu < 0.0 || mu > 1.0) throw std::domain_error("va_entry_variances: mu outside [0, 1]");
    const double base = gain_ap_surface * static_cast<double>(n_elements);
    return {base * gain_surface_lu_t * mu, base * gain_surface_lu_r * (1.0 - mu)};
}

double wishart_trace_expectation(std::size_t n_antennas, const arma::vec& gains) {
    if (n_antennas <= gains.n_elem)
        throw std::domain_error("wishart_trace_expectation: require n_antennas > K");
    if (gains.n_elem == 0 || gains.min() <= 0.0)
        throw std::domain_error("wishart_trace_expectation: gains must be nonempty and > 0");
    return arma::sum(1.0 / gains) / static_cast<double>(n_antennas - gains.n_elem);
}

SideBounds ca_sum_rate_bounds(const BoundInputs& in) {
    check_inputs(in);
    return evaluate(in, 2.0, 2.0, 1.0, 1.0, 1.0);
}

SideBounds va_sum_rate_bounds(const BoundInputs& in, bool printed_form) {
    check_inputs(in);
    const double extra = printed_form ? static_cast<double>(in.n_antennas) : 1.0;
    return evaluate(in, 1.0, 1.0, in.mu, 1.0 - in.mu, extra);
}

Moments empirical_moments(const arma::cx_vec& samples) {
    const std::size_t n = samples.n_elem;
    if (n < 2) throw std::invalid_argument("empirical_moments: need at least 2 samples");

    Moments m;
    m.n = n;
    m.mean = arma::mean(samples);
    double sq_central = 0.0, sq = 0.0, quad = 0.0;
    for (const auto& z : samples) {
        const double a = std::norm(z);
        sq += a;
        quad += a * a;
        sq_central += std::norm(z - m.mean);
    }
    m.variance = sq_central / static_cast<double>(n - 1);
    const double second = sq / static_cast<double>(n);
    m.fourth_ratio = quad / static_cast<double>(n) / (second * second);
    return m;
}

}  // namespace iosjam
