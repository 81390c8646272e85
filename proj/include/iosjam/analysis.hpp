// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <complex>
#include <cstddef>
#include <utility>

namespace iosjam {

// Inputs of the closed-form rate bounds. LU order matches the scene: the first
// k_refractive entries of l_d / l_i are refractive-side users. l_i holds each
// LU's own-side surface-link gain.
struct BoundInputs {
    double total_power = 0.0;   // watts, summed over LUs
    std::size_t n_antennas = 0;
    std::size_t n_elements = 0;
    std::size_t k_refractive = 0;
    std::size_t k_reflective = 0;
    double noise_w = 0.0;
    double gain_ap_surface = 0.0;
    arma::vec gain_ap_lu;       // K
    arma::vec gain_surface_lu;  // K
    double mu = 0.5;            // refracted energy fraction (variable-amplitude bound)
};

struct SideBounds {
    arma::vec refractive_bits;  // K_t, per-LU lower bounds
    arma::vec reflective_bits;  // K_r
    double sum_refractive_bits = 0.0;
    double sum_reflective_bits = 0.0;
};

// Variance of one jammed-channel entry under the constant-amplitude surface:
// gain_ap_surface * gain_surface_lu * n_elements / 2.
double ca_entry_variance(double gain_ap_surface, double gain_surface_lu, std::size_t n_elements);

// Variable-amplitude counterpart: (refractive, reflective) entry variances,
// gain_ap_surface * gain * n_elements * mu and * (1 - mu).
std::pair<double, double> va_entry_variances(double gain_ap_surface, double gain_surface_lu_t,
                                             double gain_surface_lu_r, std::size_t n_elements,
                                             double mu);

// E[tr((H^H H)^-1)] for H with i.i.d. CN(0, gains[k]) columns:
// (1/(n_antennas - K)) * sum_k 1/gains[k]. Requires n_antennas > K.
double wishart_trace_expectation(std::size_t n_antennas, const arma::vec& gains);

// Per-side ergodic sum-rate lower bounds under constant-amplitude jamming.
// Per refractive LU k: log2(1 + (2*P0*K*(NA-K)/S + P0*Lg*Li_k*ND)
//                               / (P0*Lg*(sum_{u != k} Li_u)*ND + 2*K*noise)),
// S = sum_k 1/Ld_k, the cross sum running over ALL other LUs' own-side gains.
// Reflective side analogous. in.mu is ignored.
SideBounds ca_sum_rate_bounds(const BoundInputs& in);

// Variable-amplitude bounds: the surface terms scale by mu (refractive) and
// 1 - mu (reflective), and the constants are K/1 instead of 2K/2. With
// printed_form, the reflective numerator surface term gains an extra n_antennas
// factor (a published variant kept for comparison; the default follows the
// derivation and is what the Monte Carlo ordering validates).
SideBounds va_sum_rate_bounds(const BoundInputs& in, bool printed_form = false);

struct Moments {
    std::complex<double> mean{0.0, 0.0};
    double variance = 0.0;      // unbiased, around the sample mean
    double fourth_ratio = 0.0;  // E|z|^4 / (E|z|^2)^2, -> 2 for complex Gaussian
    std::size_t n = 0;
};

Moments empirical_moments(const arma::cx_vec& samples);

}  // namespace iosjam
