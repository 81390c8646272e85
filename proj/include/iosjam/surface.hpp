// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <cstddef>
#include <vector>

#include "iosjam/rng.hpp"

namespace iosjam {

enum class AmplitudeKind { Constant, Variable };

// One quantized refraction/reflection state. A single level index controls both
// sides at once: refracted coefficient xi_t*exp(j*theta_t), reflected coefficient
// xi_r*exp(j*theta_r), selected with probability p.
struct SurfaceLevel {
    double theta_t = 0.0;
    double xi_t = 0.0;
    double theta_r = 0.0;
    double xi_r = 0.0;
    double p = 0.0;
};

struct SurfaceModel {
    AmplitudeKind kind = AmplitudeKind::Variable;
    std::vector<SurfaceLevel> levels;  // 2^bits entries
    unsigned bits = 0;
};

// Per-element coefficients for one data slot; both vectors come from the same
// per-element level draw.
struct CoefficientDraw {
    arma::cx_vec refracted;  // N_D
    arma::cx_vec reflected;  // N_D
};

// Validates: |levels| a power of two, probabilities >= 0 summing to 1 (1e-12),
// amplitudes in [0, 1], per-level energy xi_t^2 + xi_r^2 = 1 within 0.02, and for
// the constant-amplitude kind xi_t = xi_r = sqrt(1/2) (1e-12). Throws
// std::invalid_argument. Levels are accepted verbatim, never renormalized.
SurfaceModel make_model(AmplitudeKind kind, std::vector<SurfaceLevel> levels);

// Per element s, one level index m drawn i.i.d. with probabilities p_m (inverse
// CDF in level order); refracted[s] and reflected[s] share the index.
CoefficientDraw sample_coefficients(const SurfaceModel& model, std::size_t n_elements,
                                    RngStream& rng);

// Refracted energy fraction: sum_m p_m * xi_t_m^2.
double mu(const SurfaceModel& model);

// Default two-level variable-amplitude table (one-bit surface):
//   level 1: theta_t = 5*pi/3, xi_t = 0.78, theta_r = pi/9,   xi_r = 0.62, p = 0.25
//   level 2: theta_t = 2*pi/3, xi_t = 0.82, theta_r = 7*pi/6, xi_r = 0.57, p = 0.75
SurfaceModel default_variable_model();

// Same phases and probabilities as `model`, amplitudes forced to sqrt(1/2).
SurfaceModel constant_amplitude_variant(const SurfaceModel& model);

// Reflect-only benchmark: xi_t = 0, xi_r = 1, reflection phases {0, pi} with equal
// probability. Energy is conserved exactly, and mu = 0.
SurfaceModel one_bit_reflector_model();

}  // namespace iosjam
