// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <cstddef>

#include "iosjam/rng.hpp"
#include "iosjam/scene.hpp"

namespace iosjam {

// Rician power split of the AP-surface link. `factor` is the LOS/NLOS power
// ratio (0 = pure Rayleigh); `pure_los` selects the factor -> infinity limit.
struct RicianSpec {
    double factor = 3.0;
    bool pure_los = false;
};

struct PathLossLawSet {
    PathLossLaw ap_surface{35.6, 22.0};
    PathLossLaw ap_lu{32.6, 36.7};
    PathLossLaw surface_lu{32.6, 36.7};
};

// Linear power gains of every link, from the scene's reference points.
struct LargeScale {
    double ap_surface = 0.0;  // scalar, AP origin <-> surface origin
    arma::vec ap_lu;          // K, AP origin <-> LU k
    arma::vec surface_lu;     // K, surface origin <-> LU k
};

// One coherence block of small-scale realizations. LU columns follow scene
// order: refractive LUs first.
struct ChannelSet {
    arma::cx_mat g;      // N_D x N_A, AP -> surface
    arma::cx_mat h_d;    // N_A x K, direct AP -> LU
    arma::cx_mat h_i_t;  // N_D x K_t, surface -> refractive LUs
    arma::cx_mat h_i_r;  // N_D x K_r, surface -> reflective LUs
    LargeScale gains;
};

LargeScale large_scale_gains(const Scene& scene, const PathLossLawSet& laws);

// Deterministic geometry phases of the AP-surface link, N_A x N_D; entry (n, s)
// = exp(-j*2*pi/lambda*(d_ns - d_n)) with d_n the antenna-to-surface-origin
// distance. Every entry has modulus 1.
arma::cx_mat los_phase_matrix(const Scene& scene);

// G = sqrt(gain) * (sqrt(f/(1+f)) * los^H + sqrt(1/(1+f)) * NLOS), NLOS entries
// i.i.d. CN(0, 1). `los` must be los_phase_matrix(scene); the Hermitian transpose
// puts G in N_D x N_A orientation so G^H recovers the forward phases.
arma::cx_mat sample_g(const Scene& scene, const arma::cx_mat& los, const RicianSpec& spec,
                      double gain, RngStream& rng);

// Far-field Rayleigh vector: n i.i.d. CN(0, gain) entries.
arma::cx_vec sample_far_field(std::size_t n, double gain, RngStream& rng);

// Full block draw. Stream consumption order: h_d columns, h_i_t columns, h_i_r
// columns, then g.
ChannelSet assemble_channels(const Scene& scene, const arma::cx_mat& los, const RicianSpec& spec,
                             const PathLossLawSet& laws, RngStream& rng);

}  // namespace iosjam
