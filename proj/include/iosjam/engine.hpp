// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <cstddef>
#include <cstdint>
#include <utility>

#include "iosjam/fading.hpp"
#include "iosjam/precoder.hpp"
#include "iosjam/rng.hpp"
#include "iosjam/scene.hpp"
#include "iosjam/surface.hpp"

namespace iosjam {

enum class SchemeVariant { NoJamming, IosConstantAmp, IosVariableAmp, RisOneBit, ActiveJammer };

struct Scheme {
    SchemeVariant variant = SchemeVariant::NoJamming;
    double jammer_power_w = 0.0;  // > 0 iff variant == ActiveJammer
};

struct EngineConfig {
    std::size_t n_blocks = 500;
    std::size_t slots_per_block = 6;  // jammed data slots per coherence block
    std::size_t batches = 10;         // batch-means groups behind the CI
    unsigned threads = 1;
    std::uint64_t seed = 1;
    double total_power_w = 0.0;  // summed over LUs
    double noise_w = 1.8e-15;
    RicianSpec rician;
    PathLossLawSet laws;
    double condition_cap = 1e12;
    std::size_t max_resamples = 32;  // per-block cap on ill-conditioned redraws
};

struct RateReport {
    arma::vec per_lu_bits;  // K, scene LU order
    double sum_refractive_bits = 0.0;
    double sum_reflective_bits = 0.0;
    double sum_total_bits = 0.0;
    double ci_refractive = 0.0;  // 1.96 * stderr of the side sums (batch means)
    double ci_reflective = 0.0;
    double ci_total = 0.0;
    std::size_t n_blocks = 0;
    std::size_t n_resampled = 0;
};

// g^H * diag(coeff) * h_i; column k is LU k's jammed channel for one slot.
arma::cx_mat jammed_channel(const arma::cx_mat& g, const arma::cx_mat& h_i,
                            const arma::cx_vec& coeff);

// Aging relative to the pilot-phase channel the precoder saw.
arma::cx_mat aca_channel(const arma::cx_mat& h_dt, const arma::cx_mat& h_pt);

// One slot, one LU: desired = |(h_d_k + h_jam_k)^H w_k|^2 and
// interference = sum_{u != k} |(h_d_k + h_jam_k)^H w_u|^2.
std::pair<double, double> slot_signal_terms(const arma::cx_vec& h_d_k, const arma::cx_vec& h_jam_k,
                                            const Precoder& pre, std::size_t k);

// Stream addressing used inside estimate_rates, exposed so tests can replay the
// exact draws. Channel purposes are salted by the resample attempt; coefficient
// and jammer draws are not.
enum class StreamPurpose : std::uint64_t {
    DirectChannel = 1,
    RefractiveChannel = 2,
    ReflectiveChannel = 3,
    ApSurfaceChannel = 4,
    SurfaceCoefficients = 5,
    JammerFading = 6,
};

RngStream block_stream(std::uint64_t seed, StreamPurpose purpose, std::size_t block,
                       std::size_t attempt = 0);

// Per block: draw pilot-phase channels, build the ZF precoder, then accumulate
// desired/interference powers over slots_per_block jammed slots. Per LU,
// SINR = mean(desired) / (mean(interference) + noise) across blocks x slots and
// rate = log2(1 + SINR). Ill-conditioned pilot channels are redrawn (counted,
// capped). Blocks run on cfg.threads workers; per-block streams plus an ordered
// compensated reduction make the result byte-identical at any worker count.
RateReport estimate_rates(const Scene& scene, const Scheme& scheme, const SurfaceModel& model,
                          const EngineConfig& cfg);

}  // namespace iosjam
