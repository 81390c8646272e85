// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <stdexcept>

namespace iosjam {

// Pilot-phase channel too close to rank deficiency for the configured cap.
struct IllConditionedChannel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Precoder {
    arma::cx_mat w;                // N_A x K; ||w||_F^2 = total_power
    double total_power = 0.0;      // watts
    double trace_inv_gram = 0.0;   // tr((h_d^H h_d)^-1)
};

// Zero-forcing from pilot CSI with equal per-user allocations:
// w = h_d (h_d^H h_d)^-1 * sqrt(total_power) / ||h_d (h_d^H h_d)^-1||_F.
// Requires N_A >= K (throws std::invalid_argument) and cond(h_d) below
// condition_cap (throws IllConditionedChannel).
Precoder zf_precoder(const arma::cx_mat& h_d, double total_power, double condition_cap = 1e12);

// tr((h_d^H h_d)^-1) via a symmetric-positive-definite solve.
double trace_inverse_gram(const arma::cx_mat& h_d);

}  // namespace iosjam
