// SPDX-License-Identifier: Apache-2.0
#include "iosjam/precoder.hpp"

#include <cmath>

namespace iosjam {

Precoder zf_precoder(const arma::cx_mat& h_d, double total_power, double condition_cap) {
    if (h_d.n_rows < h_d.n_cols)
        throw std::invalid_argument("zf_precoder: more users than antennas");
    if (h_d.n_cols == 0) throw std::invalid_argument("zf_precoder: empty channel");
    if (!(total_power > 0.0)) throw std::invalid_argument("zf_precoder: total_power must be > 0");
    if (!(condition_cap >= 1.0)) throw std::invalid_argument("zf_precoder: condition_cap must be >= 1");

    const arma::cx_mat gram = h_d.t() * h_d;  // K x K Hermitian
    // cond(h_d) <= cap <=> rcond(gram) >= 1/cap^2 (gram condition is squared).
    const double rc = arma::rcond(gram);
    if (!(rc > 1.0 / (condition_cap * condition_cap)))
        throw IllConditionedChannel("zf_precoder: channel condition number above cap");

    arma::cx_mat m;
    if (!arma::solve(m, gram, h_d.t(), arma::solve_opts::likely_sympd))
        throw IllConditionedChannel("zf_precoder: gram solve failed");
    m = m.t();  // h_d * gram^-1

    Precoder pre;
    const double fro = arma::norm(m, "fro");
    pre.trace_inv_gram = fro * fro;  // tr(gram^-1) = ||h_d*gram^-1||_F^2
    pre.total_power = total_power;
    pre.w = (std::sqrt(total_power) / fro) * m;
    return pre;
}

double trace_inverse_gram(const arma::cx_mat& h_d) {
    if (h_d.n_rows < h_d.n_cols)
        throw std::invalid_argument("trace_inverse_gram: more users than antennas");
    arma::cx_mat inv;
    if (!arma::inv_sympd(inv, h_d.t() * h_d))
        throw IllConditionedChannel("trace_inverse_gram: singular gram matrix");
    return std::real(arma::trace(inv));
}

}  // namespace iosjam
