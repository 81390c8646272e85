// SPDX-License-Identifier: Apache-2.0
#include "iosjam/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "iosjam/analysis.hpp"
#include "iosjam/engine.hpp"
#include "iosjam/fading.hpp"
#include "iosjam/precoder.hpp"
#include "iosjam/rng.hpp"
#include "iosjam/sweep.hpp"

namespace iosjam {
namespace {

constexpr std::uint64_t verify_salt = 0x76657269ULL;

Check two_sided(std::string name, double measured, double expected, double tol) {
    const bool ok = std::isfinite(measured) && std::abs(measured - expected) <= tol;
    return {std::move(name), measured, expected, tol, ok};
}

Check one_sided(std::string name, double measured, double bound, double slack) {
    const bool ok = std::isfinite(measured) && measured >= bound - slack;
    return {std::move(name), measured, bound, slack, ok};
}

SurfaceModel variable_model(const SimConfig& cfg) {
    return make_model(AmplitudeKind::Variable, cfg.surface_levels);
}

}  // namespace

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

VerifyReport verify_propositions(const SimConfig& cfg) {
    RngStream scene_rng(cfg.seed, {verify_salt, 1});
    const Scene scene = build_scene(cfg.scene, scene_rng);
    const LargeScale gains = large_scale_gains(scene, cfg.laws);
    const arma::cx_mat los = los_phase_matrix(scene);

    const SurfaceModel va = variable_model(cfg);
    const SurfaceModel ca = constant_amplitude_variant(va);
    const double mu_va = mu(va);

    const std::size_t na = scene.n_antennas();
    const std::size_t nd = scene.n_elements();
    const std::size_t kt = scene.k_refractive;
    const std::size_t kr = scene.k_reflective;
    const std::size_t k = scene.k_total();

    std::size_t k_side_min = k;
    if (kt > 0) k_side_min = std::min(k_side_min, kt);
    if (kr > 0) k_side_min = std::min(k_side_min, kr);
    // The deterministic AP-surface phase structure leaves few effective samples
    // per (block, LU) column, so the block count, not the entry count, sets the
    // estimator noise; 192 blocks puts the 1% energy-split check at ~4 sigma.
    const std::size_t per_block = std::max<std::size_t>(1, na * k_side_min);
    const std::size_t n_blocks = std::max<std::size_t>(192, (20000 + per_block - 1) / per_block);

    // 1/sqrt of the predicted per-LU entry variances.
    arma::vec ca_scale(k), va_scale(k);
    for (std::size_t u = 0; u < k; ++u) {
        const double g_i = gains.surface_lu(u);
        ca_scale(u) = 1.0 / std::sqrt(ca_entry_variance(gains.ap_surface, g_i, nd));
        const auto [vt, vr] = va_entry_variances(gains.ap_surface, g_i, g_i, nd, mu_va);
        va_scale(u) = 1.0 / std::sqrt(u < kt ? vt : vr);
    }

    arma::cx_vec pool_ca(n_blocks * na * k);
    arma::cx_vec pool_va_t(n_blocks * na * kt);
    arma::cx_vec pool_va_r(n_blocks * na * kr);

    for (std::size_t b = 0; b < n_blocks; ++b) {
        RngStream ch_rng(cfg.seed, {verify_salt, 2, b});
        const arma::cx_mat g = sample_g(scene, los, cfg.rician, gains.ap_surface, ch_rng);
        arma::cx_mat h_i_t(nd, kt), h_i_r(nd, kr);
        for (std::size_t u = 0; u < kt; ++u)
            h_i_t.col(u) = sample_far_field(nd, gains.surface_lu(u), ch_rng);
        for (std::size_t u = 0; u < kr; ++u)
            h_i_r.col(u) = sample_far_field(nd, gains.surface_lu(kt + u), ch_rng);

        RngStream ca_rng(cfg.seed, {verify_salt, 3, b});
        RngStream va_rng(cfg.seed, {verify_salt, 4, b});
        const CoefficientDraw dca = sample_coefficients(ca, nd, ca_rng);
        const CoefficientDraw dva = sample_coefficients(va, nd, va_rng);

        const auto store = [na](arma::cx_vec& pool, std::size_t block, const arma::cx_mat& jam,
                                const arma::vec& scale, std::size_t first_lu) {
            for (std::size_t c = 0; c < jam.n_cols; ++c) {
                const std::size_t off = (block * jam.n_cols + c) * na;
                pool.subvec(off, off + na - 1) = jam.col(c) * scale(first_lu + c);
            }
        };
        if (kt > 0) {
            const arma::cx_mat jam_ca_t = jammed_channel(g, h_i_t, dca.refracted);
            const arma::cx_mat jam_va_t = jammed_channel(g, h_i_t, dva.refracted);
            store(pool_va_t, b, jam_va_t, va_scale, 0);
            for (std::size_t c = 0; c < kt; ++c) {
                const std::size_t off = (b * k + c) * na;
                pool_ca.subvec(off, off + na - 1) = jam_ca_t.col(c) * ca_scale(c);
            }
        }
        if (kr > 0) {
            const arma::cx_mat jam_ca_r = jammed_channel(g, h_i_r, dca.reflected);
            const arma::cx_mat jam_va_r = jammed_channel(g, h_i_r, dva.reflected);
            store(pool_va_r, b, jam_va_r, va_scale, kt);
            for (std::size_t c = 0; c < kr; ++c) {
                const std::size_t off = (b * k + kt + c) * na;
                pool_ca.subvec(off, off + na - 1) = jam_ca_r.col(c) * ca_scale(kt + c);
            }
        }
    }

    VerifyReport rep;
    const Moments mca = empirical_moments(pool_ca);
    rep.checks.push_back(two_sided("ca_entry_variance", mca.variance, 1.0, 0.03));
    rep.checks.push_back(two_sided("ca_fourth_moment_ratio", mca.fourth_ratio, 2.0, 0.1));
    rep.checks.push_back(two_sided("ca_mean_magnitude", std::abs(mca.mean), 0.0, 0.02));

    double var_t = 0.0, var_r = 0.0;
    if (kt > 0) {
        var_t = empirical_moments(pool_va_t).variance;
        rep.checks.push_back(two_sided("va_entry_variance_refractive", var_t, 1.0, 0.03));
    }
    if (kr > 0) {
        var_r = empirical_moments(pool_va_r).variance;
        rep.checks.push_back(two_sided("va_entry_variance_reflective", var_r, 1.0, 0.03));
    }
    if (kt > 0 && kr > 0) {
        // Refracted + reflected energy relative to the unsplit prediction.
        const double energy = var_t * mu_va + var_r * (1.0 - mu_va);
        rep.checks.push_back(two_sided("va_energy_split", energy, 1.0, 0.01));
        const Moments mva = empirical_moments(arma::join_cols(pool_va_t, pool_va_r));
        rep.checks.push_back(two_sided("va_fourth_moment_ratio", mva.fourth_ratio, 2.0, 0.1));
    }
    return rep;
}

VerifyReport verify_wishart(const SimConfig& cfg) {
    constexpr std::size_t na = 32;
    constexpr std::size_t k = 8;
    constexpr std::size_t n_draws = 10000;

    RngStream rng(cfg.seed, {verify_salt, 5});
    arma::vec gains(k);
    for (std::size_t c = 0; c < k; ++c) gains(c) = 1e-12 * std::pow(100.0, rng.uniform());
    const double expected = wishart_trace_expectation(na, gains);

    double acc = 0.0;
    arma::cx_mat h(na, k);
    for (std::size_t d = 0; d < n_draws; ++d) {
        for (std::size_t c = 0; c < k; ++c) h.col(c) = sample_far_field(na, gains(c), rng);
        acc += trace_inverse_gram(h);
    }
    VerifyReport rep;
    rep.checks.push_back(
        two_sided("wishart_trace_ratio", acc / static_cast<double>(n_draws) / expected, 1.0, 0.02));
    return rep;
}

VerifyReport verify_zf(const SimConfig& cfg) {
    constexpr std::size_t instances = 100;
    const std::size_t na = cfg.scene.n_antennas;
    const std::size_t k = cfg.scene.k_refractive + cfg.scene.k_reflective;
    const double p0 = cfg.total_power_w(cfg.power_dbm);

    RngStream rng(cfg.seed, {verify_salt, 6});
    double worst_leak = 0.0, worst_power = 0.0;
    arma::cx_mat h(na, k);
    for (std::size_t inst = 0; inst < instances; ++inst) {
        for (std::size_t c = 0; c < k; ++c)
            h.col(c) = sample_far_field(na, 1e-12 * std::pow(100.0, rng.uniform()), rng);
        const Precoder pre = zf_precoder(h, p0, cfg.condition_cap);
        const arma::mat cross = arma::square(arma::abs(h.t() * pre.w));
        const double desired_min = cross.diag().min();
        double leak = 0.0;
        for (std::size_t u = 0; u < k; ++u)
            for (std::size_t c = 0; c < k; ++c)
                if (u != c) leak = std::max(leak, cross(u, c));
        worst_leak = std::max(worst_leak, leak / desired_min);
        worst_power = std::max(
            worst_power, std::abs(arma::accu(arma::square(arma::abs(pre.w))) - p0) / p0);
    }
    VerifyReport rep;
    rep.checks.push_back(two_sided("zf_peak_leakage", worst_leak, 0.0, 1e-9));
    rep.checks.push_back(two_sided("zf_power_mismatch", worst_power, 0.0, 1e-9));
    return rep;
}

VerifyReport verify_bounds(const SimConfig& cfg) {
    SimConfig reduced = cfg;
    if (reduced.power_dbm_grid.empty()) reduced.power_dbm_grid.push_back(cfg.power_dbm);
    const std::vector<double>& grid = reduced.power_dbm_grid;
    std::vector<double> picks{grid.front(), grid[grid.size() / 2], grid.back()};
    picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
    reduced.power_dbm_grid = picks;

    // Same scene, bounds and engine streams as the sweep the CLI emits.
    const auto points = run_sweep_points(
        reduced, SweepAxis::PowerDbm,
        {SchemeVariant::IosConstantAmp, SchemeVariant::IosVariableAmp});

    VerifyReport rep;
    for (const auto& pt : points) {
        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), "%gdbm", pt.per_lu_dbm);
        for (std::size_t i = 0; i < pt.variants.size(); ++i) {
            const bool is_ca = pt.variants[i] == SchemeVariant::IosConstantAmp;
            const SideBounds& b = is_ca ? pt.ca_bounds : pt.va_bounds;
            const RateReport& r = pt.reports[i];
            const std::string prefix = is_ca ? "ca_bound_" : "va_bound_";
            rep.checks.push_back(one_sided(prefix + "refractive_" + suffix,
                                           r.sum_refractive_bits, b.sum_refractive_bits,
                                           r.ci_refractive));
            rep.checks.push_back(one_sided(prefix + "reflective_" + suffix,
                                           r.sum_reflective_bits, b.sum_reflective_bits,
                                           r.ci_reflective));
        }
    }
    return rep;
}

VerifyReport verify_all(const SimConfig& cfg) {
    VerifyReport rep = verify_propositions(cfg);
    for (VerifyReport part : {verify_wishart(cfg), verify_zf(cfg), verify_bounds(cfg)})
        rep.checks.insert(rep.checks.end(), part.checks.begin(), part.checks.end());
    return rep;
}

void print_report(const VerifyReport& report, std::ostream& os) {
    std::size_t n_pass = 0;
    for (const Check& c : report.checks) {
        char line[256];
        std::snprintf(line, sizeof(line), "[%s] %s measured=%.6g expected=%.6g tol=%.3g\n",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.expected,
                      c.tolerance);
        os << line;
        if (c.pass) ++n_pass;
    }
    os << "verify: " << n_pass << "/" << report.checks.size() << " checks passed\n";
}

}  // namespace iosjam
