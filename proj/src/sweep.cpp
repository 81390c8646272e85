// SPDX-License-Identifier: Apache-2.0
#include "iosjam/sweep.hpp"

#include "iosjam/units.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace iosjam {

namespace {

constexpr std::uint64_t scene_salt = 0x5ce2e01d5aULL;
constexpr std::uint64_t point_salt = 0x90124700abULL;

constexpr double nan_bound = std::numeric_limits<double>::quiet_NaN();

struct PointParams {
    SceneParams scene;
    double per_lu_dbm = 0.0;
    double axis_value = 0.0;
};

std::vector<PointParams> grid_points(const SimConfig& cfg, SweepAxis axis) {
    std::vector<PointParams> out;
    switch (axis) {
        case SweepAxis::PowerDbm:
            for (double p : cfg.power_dbm_grid) out.push_back({cfg.scene, p, p});
            break;
        case SweepAxis::Elements:
            for (std::size_t n : cfg.elements_grid) {
                PointParams pt{cfg.scene, cfg.power_dbm, static_cast<double>(n)};
                pt.scene.n_elements = n;
                out.push_back(pt);
            }
            break;
        case SweepAxis::Antennas:
        case SweepAxis::AntennasElements16x:
            for (std::size_t n : cfg.antennas_grid) {
                PointParams pt{cfg.scene, cfg.power_dbm, static_cast<double>(n)};
                pt.scene.n_antennas = n;
                if (axis == SweepAxis::AntennasElements16x)
                    pt.scene.n_elements = cfg.elements_per_antenna * n;
                if (n <= pt.scene.k_refractive + pt.scene.k_reflective)
                    throw ConfigError("antennas_grid entry does not exceed the user count", 0);
                out.push_back(pt);
            }
            break;
        case SweepAxis::Users:
            for (std::size_t u : cfg.users_grid) {
                PointParams pt{cfg.scene, cfg.power_dbm, static_cast<double>(u)};
                pt.scene.k_refractive = u / 2;
                pt.scene.k_reflective = u - u / 2;
                if (pt.scene.n_antennas <= u)
                    throw ConfigError("users_grid entry reaches the antenna count", 0);
                out.push_back(pt);
            }
            break;
    }
    return out;
}

BoundInputs bound_inputs(const SimConfig& cfg, const Scene& scene, double per_lu_dbm, double mu_va) {
    const LargeScale gains = large_scale_gains(scene, cfg.laws);
    BoundInputs bi;
    bi.total_power = dbm_to_watts(per_lu_dbm) * static_cast<double>(scene.k_total());
    bi.n_antennas = scene.n_antennas();
    bi.n_elements = scene.n_elements();
    bi.k_refractive = scene.k_refractive;
    bi.k_reflective = scene.k_reflective;
    bi.noise_w = cfg.noise_w();
    bi.gain_ap_surface = gains.ap_surface;
    bi.gain_ap_lu = gains.ap_lu;
    bi.gain_surface_lu = gains.surface_lu;
    bi.mu = mu_va;
    return bi;
}

}  // namespace

std::string axis_label(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::PowerDbm: return "power_dbm";
        case SweepAxis::Elements: return "n_elements";
        case SweepAxis::Antennas: return "n_antennas";
        case SweepAxis::AntennasElements16x: return "n_antennas_nd16x";
        case SweepAxis::Users: return "n_users";
    }
    throw std::logic_error("axis_label: bad axis");
}

SweepAxis preset_axis(const std::string& name) {
    if (name == "fig2") return SweepAxis::PowerDbm;
    if (name == "fig3") return SweepAxis::Elements;
    if (name == "fig4") return SweepAxis::Antennas;
    if (name == "fig5") return SweepAxis::AntennasElements16x;
    if (name == "fig6") return SweepAxis::Users;
    throw ConfigError("unknown preset '" + name + "' (expected fig2..fig6)", 0);
}

std::vector<SchemeVariant> all_scheme_variants() {
    return {SchemeVariant::NoJamming, SchemeVariant::IosConstantAmp, SchemeVariant::IosVariableAmp,
            SchemeVariant::RisOneBit, SchemeVariant::ActiveJammer};
}

std::string scheme_label(SchemeVariant variant) {
    switch (variant) {
        case SchemeVariant::NoJamming: return "no_jamming";
        case SchemeVariant::IosConstantAmp: return "ios_ca";
        case SchemeVariant::IosVariableAmp: return "ios_va";
        case SchemeVariant::RisOneBit: return "ris_1bit";
        case SchemeVariant::ActiveJammer: return "active_jammer";
    }
    throw std::logic_error("scheme_label: bad variant");
}

std::vector<SweepPoint> run_sweep_points(const SimConfig& cfg, SweepAxis axis,
                                         const std::vector<SchemeVariant>& variants) {
    if (variants.empty()) throw ConfigError("no schemes requested", 0);
    const SurfaceModel va_model = cfg.surface_model();
    const double mu_va = mu(va_model);
    const auto grid = grid_points(cfg, axis);

    std::vector<SweepPoint> points;
    points.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& pt = grid[i];
        RngStream scene_rng(cfg.seed, {scene_salt});
        SweepPoint out;
        out.axis_value = pt.axis_value;
        out.per_lu_dbm = pt.per_lu_dbm;
        out.scene = build_scene(pt.scene, scene_rng);

        const BoundInputs bi = bound_inputs(cfg, out.scene, pt.per_lu_dbm, mu_va);
        out.ca_bounds = ca_sum_rate_bounds(bi);
        out.va_bounds = va_sum_rate_bounds(bi, cfg.va_bound_printed_form);

        for (SchemeVariant variant : variants) {
            EngineConfig ec = cfg.engine_config(pt.per_lu_dbm);
            ec.total_power_w = bi.total_power;
            ec.seed = derive_seed(cfg.seed, {point_salt, static_cast<std::uint64_t>(axis), i});
            Scheme scheme{variant, variant == SchemeVariant::ActiveJammer
                                       ? dbm_to_watts(cfg.aj_power_dbm)
                                       : 0.0};
            out.variants.push_back(variant);
            out.reports.push_back(estimate_rates(out.scene, scheme, va_model, ec));
        }
        points.push_back(std::move(out));
    }
    return points;
}

std::vector<SweepRow> rows_from_points(const SimConfig& cfg, SweepAxis axis,
                                       const std::vector<SweepPoint>& points) {
    (void)cfg;
    const std::string label = axis_label(axis);
    std::vector<SweepRow> rows;
    const char* sides[2] = {"refractive", "reflective"};

    for (const auto& pt : points) {
        const double k = static_cast<double>(pt.scene.k_total());
        const auto find_report = [&](SchemeVariant v) -> const RateReport* {
            for (std::size_t i = 0; i < pt.variants.size(); ++i)
                if (pt.variants[i] == v) return &pt.reports[i];
            return nullptr;
        };
        const auto mc_rows = [&](SchemeVariant v, const SideBounds* bounds) {
            const RateReport* rep = find_report(v);
            if (!rep) return;
            const double sums[2] = {rep->sum_refractive_bits, rep->sum_reflective_bits};
            const double cis[2] = {rep->ci_refractive, rep->ci_reflective};
            const double bound_sums[2] = {bounds ? bounds->sum_refractive_bits : 0.0,
                                          bounds ? bounds->sum_reflective_bits : 0.0};
            for (int s = 0; s < 2; ++s)
                rows.push_back({scheme_label(v), label, pt.axis_value, sides[s], sums[s] / k,
                                cis[s] / k, bounds ? bound_sums[s] / k : nan_bound});
            if (bounds) {
                const std::string bound_label = scheme_label(v) + "_bound";
                for (int s = 0; s < 2; ++s)
                    rows.push_back({bound_label, label, pt.axis_value, sides[s], bound_sums[s] / k,
                                    0.0, bound_sums[s] / k});
            }
        };
        mc_rows(SchemeVariant::NoJamming, nullptr);
        mc_rows(SchemeVariant::IosConstantAmp, &pt.ca_bounds);
        mc_rows(SchemeVariant::IosVariableAmp, &pt.va_bounds);
        mc_rows(SchemeVariant::RisOneBit, nullptr);
        mc_rows(SchemeVariant::ActiveJammer, nullptr);
    }
    return rows;
}

std::vector<SweepRow> run_sweep(const SimConfig& cfg, SweepAxis axis,
                                const std::vector<SchemeVariant>& variants) {
    return rows_from_points(cfg, axis, run_sweep_points(cfg, axis, variants));
}

std::vector<SweepRow> bound_rows(const SimConfig& cfg, SweepAxis axis) {
    const SurfaceModel va_model = cfg.surface_model();
    const double mu_va = mu(va_model);
    const std::string label = axis_label(axis);
    const char* sides[2] = {"refractive", "reflective"};

    std::vector<SweepRow> rows;
    for (const auto& pt : grid_points(cfg, axis)) {
        RngStream scene_rng(cfg.seed, {scene_salt});
        const Scene scene = build_scene(pt.scene, scene_rng);
        const double k = static_cast<double>(scene.k_total());
        const BoundInputs bi = bound_inputs(cfg, scene, pt.per_lu_dbm, mu_va);
        const SideBounds ca = ca_sum_rate_bounds(bi);
        const SideBounds va = va_sum_rate_bounds(bi, cfg.va_bound_printed_form);
        const double ca_sums[2] = {ca.sum_refractive_bits, ca.sum_reflective_bits};
        const double va_sums[2] = {va.sum_refractive_bits, va.sum_reflective_bits};
        for (int s = 0; s < 2; ++s)
            rows.push_back({"ios_ca_bound", label, pt.axis_value, sides[s], ca_sums[s] / k, 0.0,
                            ca_sums[s] / k});
        for (int s = 0; s < 2; ++s)
            rows.push_back({"ios_va_bound", label, pt.axis_value, sides[s], va_sums[s] / k, 0.0,
                            va_sums[s] / k});
    }
    return rows;
}

namespace {

std::string format6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "scheme,axis,axis_value,side,rate_per_lu_bits,ci_halfwidth,bound_bits\n";
    for (const auto& r : rows) {
        os << r.scheme << ',' << r.axis << ',' << format6(r.axis_value) << ',' << r.side << ','
           << format6(r.rate_per_lu_bits) << ',' << format6(r.ci_halfwidth) << ',';
        if (!std::isnan(r.bound_bits)) os << format6(r.bound_bits);
        os << '\n';
    }
}

void write_csv_file(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    emit_csv(rows, out);
    if (!out.flush()) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace iosjam
