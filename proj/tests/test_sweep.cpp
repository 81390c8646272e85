// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "iosjam/sweep.hpp"

using namespace iosjam;
using Catch::Approx;

namespace {

// Small enough to run every scheme in milliseconds.
SimConfig scaled_config() {
    SimConfig cfg = default_config();
    cfg.scene.n_antennas = 16;
    cfg.scene.n_elements = 32;
    cfg.scene.k_refractive = 1;
    cfg.scene.k_reflective = 1;
    cfg.power_dbm_grid = {0.0, 10.0};
    cfg.n_blocks = 4;
    cfg.slots_per_block = 2;
    cfg.batches = 2;
    cfg.elements_grid = {32, 64};
    cfg.antennas_grid = {8, 16};
    cfg.users_grid = {2, 4};
    cfg.elements_per_antenna = 4;
    return cfg;
}

std::string csv_string(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    emit_csv(rows, os);
    return os.str();
}

}  // namespace

TEST_CASE("axis and scheme labels") {
    CHECK(axis_label(SweepAxis::PowerDbm) == "power_dbm");
    CHECK(axis_label(SweepAxis::Elements) == "n_elements");
    CHECK(axis_label(SweepAxis::Antennas) == "n_antennas");
    CHECK(axis_label(SweepAxis::AntennasElements16x) == "n_antennas_nd16x");
    CHECK(axis_label(SweepAxis::Users) == "n_users");

    CHECK(scheme_label(SchemeVariant::NoJamming) == "no_jamming");
    CHECK(scheme_label(SchemeVariant::IosConstantAmp) == "ios_ca");
    CHECK(scheme_label(SchemeVariant::IosVariableAmp) == "ios_va");
    CHECK(scheme_label(SchemeVariant::RisOneBit) == "ris_1bit");
    CHECK(scheme_label(SchemeVariant::ActiveJammer) == "active_jammer");

    const auto all = all_scheme_variants();
    REQUIRE(all.size() == 5);
    CHECK(all.front() == SchemeVariant::NoJamming);
    CHECK(all.back() == SchemeVariant::ActiveJammer);
}

TEST_CASE("figure presets map to axes") {
    CHECK(preset_axis("fig2") == SweepAxis::PowerDbm);
    CHECK(preset_axis("fig3") == SweepAxis::Elements);
    CHECK(preset_axis("fig4") == SweepAxis::Antennas);
    CHECK(preset_axis("fig5") == SweepAxis::AntennasElements16x);
    CHECK(preset_axis("fig6") == SweepAxis::Users);
    CHECK_THROWS_AS(preset_axis("fig7"), ConfigError);
    CHECK_THROWS_AS(preset_axis(""), ConfigError);
}

TEST_CASE("power sweep emits the canonical row block per point") {
    const SimConfig cfg = scaled_config();
    const auto rows = run_sweep(cfg, SweepAxis::PowerDbm, all_scheme_variants());
    // Per point: 5 schemes x 2 sides + 2 bound schemes x 2 sides.
    REQUIRE(rows.size() == 2 * 14);

    const char* expected_scheme[14] = {"no_jamming",   "no_jamming",   "ios_ca",      "ios_ca",
                                       "ios_ca_bound", "ios_ca_bound", "ios_va",      "ios_va",
                                       "ios_va_bound", "ios_va_bound", "ris_1bit",    "ris_1bit",
                                       "active_jammer", "active_jammer"};
    for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t i = 0; i < 14; ++i) {
            const SweepRow& r = rows[p * 14 + i];
            CHECK(r.scheme == expected_scheme[i]);
            CHECK(r.axis == "power_dbm");
            CHECK(r.axis_value == cfg.power_dbm_grid[p]);
            CHECK(r.side == (i % 2 == 0 ? "refractive" : "reflective"));
        }

    // Bound columns: filled on surface schemes, absent elsewhere; bound rows
    // restate their own value with zero CI.
    for (std::size_t p = 0; p < 2; ++p) {
        const SweepRow* blk = rows.data() + p * 14;
        CHECK(std::isnan(blk[0].bound_bits));
        CHECK(std::isnan(blk[11].bound_bits));
        CHECK(std::isnan(blk[13].bound_bits));
        CHECK(blk[2].bound_bits == blk[4].rate_per_lu_bits);
        CHECK(blk[3].bound_bits == blk[5].rate_per_lu_bits);
        CHECK(blk[6].bound_bits == blk[8].rate_per_lu_bits);
        CHECK(blk[4].ci_halfwidth == 0.0);
        CHECK(blk[8].ci_halfwidth == 0.0);
        CHECK(blk[4].bound_bits == blk[4].rate_per_lu_bits);
    }

    // Requesting a subset drops the other schemes' rows entirely.
    const auto subset = run_sweep(cfg, SweepAxis::PowerDbm, {SchemeVariant::IosConstantAmp});
    REQUIRE(subset.size() == 2 * 4);
    CHECK(subset[0].scheme == "ios_ca");
    CHECK(subset[2].scheme == "ios_ca_bound");
}

TEST_CASE("non-power axes vary the scene geometry") {
    const SimConfig cfg = scaled_config();

    const auto elem = run_sweep_points(cfg, SweepAxis::Elements, {SchemeVariant::NoJamming});
    REQUIRE(elem.size() == 2);
    CHECK(elem[0].scene.n_elements() == 32);
    CHECK(elem[1].scene.n_elements() == 64);
    CHECK(elem[0].axis_value == 32.0);
    CHECK(elem[0].per_lu_dbm == cfg.power_dbm);

    const auto ant = run_sweep_points(cfg, SweepAxis::Antennas, {SchemeVariant::NoJamming});
    CHECK(ant[0].scene.n_antennas() == 8);
    CHECK(ant[1].scene.n_antennas() == 16);
    CHECK(ant[0].scene.n_elements() == 32);  // unchanged on this axis

    const auto tied =
        run_sweep_points(cfg, SweepAxis::AntennasElements16x, {SchemeVariant::NoJamming});
    CHECK(tied[0].scene.n_elements() == 4 * 8);
    CHECK(tied[1].scene.n_elements() == 4 * 16);

    const auto users = run_sweep_points(cfg, SweepAxis::Users, {SchemeVariant::NoJamming});
    CHECK(users[0].scene.k_refractive == 1);
    CHECK(users[0].scene.k_reflective == 1);
    CHECK(users[1].scene.k_refractive == 2);
    CHECK(users[1].scene.k_reflective == 2);

    // LU placements are common across points of one sweep: prefixes agree.
    CHECK(arma::approx_equal(users[0].scene.lu_positions,
                             users[1].scene.lu_positions.head_rows(2), "absdiff", 0.0));

    SimConfig bad = cfg;
    bad.antennas_grid = {2};
    CHECK_THROWS_AS(run_sweep_points(bad, SweepAxis::Antennas, {SchemeVariant::NoJamming}),
                    ConfigError);
}

TEST_CASE("sweeps are deterministic at any thread count") {
    SimConfig cfg = scaled_config();
    const auto a = run_sweep(cfg, SweepAxis::PowerDbm, all_scheme_variants());
    const auto b = run_sweep(cfg, SweepAxis::PowerDbm, all_scheme_variants());
    CHECK(csv_string(a) == csv_string(b));

    cfg.threads = 3;
    const auto c = run_sweep(cfg, SweepAxis::PowerDbm, all_scheme_variants());
    CHECK(csv_string(a) == csv_string(c));

    cfg.threads = 1;
    cfg.seed = 30;
    const auto d = run_sweep(cfg, SweepAxis::PowerDbm, all_scheme_variants());
    CHECK(csv_string(a) != csv_string(d));
}

TEST_CASE("per-lu rates are the side sums over the total user count") {
    const SimConfig cfg = scaled_config();
    const auto pts = run_sweep_points(cfg, SweepAxis::PowerDbm, {SchemeVariant::IosConstantAmp});
    const auto rows = rows_from_points(cfg, SweepAxis::PowerDbm, pts);
    REQUIRE(pts.size() == 2);
    REQUIRE(rows.size() == 8);
    for (std::size_t p = 0; p < 2; ++p) {
        const RateReport& rep = pts[p].reports[0];
        CHECK(rows[p * 4 + 0].rate_per_lu_bits == Approx(rep.sum_refractive_bits / 2.0));
        CHECK(rows[p * 4 + 1].rate_per_lu_bits == Approx(rep.sum_reflective_bits / 2.0));
        CHECK(rows[p * 4 + 0].ci_halfwidth == Approx(rep.ci_refractive / 2.0));
        CHECK(rows[p * 4 + 2].rate_per_lu_bits ==
              Approx(pts[p].ca_bounds.sum_refractive_bits / 2.0));
    }
}

TEST_CASE("bound rows agree with the closed forms and the printed variant") {
    SimConfig cfg = scaled_config();
    const auto base = bound_rows(cfg, SweepAxis::PowerDbm);
    REQUIRE(base.size() == 2 * 4);
    for (const auto& r : base) {
        CHECK((r.scheme == "ios_ca_bound" || r.scheme == "ios_va_bound"));
        CHECK(r.ci_halfwidth == 0.0);
        CHECK(r.bound_bits == r.rate_per_lu_bits);
        CHECK(std::isfinite(r.rate_per_lu_bits));
    }

    cfg.va_bound_printed_form = true;
    const auto printed = bound_rows(cfg, SweepAxis::PowerDbm);
    // Printed variant touches only the reflective variable-amplitude bound.
    CHECK(printed[0].rate_per_lu_bits == base[0].rate_per_lu_bits);
    CHECK(printed[1].rate_per_lu_bits == base[1].rate_per_lu_bits);
    CHECK(printed[2].rate_per_lu_bits == base[2].rate_per_lu_bits);
    CHECK(printed[3].rate_per_lu_bits > base[3].rate_per_lu_bits);
}

TEST_CASE("csv formatting") {
    CHECK(csv_string({}) == "scheme,axis,axis_value,side,rate_per_lu_bits,ci_halfwidth,bound_bits\n");

    SweepRow row;
    row.scheme = "ios_ca";
    row.axis = "power_dbm";
    row.axis_value = 1.23456789;
    row.side = "refractive";
    row.rate_per_lu_bits = 0.000123456789;
    row.ci_halfwidth = 2.5;
    row.bound_bits = std::numeric_limits<double>::quiet_NaN();
    const std::string text = csv_string({row});
    const std::string expect =
        "scheme,axis,axis_value,side,rate_per_lu_bits,ci_halfwidth,bound_bits\n"
        "ios_ca,power_dbm,1.23457,refractive,0.000123457,2.5,\n";
    CHECK(text == expect);
    CHECK(text.find('\r') == std::string::npos);

    row.bound_bits = 4.0;
    CHECK(csv_string({row}).find("2.5,4\n") != std::string::npos);
}

TEST_CASE("csv files round-trip through the writer") {
    const SimConfig cfg = scaled_config();
    const auto rows = run_sweep(cfg, SweepAxis::PowerDbm, {SchemeVariant::NoJamming});
    const std::string path = "test_sweep_roundtrip.csv";
    write_csv_file(rows, path);
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == csv_string(rows));
    std::remove(path.c_str());
}

TEST_CASE("schemes that ignore the surface are invariant in its size") {
    // Same seed, same direct channels: the jam-free and active-jammer paths
    // never touch the surface geometry, so growing it changes nothing.
    SimConfig cfg = scaled_config();
    const EngineConfig ec = cfg.engine_config(cfg.power_dbm);

    RngStream r1(7, {1});
    Scene small = build_scene(cfg.scene, r1);
    SceneParams big_params = cfg.scene;
    big_params.n_elements = 128;
    RngStream r2(7, {1});
    Scene big = build_scene(big_params, r2);

    const SurfaceModel model = default_variable_model();
    for (SchemeVariant v : {SchemeVariant::NoJamming, SchemeVariant::ActiveJammer}) {
        const Scheme scheme{v, v == SchemeVariant::ActiveJammer ? 0.01 : 0.0};
        const RateReport a = estimate_rates(small, scheme, model, ec);
        const RateReport b = estimate_rates(big, scheme, model, ec);
        CHECK(arma::approx_equal(a.per_lu_bits, b.per_lu_bits, "absdiff", 0.0));
    }
}
