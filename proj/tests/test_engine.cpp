// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "iosjam/engine.hpp"

using namespace iosjam;
using Catch::Approx;

namespace {

Scene test_scene(std::size_t n_antennas, std::size_t n_elements, std::size_t k_t, std::size_t k_r,
                 std::uint64_t seed = 5) {
    SceneParams p;
    p.n_antennas = n_antennas;
    p.n_elements = n_elements;
    p.k_refractive = k_t;
    p.k_reflective = k_r;
    RngStream rng(seed, {1});
    return build_scene(p, rng);
}

EngineConfig test_config(std::size_t blocks, double total_power_w) {
    EngineConfig ec;
    ec.n_blocks = blocks;
    ec.slots_per_block = 3;
    ec.batches = 4;
    ec.threads = 1;
    ec.seed = 97;
    ec.total_power_w = total_power_w;
    ec.noise_w = 1e-17;
    return ec;
}

arma::cx_mat random_cx(std::size_t r, std::size_t c, std::uint64_t seed) {
    RngStream rng(seed, {3});
    arma::cx_mat m(r, c);
    rng.fill_cnormal(m);
    return m;
}

bool reports_equal(const RateReport& a, const RateReport& b) {
    return arma::approx_equal(a.per_lu_bits, b.per_lu_bits, "absdiff", 0.0) &&
           a.sum_total_bits == b.sum_total_bits && a.ci_total == b.ci_total &&
           a.ci_refractive == b.ci_refractive && a.ci_reflective == b.ci_reflective;
}

}  // namespace

TEST_CASE("jammed channel equals the dense cascade product") {
    const arma::cx_mat g = random_cx(8, 4, 11);
    const arma::cx_mat h_i = random_cx(8, 3, 12);
    arma::cx_vec coeff(8);
    {
        RngStream rng(13, {3});
        rng.fill_cnormal(coeff);
    }
    const arma::cx_mat fast = jammed_channel(g, h_i, coeff);
    const arma::cx_mat ref = g.t() * arma::diagmat(coeff) * h_i;
    REQUIRE(fast.n_rows == 4);
    REQUIRE(fast.n_cols == 3);
    CHECK(arma::abs(fast - ref).max() < 1e-13);

    // Linear in the coefficients; zero coefficients kill the cascade.
    arma::cx_vec zero(8, arma::fill::zeros);
    CHECK(arma::abs(jammed_channel(g, h_i, zero)).max() == 0.0);
    arma::cx_vec a(8), b(8);
    {
        RngStream rng(14, {3});
        rng.fill_cnormal(a);
        rng.fill_cnormal(b);
    }
    const arma::cx_mat sum = jammed_channel(g, h_i, a + b);
    const arma::cx_mat parts = jammed_channel(g, h_i, a) + jammed_channel(g, h_i, b);
    CHECK(arma::abs(sum - parts).max() < 1e-13);

    CHECK_THROWS_AS(jammed_channel(random_cx(7, 4, 1), h_i, coeff), std::invalid_argument);
    CHECK_THROWS_AS(jammed_channel(g, h_i, arma::cx_vec(5)), std::invalid_argument);
}

TEST_CASE("channel aging is the difference against the pilot block") {
    const arma::cx_mat now = random_cx(6, 4, 21);
    const arma::cx_mat pilot = random_cx(6, 4, 22);
    const arma::cx_mat aged = aca_channel(now, pilot);
    CHECK(arma::abs(aged - (now - pilot)).max() == 0.0);
    CHECK(arma::abs(aca_channel(now, now)).max() == 0.0);
    CHECK_THROWS_AS(aca_channel(now, random_cx(6, 3, 23)), std::invalid_argument);
}

TEST_CASE("slot terms match a brute-force expansion") {
    const arma::cx_mat h_d = random_cx(4, 2, 31);
    const Precoder pre = zf_precoder(h_d, 0.3);
    const arma::cx_vec jam = 0.1 * random_cx(4, 1, 32).col(0);

    for (std::size_t k = 0; k < 2; ++k) {
        const auto [des, intf] = slot_signal_terms(h_d.col(k), jam, pre, k);
        const arma::cx_vec recv = h_d.col(k) + jam;
        double des_ref = std::norm(arma::cdot(recv, pre.w.col(k)));
        double intf_ref = 0.0;
        for (std::size_t u = 0; u < 2; ++u)
            if (u != k) intf_ref += std::norm(arma::cdot(recv, pre.w.col(u)));
        CHECK(des == Approx(des_ref).epsilon(1e-12));
        CHECK(intf == Approx(intf_ref).epsilon(1e-10));
    }
    CHECK_THROWS_AS(slot_signal_terms(h_d.col(0), jam, pre, 2), std::invalid_argument);
}

TEST_CASE("zero-forcing leaves no interference without jamming") {
    const arma::cx_mat h_d = random_cx(12, 5, 41);
    const Precoder pre = zf_precoder(h_d, 1.0);
    const arma::cx_vec none(12, arma::fill::zeros);
    for (std::size_t k = 0; k < 5; ++k) {
        const auto [des, intf] = slot_signal_terms(h_d.col(k), none, pre, k);
        CHECK(intf < 1e-12 * des);
    }
    // A single user has no interferers at all.
    const arma::cx_mat solo = random_cx(12, 1, 42);
    const Precoder ps = zf_precoder(solo, 1.0);
    CHECK(slot_signal_terms(solo.col(0), none, ps, 0).second == 0.0);
}

TEST_CASE("surface schemes with zero amplitude reproduce the jam-free rates") {
    const Scene scene = test_scene(8, 32, 2, 2);
    const EngineConfig ec = test_config(8, 0.04);

    SurfaceModel zero;  // bypasses make_model: deliberately non-physical
    zero.kind = AmplitudeKind::Variable;
    zero.levels = {{0.0, 0.0, 0.0, 0.0, 1.0}};
    zero.bits = 0;

    const RateReport off = estimate_rates(scene, {SchemeVariant::IosVariableAmp, 0.0}, zero, ec);
    const RateReport nj =
        estimate_rates(scene, {SchemeVariant::NoJamming, 0.0}, default_variable_model(), ec);
    REQUIRE(off.per_lu_bits.n_elem == 4);
    for (std::size_t u = 0; u < 4; ++u)
        CHECK(off.per_lu_bits(u) == Approx(nj.per_lu_bits(u)).epsilon(1e-12));
}

TEST_CASE("jamming strictly reduces the sum rate") {
    const Scene scene = test_scene(16, 512, 2, 2);
    const EngineConfig ec = test_config(24, 0.4);
    const SurfaceModel model = default_variable_model();

    const RateReport nj = estimate_rates(scene, {SchemeVariant::NoJamming, 0.0}, model, ec);
    const RateReport ca = estimate_rates(scene, {SchemeVariant::IosConstantAmp, 0.0}, model, ec);
    const RateReport va = estimate_rates(scene, {SchemeVariant::IosVariableAmp, 0.0}, model, ec);
    CHECK(ca.sum_total_bits < nj.sum_total_bits - 1.0);
    CHECK(va.sum_total_bits < nj.sum_total_bits - 1.0);
    CHECK(nj.per_lu_bits.min() > 0.0);
    CHECK(ca.n_blocks == 24);
}

TEST_CASE("one-bit reflector only degrades the reflective side") {
    const Scene scene = test_scene(16, 512, 2, 2);
    const EngineConfig ec = test_config(24, 0.4);
    const SurfaceModel model = default_variable_model();

    const RateReport nj = estimate_rates(scene, {SchemeVariant::NoJamming, 0.0}, model, ec);
    const RateReport ris = estimate_rates(scene, {SchemeVariant::RisOneBit, 0.0}, model, ec);
    // Nothing passes through: refractive LUs keep their jam-free rates.
    for (std::size_t u = 0; u < 2; ++u)
        CHECK(ris.per_lu_bits(u) == Approx(nj.per_lu_bits(u)).epsilon(1e-12));
    CHECK(ris.sum_reflective_bits < nj.sum_reflective_bits - 1.0);
}

TEST_CASE("constant-amplitude scheme ignores the configured amplitudes") {
    const Scene scene = test_scene(8, 64, 1, 1);
    const EngineConfig ec = test_config(6, 0.02);
    const RateReport a =
        estimate_rates(scene, {SchemeVariant::IosConstantAmp, 0.0}, default_variable_model(), ec);
    const RateReport b = estimate_rates(scene, {SchemeVariant::IosConstantAmp, 0.0},
                                        constant_amplitude_variant(default_variable_model()), ec);
    CHECK(reports_equal(a, b));
}

TEST_CASE("active jammer rate follows the replayed fading draws") {
    const Scene scene = test_scene(4, 2, 1, 0);
    EngineConfig ec = test_config(6, 0.01);
    ec.batches = 2;
    const SurfaceModel model = default_variable_model();

    const RateReport nj = estimate_rates(scene, {SchemeVariant::NoJamming, 0.0}, model, ec);
    const double p_j = 0.02;
    const RateReport aj = estimate_rates(scene, {SchemeVariant::ActiveJammer, p_j}, model, ec);

    // K = 1: no multiuser interference, so the jam-free SINR isolates the
    // desired power and the jammer terms can be replayed stream-for-stream.
    double m2 = 0.0;
    for (std::size_t b = 0; b < 6; ++b) {
        auto stream = block_stream(ec.seed, StreamPurpose::JammerFading, b);
        m2 += std::norm(stream.cnormal());
    }
    m2 /= 6.0;
    const double gain = large_scale_gains(scene, ec.laws).surface_lu(0);
    const double desired = (std::exp2(nj.per_lu_bits(0)) - 1.0) * ec.noise_w;
    const double predicted = std::log2(1.0 + desired / (p_j * gain * m2 + ec.noise_w));
    CHECK(aj.per_lu_bits(0) == Approx(predicted).epsilon(1e-9));
    CHECK(aj.per_lu_bits(0) < nj.per_lu_bits(0));
}

TEST_CASE("report sums and intervals are consistent") {
    const Scene scene = test_scene(8, 64, 2, 1);
    const EngineConfig ec = test_config(12, 0.03);
    const RateReport r =
        estimate_rates(scene, {SchemeVariant::IosVariableAmp, 0.0}, default_variable_model(), ec);
    CHECK(r.sum_refractive_bits == arma::sum(r.per_lu_bits.head(2)));
    CHECK(r.sum_reflective_bits == arma::sum(r.per_lu_bits.tail(1)));
    CHECK(r.sum_total_bits == r.sum_refractive_bits + r.sum_reflective_bits);
    CHECK(r.ci_total >= 0.0);
    CHECK(r.ci_refractive >= 0.0);
    CHECK(r.n_resampled == 0);
}

TEST_CASE("engine output is byte-identical across worker counts") {
    const Scene scene = test_scene(8, 64, 2, 2);
    EngineConfig ec = test_config(12, 0.03);
    const SurfaceModel model = default_variable_model();
    const RateReport one =
        estimate_rates(scene, {SchemeVariant::IosConstantAmp, 0.0}, model, ec);
    ec.threads = 4;
    const RateReport four =
        estimate_rates(scene, {SchemeVariant::IosConstantAmp, 0.0}, model, ec);
    CHECK(reports_equal(one, four));

    ec.threads = 1;
    const RateReport again =
        estimate_rates(scene, {SchemeVariant::IosConstantAmp, 0.0}, model, ec);
    CHECK(reports_equal(one, again));
}

TEST_CASE("engine configuration validation") {
    const Scene scene = test_scene(8, 16, 1, 1);
    const SurfaceModel model = default_variable_model();
    EngineConfig ec = test_config(4, 0.01);

    EngineConfig bad = ec;
    bad.n_blocks = 0;
    CHECK_THROWS_AS(estimate_rates(scene, {SchemeVariant::NoJamming, 0.0}, model, bad),
                    std::invalid_argument);
    bad = ec;
    bad.slots_per_block = 0;
    CHECK_THROWS_AS(estimate_rates(scene, {SchemeVariant::NoJamming, 0.0}, model, bad),
                    std::invalid_argument);
    bad = ec;
    bad.total_power_w = 0.0;
    CHECK_THROWS_AS(estimate_rates(scene, {SchemeVariant::NoJamming, 0.0}, model, bad),
                    std::invalid_argument);
    bad = ec;
    bad.noise_w = -1.0;
    CHECK_THROWS_AS(estimate_rates(scene, {SchemeVariant::NoJamming, 0.0}, model, bad),
                    std::invalid_argument);

    // Jammer power must accompany exactly the active-jammer scheme.
    CHECK_THROWS_AS(estimate_rates(scene, {SchemeVariant::ActiveJammer, 0.0}, model, ec),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_rates(scene, {SchemeVariant::NoJamming, 0.5}, model, ec),
                    std::invalid_argument);
}

TEST_CASE("resample cap aborts hopeless pilot channels") {
    const Scene scene = test_scene(8, 16, 1, 1);
    EngineConfig ec = test_config(2, 0.01);
    ec.condition_cap = 1.0;  // no draw can satisfy cond <= 1
    ec.max_resamples = 3;
    CHECK_THROWS_AS(
        estimate_rates(scene, {SchemeVariant::NoJamming, 0.0}, default_variable_model(), ec),
        std::runtime_error);
}
