// SPDX-License-Identifier: Apache-2.0
#include "iosjam/surface.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace iosjam {

namespace {
constexpr double energy_tolerance = 0.02;
constexpr double probability_tolerance = 1e-12;
constexpr double root_half = 0.70710678118654752440;
}  // namespace

SurfaceModel make_model(AmplitudeKind kind, std::vector<SurfaceLevel> levels) {
    if (levels.empty()) throw std::invalid_argument("make_model: empty level table");
    if ((levels.size() & (levels.size() - 1)) != 0)
        throw std::invalid_argument("make_model: level count must be a power of two");

    double p_sum = 0.0;
    for (const auto& lvl : levels) {
        if (lvl.p < 0.0) throw std::invalid_argument("make_model: negative probability");
        if (lvl.xi_t < 0.0 || lvl.xi_t > 1.0 || lvl.xi_r < 0.0 || lvl.xi_r > 1.0)
            throw std::invalid_argument("make_model: amplitude outside [0, 1]");
        const double energy = lvl.xi_t * lvl.xi_t + lvl.xi_r * lvl.xi_r;
        if (std::abs(energy - 1.0) > energy_tolerance)
            throw std::invalid_argument("make_model: level violates energy conservation");
        if (kind == AmplitudeKind::Constant &&
            (std::abs(lvl.xi_t - root_half) > 1e-12 || std::abs(lvl.xi_r - root_half) > 1e-12))
            throw std::invalid_argument("make_model: constant-amplitude level must use sqrt(1/2)");
        p_sum += lvl.p;
    }
    if (std::abs(p_sum - 1.0) > probability_tolerance)
        throw std::invalid_argument("make_model: probabilities must sum to 1");

    SurfaceModel m;
    m.kind = kind;
    m.bits = 0;
    for (std::size_t n = levels.size(); n > 1; n >>= 1) ++m.bits;
    m.levels = std::move(levels);
    return m;
}

CoefficientDraw sample_coefficients(const SurfaceModel& model, std::size_t n_elements,
                                    RngStream& rng) {
    if (n_elements == 0) throw std::invalid_argument("sample_coefficients: n_elements must be >= 1");

    std::vector<std::complex<double>> refr(model.levels.size());
    std::vector<std::complex<double>> refl(model.levels.size());
    std::vector<double> cdf(model.levels.size());
    double acc = 0.0;
    for (std::size_t m = 0; m < model.levels.size(); ++m) {
        const auto& lvl = model.levels[m];
        refr[m] = std::polar(lvl.xi_t, lvl.theta_t);
        refl[m] = std::polar(lvl.xi_r, lvl.theta_r);
        acc += lvl.p;
        cdf[m] = acc;
    }
    cdf.back() = 1.0;

    CoefficientDraw draw;
    draw.refracted.set_size(n_elements);
    draw.reflected.set_size(n_elements);
    for (std::size_t s = 0; s < n_elements; ++s) {
        const double u = rng.uniform();
        std::size_t m = 0;
        while (cdf[m] <= u) ++m;
        draw.refracted(s) = refr[m];
        draw.reflected(s) = refl[m];
    }
    return draw;
}

double mu(const SurfaceModel& model) {
    double out = 0.0;
    for (const auto& lvl : model.levels) out += lvl.p * lvl.xi_t * lvl.xi_t;
    return out;
}

SurfaceModel default_variable_model() {
    const double pi = std::numbers::pi;
    return make_model(AmplitudeKind::Variable,
                      {{5.0 * pi / 3.0, 0.78, pi / 9.0, 0.62, 0.25},
                       {2.0 * pi / 3.0, 0.82, 7.0 * pi / 6.0, 0.57, 0.75}});
}

SurfaceModel constant_amplitude_variant(const SurfaceModel& model) {
    std::vector<SurfaceLevel> levels = model.levels;
    for (auto& lvl : levels) {
        lvl.xi_t = root_half;
        lvl.xi_r = root_half;
    }
    return make_model(AmplitudeKind::Constant, std::move(levels));
}

SurfaceModel one_bit_reflector_model() {
    return make_model(AmplitudeKind::Variable,
                      {{0.0, 0.0, 0.0, 1.0, 0.5}, {0.0, 0.0, std::numbers::pi, 1.0, 0.5}});
}

}  // namespace iosjam
