// SPDX-License-Identifier: Apache-2.0
#include "iosjam/engine.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace iosjam {

namespace {

// Pin BLAS-internal threading once so block-level parallelism composes
// deterministically with it; user-provided values are respected.
const bool blas_pinned = [] {
    setenv("OPENBLAS_NUM_THREADS", "1", 0);
    setenv("OMP_NUM_THREADS", "1", 0);
    return true;
}();

struct BlockTotals {
    arma::vec desired;       // K, summed over slots
    arma::vec interference;  // K
    std::size_t resamples = 0;
};

// Neumaier-compensated accumulator; the reduction always walks blocks in index
// order, so sums are independent of the worker count.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

const SurfaceModel& scheme_model(const Scheme& scheme, const SurfaceModel& configured,
                                 SurfaceModel& storage) {
    switch (scheme.variant) {
        case SchemeVariant::IosConstantAmp:
            storage = constant_amplitude_variant(configured);
            return storage;
        case SchemeVariant::IosVariableAmp:
            return configured;
        case SchemeVariant::RisOneBit:
            storage = one_bit_reflector_model();
            return storage;
        default:
            return configured;  // unused by the block loop
    }
}

}  // namespace

arma::cx_mat jammed_channel(const arma::cx_mat& g, const arma::cx_mat& h_i,
                            const arma::cx_vec& coeff) {
    if (g.n_rows != h_i.n_rows || g.n_rows != coeff.n_elem)
        throw std::invalid_argument("jammed_channel: dimension mismatch");
    return g.t() * (h_i.each_col() % coeff);
}

arma::cx_mat aca_channel(const arma::cx_mat& h_dt, const arma::cx_mat& h_pt) {
    if (h_dt.n_rows != h_pt.n_rows || h_dt.n_cols != h_pt.n_cols)
        throw std::invalid_argument("aca_channel: dimension mismatch");
    return h_dt - h_pt;
}

std::pair<double, double> slot_signal_terms(const arma::cx_vec& h_d_k, const arma::cx_vec& h_jam_k,
                                            const Precoder& pre, std::size_t k) {
    if (h_d_k.n_elem != pre.w.n_rows || h_jam_k.n_elem != pre.w.n_rows)
        throw std::invalid_argument("slot_signal_terms: dimension mismatch");
    if (k >= pre.w.n_cols) throw std::invalid_argument("slot_signal_terms: LU index out of range");

    const arma::cx_rowvec amps = (h_d_k + h_jam_k).t() * pre.w;
    double total = 0.0;
    for (const auto& a : amps) total += std::norm(a);
    const double own = std::norm(amps(k));
    return {own, total - own};
}

RngStream block_stream(std::uint64_t seed, StreamPurpose purpose, std::size_t block,
                       std::size_t attempt) {
    return RngStream(seed, {static_cast<std::uint64_t>(purpose), block, attempt});
}

RateReport estimate_rates(const Scene& scene, const Scheme& scheme, const SurfaceModel& model,
                          const EngineConfig& cfg) {
    if (cfg.n_blocks == 0) throw std::invalid_argument("estimate_rates: n_blocks must be >= 1");
    if (cfg.slots_per_block == 0)
        throw std::invalid_argument("estimate_rates: slots_per_block must be >= 1");
    if (!(cfg.total_power_w > 0.0))
        throw std::invalid_argument("estimate_rates: total_power_w must be > 0");
    if (cfg.noise_w < 0.0) throw std::invalid_argument("estimate_rates: negative noise");
    const bool active = scheme.variant == SchemeVariant::ActiveJammer;
    if (active != (scheme.jammer_power_w > 0.0))
        throw std::invalid_argument("estimate_rates: jammer_power_w > 0 iff ActiveJammer");

    const std::size_t k = scene.k_total();
    const std::size_t k_t = scene.k_refractive;
    const std::size_t slots = cfg.slots_per_block;
    const bool surface = scheme.variant == SchemeVariant::IosConstantAmp ||
                         scheme.variant == SchemeVariant::IosVariableAmp ||
                         scheme.variant == SchemeVariant::RisOneBit;

    SurfaceModel storage;
    const SurfaceModel& used = scheme_model(scheme, model, storage);
    const LargeScale gains = large_scale_gains(scene, cfg.laws);
    const arma::cx_mat los = surface ? los_phase_matrix(scene) : arma::cx_mat();

    std::vector<BlockTotals> totals(cfg.n_blocks);
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::atomic<bool> abort{false};

    auto worker = [&]() {
        try {
            for (;;) {
                const std::size_t b = next.fetch_add(1);
                if (b >= cfg.n_blocks || abort.load()) break;

                BlockTotals t;
                t.desired.zeros(k);
                t.interference.zeros(k);

                std::size_t attempt = 0;
                arma::cx_mat h_d(scene.n_antennas(), k);
                Precoder pre;
                for (;;) {
                    auto direct = block_stream(cfg.seed, StreamPurpose::DirectChannel, b, attempt);
                    for (std::size_t u = 0; u < k; ++u)
                        h_d.col(u) = sample_far_field(scene.n_antennas(), gains.ap_lu(u), direct);
                    try {
                        pre = zf_precoder(h_d, cfg.total_power_w, cfg.condition_cap);
                        break;
                    } catch (const IllConditionedChannel&) {
                        ++t.resamples;
                        if (++attempt > cfg.max_resamples)
                            throw std::runtime_error("estimate_rates: resample cap exceeded");
                    }
                }

                if (!surface) {
                    // Jam-free terms are slot-invariant; weight one evaluation.
                    const arma::cx_vec none(scene.n_antennas(), arma::fill::zeros);
                    for (std::size_t u = 0; u < k; ++u) {
                        const auto [d, i] = slot_signal_terms(h_d.col(u), none, pre, u);
                        t.desired(u) = static_cast<double>(slots) * d;
                        t.interference(u) = static_cast<double>(slots) * i;
                    }
                    if (active) {
                        auto aj = block_stream(cfg.seed, StreamPurpose::JammerFading, b);
                        for (std::size_t u = 0; u < k; ++u)
                            t.interference(u) += static_cast<double>(slots) * scheme.jammer_power_w *
                                                 gains.surface_lu(u) * std::norm(aj.cnormal());
                    }
                } else {
                    auto refr = block_stream(cfg.seed, StreamPurpose::RefractiveChannel, b, attempt);
                    auto refl = block_stream(cfg.seed, StreamPurpose::ReflectiveChannel, b, attempt);
                    auto apsf = block_stream(cfg.seed, StreamPurpose::ApSurfaceChannel, b, attempt);
                    arma::cx_mat h_i_t(scene.n_elements(), k_t);
                    for (std::size_t u = 0; u < k_t; ++u)
                        h_i_t.col(u) = sample_far_field(scene.n_elements(), gains.surface_lu(u), refr);
                    arma::cx_mat h_i_r(scene.n_elements(), scene.k_reflective);
                    for (std::size_t u = 0; u < scene.k_reflective; ++u)
                        h_i_r.col(u) =
                            sample_far_field(scene.n_elements(), gains.surface_lu(k_t + u), refl);
                    const arma::cx_mat g = sample_g(scene, los, cfg.rician, gains.ap_surface, apsf);

                    auto coeff = block_stream(cfg.seed, StreamPurpose::SurfaceCoefficients, b);
                    for (std::size_t slot = 0; slot < slots; ++slot) {
                        const CoefficientDraw draw =
                            sample_coefficients(used, scene.n_elements(), coeff);
                        const arma::cx_mat jam_t = jammed_channel(g, h_i_t, draw.refracted);
                        const arma::cx_mat jam_r = jammed_channel(g, h_i_r, draw.reflected);
                        for (std::size_t u = 0; u < k; ++u) {
                            const auto [d, i] = slot_signal_terms(
                                h_d.col(u), u < k_t ? jam_t.col(u) : jam_r.col(u - k_t), pre, u);
                            t.desired(u) += d;
                            t.interference(u) += i;
                        }
                    }
                }
                totals[b] = std::move(t);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            abort.store(true);
        }
    };

    const unsigned n_workers =
        std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.n_blocks)));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    // Helper evaluating the expectation-ratio estimator on a block range.
    const auto rates_over = [&](std::size_t begin, std::size_t end) {
        arma::vec bits(k);
        const double n_samples = static_cast<double>((end - begin) * slots);
        for (std::size_t u = 0; u < k; ++u) {
            CompensatedSum des, inter;
            for (std::size_t b = begin; b < end; ++b) {
                des.add(totals[b].desired(u));
                inter.add(totals[b].interference(u));
            }
            const double sinr = (des.value() / n_samples) / (inter.value() / n_samples + cfg.noise_w);
            bits(u) = std::log2(1.0 + sinr);
        }
        return bits;
    };

    RateReport report;
    report.n_blocks = cfg.n_blocks;
    for (const auto& t : totals) report.n_resampled += t.resamples;
    report.per_lu_bits = rates_over(0, cfg.n_blocks);
    report.sum_refractive_bits = arma::sum(report.per_lu_bits.head(k_t));
    report.sum_reflective_bits = arma::sum(report.per_lu_bits.tail(k - k_t));
    report.sum_total_bits = report.sum_refractive_bits + report.sum_reflective_bits;

    const std::size_t n_batches = std::min(cfg.batches, cfg.n_blocks);
    if (n_batches >= 2) {
        arma::vec bt(n_batches), br(n_batches), btot(n_batches);
        for (std::size_t j = 0; j < n_batches; ++j) {
            const std::size_t begin = j * cfg.n_blocks / n_batches;
            const std::size_t end = (j + 1) * cfg.n_blocks / n_batches;
            const arma::vec bits = rates_over(begin, end);
            bt(j) = arma::sum(bits.head(k_t));
            br(j) = arma::sum(bits.tail(k - k_t));
            btot(j) = bt(j) + br(j);
        }
        const double scale = 1.96 / std::sqrt(static_cast<double>(n_batches));
        report.ci_refractive = scale * arma::stddev(bt);
        report.ci_reflective = scale * arma::stddev(br);
        report.ci_total = scale * arma::stddev(btot);
    }
    return report;
}

}  // namespace iosjam
