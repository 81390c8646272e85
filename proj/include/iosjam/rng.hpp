// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace iosjam {

// splitmix64 finalizer; used only to turn (seed, path) tuples into engine seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t p : path) s = mix64(s ^ mix64(p));
    return s;
}

// One independent random stream, addressed by (master seed, path). Streams with
// distinct paths never share state, so trials can run in parallel and still
// reproduce byte-identically at any worker count. All draws inside a stream are
// strictly sequential.
class RngStream {
  public:
    RngStream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
        engine_.seed(derive_seed(master, path));
    }

    std::mt19937_64& engine() { return engine_; }

    double normal() { return normal_(engine_); }

    double uniform() { return uniform_(engine_); }  // [0, 1)

    // Circularly-symmetric CN(0, 1): real and imaginary parts N(0, 1/2).
    std::complex<double> cnormal() {
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {re * root_half, im * root_half};
    }

    void fill_cnormal(arma::cx_mat& m) {
        for (auto& v : m) v = cnormal();
    }

    void fill_cnormal(arma::cx_vec& v) {
        for (auto& x : v) x = cnormal();
    }

  private:
    static constexpr double root_half = 0.70710678118654752440;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace iosjam
