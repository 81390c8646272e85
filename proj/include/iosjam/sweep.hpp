// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "iosjam/analysis.hpp"
#include "iosjam/config.hpp"
#include "iosjam/engine.hpp"

namespace iosjam {

enum class SweepAxis { PowerDbm, Elements, Antennas, AntennasElements16x, Users };

// One CSV record. Rates are per-side sums divided by the TOTAL user count (the
// per-LU share of each side's sum rate); bound_bits is NaN where no closed form
// applies (written as an empty cell).
struct SweepRow {
    std::string scheme;
    std::string axis;
    double axis_value = 0.0;
    std::string side;  // refractive | reflective
    double rate_per_lu_bits = 0.0;
    double ci_halfwidth = 0.0;
    double bound_bits = 0.0;
};

std::string axis_label(SweepAxis axis);

// "fig2".."fig6" preset names -> axis (power, elements, antennas, antennas with
// n_elements = 16 * n_antennas, users).
SweepAxis preset_axis(const std::string& name);

std::vector<SchemeVariant> all_scheme_variants();

std::string scheme_label(SchemeVariant variant);

// Big per-point result bundle for callers that need more than CSV rows.
struct SweepPoint {
    double axis_value = 0.0;
    Scene scene;
    double per_lu_dbm = 0.0;
    std::vector<SchemeVariant> variants;
    std::vector<RateReport> reports;  // parallel to variants
    SideBounds ca_bounds;
    SideBounds va_bounds;
};

// Runs every grid point of the axis for the requested Monte Carlo schemes.
// Closed-form bound rows (schemes ios_ca_bound / ios_va_bound) are attached
// whenever the matching Monte Carlo scheme is requested, and bound_bits is
// filled on the ios_ca / ios_va rows themselves. Deterministic for a given
// (config, seed) at any thread count.
std::vector<SweepRow> run_sweep(const SimConfig& cfg, SweepAxis axis,
                                const std::vector<SchemeVariant>& variants);

// Same computation, full reports (used by the verification suites).
std::vector<SweepPoint> run_sweep_points(const SimConfig& cfg, SweepAxis axis,
                                         const std::vector<SchemeVariant>& variants);

std::vector<SweepRow> rows_from_points(const SimConfig& cfg, SweepAxis axis,
                                       const std::vector<SweepPoint>& points);

// Closed-form bound rows only (no Monte Carlo).
std::vector<SweepRow> bound_rows(const SimConfig& cfg, SweepAxis axis);

// Header `scheme,axis,axis_value,side,rate_per_lu_bits,ci_halfwidth,bound_bits`;
// floats with 6 significant digits; LF line endings.
void emit_csv(const std::vector<SweepRow>& rows, std::ostream& os);

void write_csv_file(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace iosjam
