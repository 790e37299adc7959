#pragma once

// Serialization. Exact values travel as "num/den" strings in JSON so a
// round trip is lossless; CSV carries decimal strings.

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skac/dynamics.hpp"
#include "skac/matrices.hpp"
#include "skac/simulator.hpp"
#include "skac/spectral.hpp"

namespace skac {

using json = nlohmann::json;

json to_json(std::span<const Rational> values);
std::vector<Rational> rationals_from_json(const json& j);

/// {order, diag[], sub[], super[]}
json to_json(const TridiagonalMatrix& t);
TridiagonalMatrix tridiagonal_from_json(const json& j);

/// {n, alpha, beta, eigenvalues[], vectors[[...]], source}; vectors[k] is u_k.
json to_json(const SpectralDecomposition& d);
SpectralDecomposition decomposition_from_json(const json& j);

/// Same layout with doubles instead of fraction strings.
json to_json_float(const SpectralDecomposition& d);

json to_json(const EigvecReport& report);

/// One row of an evolve time series. `delta` holds spectral minus oracle
/// values when an oracle column set was requested.
struct TimeSeriesRow {
    double t = 0.0;
    ProbabilityVector q;
    std::optional<std::vector<double>> delta;
};

/// Header `t,Q0,...,Qn,sum,coverage` (plus `dQ0..dQn,max_abs_delta` with an
/// oracle), preceded by one `#` metadata line giving the precision flag
/// (exact, float or mixed) and the digit count.
void write_time_series_csv(std::ostream& os, const ModelParams& params, std::span<const TimeSeriesRow> rows,
                           int digits);

/// `t,k,count,freq,stderr`, one line per (grid time, k).
void write_empirical_csv(std::ostream& os, const EmpiricalDistribution& dist);

/// Config echo, histograms and coverage estimates per grid time.
json empirical_summary_json(const SimConfig& config, const EmpiricalDistribution& dist);

/// Shortest round-trippable decimal for doubles ("inf" for infinity).
std::string format_double(double x, int digits = 17);

}  // namespace skac
