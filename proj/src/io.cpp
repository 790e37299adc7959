#include "skac/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace skac {

json to_json(std::span<const Rational> values) {
    json out = json::array();
    for (const auto& v : values) out.push_back(v.to_fraction_string());
    return out;
}

std::vector<Rational> rationals_from_json(const json& j) {
    if (!j.is_array()) {
        throw std::invalid_argument("expected a JSON array of rationals");
    }
    std::vector<Rational> out;
    for (const auto& e : j) {
        if (!e.is_string()) {
            throw std::invalid_argument("rationals must be encoded as \"num/den\" strings");
        }
        out.push_back(Rational::parse(e.get<std::string>()));
    }
    return out;
}

json to_json(const TridiagonalMatrix& t) {
    return {{"order", t.order()}, {"diag", to_json(t.diag())}, {"sub", to_json(t.sub())}, {"super", to_json(t.super())}};
}

TridiagonalMatrix tridiagonal_from_json(const json& j) {
    TridiagonalMatrix t(rationals_from_json(j.at("diag")), rationals_from_json(j.at("sub")),
                        rationals_from_json(j.at("super")));
    if (j.contains("order") && j.at("order").get<long>() != t.order()) {
        throw std::invalid_argument("tridiagonal_from_json: order does not match diag length");
    }
    return t;
}

json to_json(const SpectralDecomposition& d) {
    json vectors = json::array();
    for (const auto& v : d.vectors) vectors.push_back(to_json(v));
    return {{"n", d.params.n()},
            {"alpha", d.params.alpha().to_fraction_string()},
            {"beta", d.params.beta().to_fraction_string()},
            {"eigenvalues", to_json(d.eigenvalues)},
            {"vectors", vectors},
            {"source", to_string(d.source)}};
}

SpectralDecomposition decomposition_from_json(const json& j) {
    ModelParams params(j.at("n").get<long>(), Rational::parse(j.at("alpha").get<std::string>()),
                       Rational::parse(j.at("beta").get<std::string>()));
    const auto source_name = j.at("source").get<std::string>();
    SpectralSource source;
    if (source_name == "closed-form") {
        source = SpectralSource::ClosedForm;
    } else if (source_name == "oracle") {
        source = SpectralSource::Oracle;
    } else {
        throw std::invalid_argument("decomposition_from_json: unknown source '" + source_name + "'");
    }
    SpectralDecomposition d{params, rationals_from_json(j.at("eigenvalues")), {}, source};
    for (const auto& v : j.at("vectors")) d.vectors.push_back(rationals_from_json(v));
    const auto m = static_cast<size_t>(params.n() + 1);
    if (d.eigenvalues.size() != m || d.vectors.size() != m ||
        std::any_of(d.vectors.begin(), d.vectors.end(), [m](const auto& v) { return v.size() != m; })) {
        throw std::invalid_argument("decomposition_from_json: sizes do not match n + 1");
    }
    return d;
}

json to_json_float(const SpectralDecomposition& d) {
    auto doubles = [](const std::vector<Rational>& v) {
        json out = json::array();
        for (const auto& x : v) out.push_back(x.to_double());
        return out;
    };
    json vectors = json::array();
    for (const auto& v : d.vectors) vectors.push_back(doubles(v));
    return {{"n", d.params.n()},
            {"alpha", d.params.alpha().to_double()},
            {"beta", d.params.beta().to_double()},
            {"eigenvalues", doubles(d.eigenvalues)},
            {"vectors", vectors},
            {"source", to_string(d.source)}};
}

json to_json(const EigvecReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        entries.push_back({{"eigenvalue", e.eigenvalue.to_fraction_string()},
                           {"right", e.right},
                           {"left", e.left},
                           {"right_residual_l1", e.right_residual_l1.to_fraction_string()},
                           {"left_residual_l1", e.left_residual_l1.to_fraction_string()}});
    }
    return {{"entries", entries},
            {"right_eigenvector", report.is_right_eigenvector()},
            {"left_eigenvector", report.is_left_eigenvector()}};
}

std::string format_double(double x, int digits) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    return fmt::format("{:.{}g}", x, digits);
}

void write_time_series_csv(std::ostream& os, const ModelParams& params, std::span<const TimeSeriesRow> rows,
                           int digits) {
    const long n = params.n();
    const bool any_exact = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.q.is_exact(); });
    const bool all_exact = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.q.is_exact(); });
    const bool with_delta = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.delta.has_value(); });
    const char* precision = all_exact ? "exact" : (any_exact ? "mixed" : "float");

    os << "# n=" << n << " alpha=" << params.alpha() << " beta=" << params.beta() << " precision=" << precision
       << " digits=" << digits << "\n";
    os << "t";
    for (long k = 0; k <= n; ++k) os << ",Q" << k;
    os << ",sum,coverage";
    if (with_delta) {
        for (long k = 0; k <= n; ++k) os << ",dQ" << k;
        os << ",max_abs_delta";
    }
    os << "\n";

    for (const auto& row : rows) {
        os << format_double(row.t, digits);
        if (row.q.is_exact()) {
            Rational sum;
            Rational coverage;
            const auto& e = row.q.exact_entries();
            for (size_t k = 0; k < e.size(); ++k) {
                os << "," << e[k].to_decimal_string(digits);
                sum += e[k];
                coverage += Rational(static_cast<long>(k)) * e[k];
            }
            os << "," << sum.to_decimal_string(digits) << "," << coverage.to_decimal_string(digits);
        } else {
            for (double v : row.q.values()) os << "," << format_double(v, digits);
            os << "," << format_double(row.q.sum(), digits) << "," << format_double(row.q.mean(), digits);
        }
        if (with_delta && row.delta) {
            double worst = 0.0;
            for (double d : *row.delta) {
                worst = std::max(worst, std::abs(d));
                os << "," << format_double(d, digits);
            }
            os << "," << format_double(worst, digits);
        } else if (with_delta) {
            // no oracle value at this time (e.g. t = inf)
            os << std::string(static_cast<size_t>(n + 2), ',');
        }
        os << "\n";
    }
}

void write_empirical_csv(std::ostream& os, const EmpiricalDistribution& dist) {
    os << "t,k,count,freq,stderr\n";
    for (size_t ti = 0; ti < dist.t_grid().size(); ++ti) {
        for (long k = 0; k <= dist.n(); ++k) {
            os << format_double(dist.t_grid()[ti]) << "," << k << "," << dist.count(ti, k) << ","
               << format_double(dist.frequency(ti, k)) << "," << format_double(dist.standard_error(ti, k)) << "\n";
        }
    }
}

json empirical_summary_json(const SimConfig& config, const EmpiricalDistribution& dist) {
    const auto coverage = coverage_from(dist);
    json times = json::array();
    for (size_t ti = 0; ti < dist.t_grid().size(); ++ti) {
        json counts = json::array();
        json freqs = json::array();
        json errs = json::array();
        for (long k = 0; k <= dist.n(); ++k) {
            counts.push_back(dist.count(ti, k));
            freqs.push_back(dist.frequency(ti, k));
            errs.push_back(dist.standard_error(ti, k));
        }
        times.push_back({{"t", dist.t_grid()[ti]},
                         {"counts", counts},
                         {"freq", freqs},
                         {"stderr", errs},
                         {"coverage_mean", coverage[ti].mean},
                         {"coverage_stderr", coverage[ti].standard_error}});
    }
    return {{"n", config.params.n()},
            {"alpha", config.params.alpha().to_fraction_string()},
            {"beta", config.params.beta().to_fraction_string()},
            {"trials", config.trials},
            {"seed", config.seed},
            {"mode", config.mode == StateMode::Count ? "count" : "per-cell"},
            {"times", times}};
}

}  // namespace skac
