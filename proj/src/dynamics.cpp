#include "skac/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace skac {

ProbabilityVector ProbabilityVector::exact(std::vector<Rational> entries) {
    if (entries.empty()) {
        throw std::invalid_argument("ProbabilityVector: empty");
    }
    Rational total;
    for (const auto& e : entries) {
        if (e.sign() < 0) {
            throw std::invalid_argument("ProbabilityVector: negative entry " + e.to_string());
        }
        total += e;
    }
    if (total != Rational(1)) {
        throw std::invalid_argument("ProbabilityVector: entries sum to " + total.to_string() + ", not 1");
    }
    ProbabilityVector out;
    out.exact_ = true;
    out.values_.reserve(entries.size());
    for (const auto& e : entries) out.values_.push_back(e.to_double());
    out.rational_ = std::move(entries);
    return out;
}

ProbabilityVector ProbabilityVector::approximate(std::vector<double> entries) {
    if (entries.empty()) {
        throw std::invalid_argument("ProbabilityVector: empty");
    }
    ProbabilityVector out;
    out.values_ = std::move(entries);
    return out;
}

const std::vector<Rational>& ProbabilityVector::exact_entries() const {
    if (!exact_) {
        throw std::logic_error("ProbabilityVector: floating vector has no exact entries");
    }
    return rational_;
}

double ProbabilityVector::sum() const {
    long double s = 0;
    for (double v : values_) s += v;
    return static_cast<double>(s);
}

double ProbabilityVector::mean() const {
    long double s = 0;
    for (size_t k = 0; k < values_.size(); ++k) s += static_cast<long double>(k) * values_[k];
    return static_cast<double>(s);
}

ProbabilityVector point_mass(long n, long m) {
    if (n < 1 || m < 0 || m > n) {
        throw std::invalid_argument("point_mass: need 0 <= m <= n, n >= 1");
    }
    std::vector<Rational> v(static_cast<size_t>(n + 1));
    v[static_cast<size_t>(m)] = Rational(1);
    return ProbabilityVector::exact(std::move(v));
}

std::vector<Rational> equilibrium_unnormalized(long n, const Rational& eta) {
    if (eta.sign() <= 0) {
        throw std::invalid_argument("equilibrium_unnormalized: eta must be > 0");
    }
    std::vector<Rational> q;
    for (long k = 0; k <= n; ++k) {
        q.push_back(pow(eta, -k) * Rational(binom(n, k)));
    }
    return q;
}

ProbabilityVector equilibrium(long n, const Rational& eta) {
    if (n < 1) {
        throw std::invalid_argument("equilibrium: n must be >= 1");
    }
    if (eta.sign() < 0) {
        throw std::invalid_argument("equilibrium: eta must be >= 0");
    }
    const Rational denom = pow(Rational(1) + eta, n);
    std::vector<Rational> q;
    for (long k = 0; k <= n; ++k) {
        q.push_back(pow(eta, n - k) * Rational(binom(n, k)) / denom);
    }
    return ProbabilityVector::exact(std::move(q));
}

Rational normalization_sum(long n, const Rational& eta) {
    if (eta.sign() <= 0) {
        throw std::invalid_argument("normalization_sum: eta must be > 0");
    }
    return pow((Rational(1) + eta) / eta, n);
}

Rational average_coverage(const ModelParams& params) {
    const auto q = equilibrium(params.n(), params.eta());
    Rational mean;
    const auto& e = q.exact_entries();
    for (size_t k = 0; k < e.size(); ++k) {
        mean += Rational(static_cast<long>(k)) * e[k];
    }
    return mean;
}

std::vector<Rational> solve_rational_system(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const size_t m = b.size();
    if (a.size() != m) {
        throw std::invalid_argument("solve_rational_system: dimension mismatch");
    }
    for (const auto& row : a) {
        if (row.size() != m) {
            throw std::invalid_argument("solve_rational_system: matrix is not square");
        }
    }
    for (size_t col = 0; col < m; ++col) {
        size_t pivot = col;
        while (pivot < m && a[pivot][col].is_zero()) ++pivot;
        if (pivot == m) {
            throw std::domain_error("solve_rational_system: singular matrix");
        }
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            std::swap(b[pivot], b[col]);
        }
        for (size_t r = col + 1; r < m; ++r) {
            if (a[r][col].is_zero()) continue;
            const Rational f = a[r][col] / a[col][col];
            for (size_t j = col; j < m; ++j) {
                a[r][j] -= f * a[col][j];
            }
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(m);
    for (size_t i = m; i-- > 0;) {
        Rational acc = b[i];
        for (size_t j = i + 1; j < m; ++j) acc -= a[i][j] * x[j];
        x[i] = acc / a[i][i];
    }
    return x;
}

ExpansionCoefficients expansion_coefficients(const SpectralDecomposition& decomp, std::span<const Rational> q0) {
    const long m = decomp.size();
    if (static_cast<long>(q0.size()) != m) {
        throw std::invalid_argument("expansion_coefficients: initial vector has length " +
                                    std::to_string(q0.size()) + ", expected " + std::to_string(m));
    }
    std::vector<std::vector<Rational>> u(static_cast<size_t>(m), std::vector<Rational>(static_cast<size_t>(m)));
    for (long l = 0; l < m; ++l) {
        for (long k = 0; k < m; ++k) {
            u[static_cast<size_t>(l)][static_cast<size_t>(k)] = decomp.component(k, l);
        }
    }
    return {solve_rational_system(std::move(u), std::vector<Rational>(q0.begin(), q0.end()))};
}

ExpansionCoefficients expansion_coefficients(const SpectralDecomposition& decomp, const ProbabilityVector& q0) {
    return expansion_coefficients(decomp, std::span<const Rational>(q0.exact_entries()));
}

SpectralSolution::SpectralSolution(const ModelParams& params, const ProbabilityVector& q0)
    : decomp_(decompose_generator(params)), coeffs_(expansion_coefficients(decomp_, q0)) {
    const long m = decomp_.size();
    weights_.assign(static_cast<size_t>(m), std::vector<long double>(static_cast<size_t>(m)));
    Rational bound;
    for (long k = 0; k < m; ++k) {
        const Rational& ck = coeffs_.c[static_cast<size_t>(k)];
        for (long l = 0; l < m; ++l) {
            const Rational w = ck * decomp_.component(k, l);
            weights_[static_cast<size_t>(l)][static_cast<size_t>(k)] = w.to_long_double();
            if (k >= 1) bound += abs(w);
        }
        rates_.push_back(decomp_.eigenvalues[static_cast<size_t>(k)].to_long_double());
    }
    relaxation_constant_ = bound.to_double();
    gap_ = params.total_rate().to_double();
}

ProbabilityVector SpectralSolution::evaluate(double t) const {
    if (std::isnan(t) || t < 0) {
        throw std::invalid_argument("propagate: time must be >= 0");
    }
    const size_t m = rates_.size();
    if (std::isinf(t)) {
        auto lim = limit();
        std::vector<double> out;
        for (const auto& x : lim) out.push_back(x.to_double());
        return ProbabilityVector::approximate(std::move(out));
    }
    std::vector<long double> decay(m);
    for (size_t k = 0; k < m; ++k) {
        decay[k] = std::exp(rates_[k] * static_cast<long double>(t));
    }
    std::vector<double> out(m);
    for (size_t l = 0; l < m; ++l) {
        long double acc = 0;
        for (size_t k = 0; k < m; ++k) acc += weights_[l][k] * decay[k];
        out[l] = static_cast<double>(acc);
    }
    return ProbabilityVector::approximate(std::move(out));
}

std::vector<Rational> SpectralSolution::at_zero() const {
    const long m = decomp_.size();
    std::vector<Rational> out(static_cast<size_t>(m));
    for (long k = 0; k < m; ++k) {
        for (long l = 0; l < m; ++l) {
            out[static_cast<size_t>(l)] += coeffs_.c[static_cast<size_t>(k)] * decomp_.component(k, l);
        }
    }
    return out;
}

std::vector<Rational> SpectralSolution::limit() const {
    std::vector<Rational> out = decomp_.vectors.front();
    for (auto& x : out) x *= coeffs_.c.front();
    return out;
}

double SpectralSolution::relaxation_bound(double t) const { return relaxation_constant_ * std::exp(-gap_ * t); }

ProbabilityVector propagate(const ModelParams& params, const ProbabilityVector& q0, double t) {
    if (std::isnan(t) || t < 0) {
        throw std::invalid_argument("propagate: time must be >= 0");
    }
    if (q0.size() != params.n() + 1) {
        throw std::invalid_argument("propagate: initial vector length must be n + 1");
    }
    if (t == 0.0 && q0.is_exact()) {
        return q0;
    }
    SpectralSolution solution(params, q0);
    if (std::isinf(t)) {
        return ProbabilityVector::exact(solution.limit());
    }
    return solution.evaluate(t);
}

ProbabilityVector rk4_oracle(const ModelParams& params, const ProbabilityVector& q0, double t, double step) {
    if (!(step > 0)) {
        throw std::invalid_argument("rk4_oracle: step must be > 0");
    }
    if (std::isnan(t) || t < 0 || std::isinf(t)) {
        throw std::invalid_argument("rk4_oracle: time must be finite and >= 0");
    }
    if (q0.size() != params.n() + 1) {
        throw std::invalid_argument("rk4_oracle: initial vector length must be n + 1");
    }
    const auto gen = build_generator(params);
    const size_t m = static_cast<size_t>(gen.order());
    std::vector<double> d(m), lo(m - 1), hi(m - 1);
    for (size_t i = 0; i < m; ++i) d[i] = gen.diag()[i].to_double();
    for (size_t i = 0; i + 1 < m; ++i) {
        lo[i] = gen.sub()[i].to_double();
        hi[i] = gen.super()[i].to_double();
    }
    auto rhs = [&](const std::vector<double>& q, std::vector<double>& out) {
        for (size_t i = 0; i < m; ++i) {
            double acc = d[i] * q[i];
            if (i > 0) acc += lo[i - 1] * q[i - 1];
            if (i + 1 < m) acc += hi[i] * q[i + 1];
            out[i] = acc;
        }
    };

    std::vector<double> q = q0.values();
    if (t == 0.0) {
        return ProbabilityVector::approximate(std::move(q));
    }
    const auto steps = static_cast<long>(std::ceil(t / step - 1e-9));
    const double h = t / static_cast<double>(steps);
    std::vector<double> k1(m), k2(m), k3(m), k4(m), tmp(m);
    for (long s = 0; s < steps; ++s) {
        rhs(q, k1);
        for (size_t i = 0; i < m; ++i) tmp[i] = q[i] + 0.5 * h * k1[i];
        rhs(tmp, k2);
        for (size_t i = 0; i < m; ++i) tmp[i] = q[i] + 0.5 * h * k2[i];
        rhs(tmp, k3);
        for (size_t i = 0; i < m; ++i) tmp[i] = q[i] + h * k3[i];
        rhs(tmp, k4);
        for (size_t i = 0; i < m; ++i) q[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return ProbabilityVector::approximate(std::move(q));
}

}  // namespace skac
