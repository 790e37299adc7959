#pragma once

// Equilibrium distribution and time evolution of the occupancy
// probabilities Q(t) under dQ/dt = M Q.
//
// Q(t) = sum_k c_k u_k exp(lambda_k t). The coefficients c and the vectors
// u_k are exact; rounding enters only through exp(lambda_k t), which is
// evaluated once per mode and time.

#include <span>
#include <vector>

#include "skac/matrices.hpp"
#include "skac/rational.hpp"
#include "skac/spectral.hpp"

namespace skac {

/// Distribution over occupancy counts 0..n, either exact (rational) or
/// floating point. Exact vectors are validated on construction.
class ProbabilityVector {
public:
    /// Throws std::invalid_argument unless entries are >= 0 and sum to 1.
    static ProbabilityVector exact(std::vector<Rational> entries);
    /// Floating result of a propagation or integration; not validated.
    static ProbabilityVector approximate(std::vector<double> entries);

    bool is_exact() const { return exact_; }
    long size() const { return static_cast<long>(values_.size()); }
    /// Throws std::logic_error for a floating vector.
    const std::vector<Rational>& exact_entries() const;
    /// Available in both modes (exact entries converted once).
    const std::vector<double>& values() const { return values_; }
    double operator[](long k) const { return values_[static_cast<size_t>(k)]; }

    double sum() const;
    /// sum_k k Q_k
    double mean() const;

private:
    ProbabilityVector() = default;
    bool exact_ = false;
    std::vector<Rational> rational_;
    std::vector<double> values_;
};

/// Point mass at occupancy m.
ProbabilityVector point_mass(long n, long m);

/// Q_k = eta^{-k} C(n, k), i.e. the stationary recursion started from
/// Q_0 = 1. Throws std::invalid_argument unless eta > 0.
std::vector<Rational> equilibrium_unnormalized(long n, const Rational& eta);

/// Q'_k = eta^{n-k} C(n, k) / (1 + eta)^n. eta = 0 gives the point mass at n.
ProbabilityVector equilibrium(long n, const Rational& eta);

/// ((1 + eta) / eta)^n. Throws std::invalid_argument unless eta > 0.
Rational normalization_sum(long n, const Rational& eta);

/// sum_k k Q'_k over the exact equilibrium, computed term by term.
Rational average_coverage(const ModelParams& params);

/// Solves A x = b exactly by Gaussian elimination with nonzero pivoting.
/// `a` is row-major and square. Throws std::domain_error when singular.
std::vector<Rational> solve_rational_system(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

struct ExpansionCoefficients {
    std::vector<Rational> c;
};

/// Solves U c = q0 where U has columns u_k.
ExpansionCoefficients expansion_coefficients(const SpectralDecomposition& decomp, std::span<const Rational> q0);
ExpansionCoefficients expansion_coefficients(const SpectralDecomposition& decomp, const ProbabilityVector& q0);

/// The spectral solution for one initial condition. Mode weights
/// w[l][k] = c_k u_{k,l} are kept exact.
class SpectralSolution {
public:
    SpectralSolution(const ModelParams& params, const ProbabilityVector& q0);

    const SpectralDecomposition& decomposition() const { return decomp_; }
    const ExpansionCoefficients& coefficients() const { return coeffs_; }

    /// Q(t) in floating point. t may be +infinity. Throws for t < 0 or NaN.
    ProbabilityVector evaluate(double t) const;
    /// Exact sum_k c_k u_k, which reproduces Q(0).
    std::vector<Rational> at_zero() const;
    /// Exact c_0 u_0, the t -> infinity limit.
    std::vector<Rational> limit() const;

    /// C exp(-(alpha+beta) t) with C = sum_{k>=1} |c_k| ||u_k||_1, an upper
    /// bound on ||Q(t) - Q(inf)||_1.
    double relaxation_bound(double t) const;

private:
    SpectralDecomposition decomp_;
    ExpansionCoefficients coeffs_;
    std::vector<std::vector<long double>> weights_;  // [l][k]
    std::vector<long double> rates_;                 // lambda_k
    double relaxation_constant_ = 0.0;
    double gap_ = 0.0;
};

/// Q(t) by spectral expansion. t = 0 with an exact q0 returns q0 exactly;
/// t = +infinity returns the exact limit c_0 u_0. Throws for t < 0.
ProbabilityVector propagate(const ModelParams& params, const ProbabilityVector& q0, double t);

/// Classical fixed-step RK4 on dQ/dt = M Q in double precision. The step is
/// shrunk to t / ceil(t / step) so that the last step lands on t.
ProbabilityVector rk4_oracle(const ModelParams& params, const ProbabilityVector& q0, double t, double step);

}  // namespace skac
