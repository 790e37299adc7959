#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "skac/dynamics.hpp"

using namespace skac;

namespace {

std::vector<Rational> R(std::initializer_list<Rational> xs) { return xs; }

constexpr double kInf = std::numeric_limits<double>::infinity();

double sup_diff(const ProbabilityVector& a, const ProbabilityVector& b) {
    double worst = 0.0;
    for (long k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

}  // namespace

TEST_CASE("ProbabilityVector validation") {
    CHECK_NOTHROW(ProbabilityVector::exact(R({Rational(1, 2), Rational(1, 2)})));
    CHECK_THROWS_AS(ProbabilityVector::exact(R({Rational(1, 2), Rational(1, 3)})), std::invalid_argument);
    CHECK_THROWS_AS(ProbabilityVector::exact(R({Rational(3, 2), Rational(-1, 2)})), std::invalid_argument);
    const auto f = ProbabilityVector::approximate({0.25, 0.75});
    CHECK_FALSE(f.is_exact());
    CHECK_THROWS_AS(f.exact_entries(), std::logic_error);
    CHECK(f.mean() == doctest::Approx(0.75));
}

TEST_CASE("unnormalized equilibrium") {
    CHECK(equilibrium_unnormalized(2, 2) == R({1, 1, Rational(1, 4)}));
    CHECK(equilibrium_unnormalized(2, 1) == R({1, 2, 1}));
    CHECK_THROWS_AS(equilibrium_unnormalized(2, 0), std::invalid_argument);
    // stationarity recursion from dQ_k/dt = 0:
    // ((n-k) + k eta) Q_k = (n-k+1) Q_{k-1} + (k+1) eta Q_{k+1}
    for (const Rational& eta : {Rational(1, 3), Rational(2), Rational(7, 5)}) {
        for (long n = 1; n <= 15; ++n) {
            const auto q = equilibrium_unnormalized(n, eta);
            CHECK(q[0] == Rational(1));
            for (long k = 0; k <= n; ++k) {
                const auto uk = static_cast<size_t>(k);
                Rational rhs;
                if (k > 0) rhs += Rational(n - k + 1) * q[uk - 1];
                if (k < n) rhs += Rational(k + 1) * eta * q[uk + 1];
                CHECK((Rational(n - k) + Rational(k) * eta) * q[uk] == rhs);
            }
        }
    }
}

TEST_CASE("normalized equilibrium") {
    CHECK(equilibrium(2, 2).exact_entries() == R({Rational(4, 9), Rational(4, 9), Rational(1, 9)}));
    CHECK(equilibrium(2, 1).exact_entries() == R({Rational(1, 4), Rational(1, 2), Rational(1, 4)}));
    CHECK(equilibrium(3, 0).exact_entries() == R({0, 0, 0, 1}));
    for (const auto& [a, b] : std::vector<std::pair<Rational, Rational>>{{1, 1}, {1, 2}, {3, 5}, {7, 2}, {1, 0}}) {
        for (long n = 1; n <= 25; ++n) {
            const ModelParams p(n, a, b);
            const auto q = equilibrium(n, p.eta());
            for (const auto& x : matvec(build_generator(p), q.exact_entries())) CHECK(x.is_zero());
            const Rational f = p.fill_probability();
            for (long k = 0; k <= n; ++k) {
                CHECK(q.exact_entries()[static_cast<size_t>(k)] ==
                      Rational(binom(n, k)) * pow(f, k) * pow(Rational(1) - f, n - k));
            }
        }
    }
}

TEST_CASE("normalization sum") {
    CHECK(normalization_sum(2, 2) == Rational(9, 4));
    CHECK(normalization_sum(1, 1) == Rational(2));
    for (long n = 1; n <= 10; ++n) {
        Rational direct;
        for (const auto& q : equilibrium_unnormalized(n, Rational(3, 2))) direct += q;
        CHECK(normalization_sum(n, Rational(3, 2)) == direct);
    }
    CHECK_THROWS_AS(normalization_sum(2, 0), std::invalid_argument);
}

TEST_CASE("average coverage") {
    CHECK(average_coverage(ModelParams(10, 1, 2)) == Rational(10, 3));
    CHECK(average_coverage(ModelParams(7, Rational(5, 3), Rational(5, 3))) == Rational(7, 2));
    CHECK(average_coverage(ModelParams(4, 1, 0)) == Rational(4));
    std::mt19937_64 rng(17);
    for (long n = 1; n <= 30; ++n) {
        const ModelParams p(n, oracle::random_positive(rng), oracle::random_positive(rng));
        CHECK(average_coverage(p) == Rational(n) * p.alpha() / (p.alpha() + p.beta()));
    }
}

TEST_CASE("exact linear solver") {
    const auto x = solve_rational_system({R({0, 2}), R({3, 1})}, R({4, 5}));
    CHECK(x == R({1, 2}));
    CHECK_THROWS_AS(solve_rational_system({R({1, 2}), R({2, 4})}, R({1, 1})), std::domain_error);
    CHECK_THROWS_AS(solve_rational_system({R({1, 2})}, R({1, 1})), std::invalid_argument);
}

TEST_CASE("expansion coefficients, worked example") {
    const ModelParams p(2, 1, 2);
    const auto d = decompose_generator(p);
    const auto c = expansion_coefficients(d, point_mass(2, 0));
    CHECK(c.c == R({Rational(1, 9), Rational(-2, 9), Rational(1, 9)}));
    // back-substitution: U c = Q0
    for (long l = 0; l <= 2; ++l) {
        Rational acc;
        for (long k = 0; k <= 2; ++k) acc += d.component(k, l) * c.c[static_cast<size_t>(k)];
        CHECK(acc == (l == 0 ? Rational(1) : Rational(0)));
    }
    const auto ceq = expansion_coefficients(d, equilibrium(2, p.eta()));
    CHECK(ceq.c == R({Rational(1, 9), 0, 0}));
    CHECK_THROWS_AS(expansion_coefficients(d, R({1, 0})), std::invalid_argument);
}

TEST_CASE("c_0 = (1+eta)^-n for any normalized start") {
    std::mt19937_64 rng(23);
    for (long n = 1; n <= 20; ++n) {
        const ModelParams p(n, oracle::random_positive(rng), oracle::random_positive(rng));
        const auto d = decompose_generator(p);
        std::vector<Rational> w;
        Rational total;
        for (long k = 0; k <= n; ++k) {
            w.push_back(oracle::random_positive(rng));
            total += w.back();
        }
        for (auto& x : w) x /= total;
        const auto c = expansion_coefficients(d, ProbabilityVector::exact(w));
        CHECK(c.c.front() == Rational(1) / pow(Rational(1) + p.eta(), n));
    }
}

TEST_CASE("propagate limits") {
    const ModelParams p(2, 1, 2);
    const auto q0 = point_mass(2, 0);
    const auto inf = propagate(p, q0, kInf);
    REQUIRE(inf.is_exact());
    CHECK(inf.exact_entries() == R({Rational(4, 9), Rational(4, 9), Rational(1, 9)}));
    const auto zero = propagate(p, q0, 0.0);
    CHECK(zero.is_exact());
    CHECK(zero.exact_entries() == q0.exact_entries());
    const auto late = propagate(p, q0, 1e9);
    CHECK(late[0] == doctest::Approx(4.0 / 9).epsilon(1e-14));
    CHECK(late[2] == doctest::Approx(1.0 / 9).epsilon(1e-14));
    CHECK_THROWS_AS(propagate(p, q0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(propagate(p, point_mass(3, 0), 1.0), std::invalid_argument);

    SpectralSolution sol(p, q0);
    CHECK(sol.at_zero() == q0.exact_entries());
    const auto small = sol.evaluate(0.0);
    CHECK(small[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("propagate satisfies the rate equation") {
    // centred difference of Q(t) against the rate equation written out by hand
    const long n = 6;
    const ModelParams p(n, Rational(3, 2), Rational(1, 2));
    SpectralSolution sol(p, point_mass(n, 2));
    for (double t : {0.05, 0.3, 1.0}) {
        const double h = 1e-5;
        const auto qp = sol.evaluate(t + h);
        const auto qm = sol.evaluate(t - h);
        const auto rhs = oracle::rate_equation_rhs(n, 1.5, 0.5, sol.evaluate(t).values());
        for (long k = 0; k <= n; ++k) {
            CHECK((qp[k] - qm[k]) / (2 * h) == doctest::Approx(rhs[static_cast<size_t>(k)]).epsilon(1e-6));
        }
    }
}

TEST_CASE("propagate agrees with RK4 and conserves probability") {
    const ModelParams p(12, 1, 2);
    const auto q0 = point_mass(12, 0);
    SpectralSolution sol(p, q0);
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        const auto spectral = sol.evaluate(t);
        const auto rk = rk4_oracle(p, q0, t, 1e-4);
        CHECK(sup_diff(spectral, rk) <= 1e-8);
        CHECK(std::abs(spectral.sum() - 1.0) <= 1e-12);
        CHECK(std::abs(rk.sum() - 1.0) <= 1e-10);
        for (double v : spectral.values()) CHECK(v >= -1e-12);
    }
}

TEST_CASE("RK4 oracle basics") {
    const ModelParams p(5, 2, 3);
    const auto q0 = point_mass(5, 5);
    CHECK(rk4_oracle(p, q0, 0.0, 1e-3).values() == q0.values());
    for (double t = 0.5; t <= 10.0; t += 0.5) {
        CHECK(std::abs(rk4_oracle(p, q0, t, 1e-3).sum() - 1.0) <= 1e-10);
    }
    // fourth order: halving the step cuts the error by about 16
    SpectralSolution sol(p, q0);
    const auto exact = sol.evaluate(1.0);
    const double e1 = sup_diff(rk4_oracle(p, q0, 1.0, 0.05), exact);
    const double e2 = sup_diff(rk4_oracle(p, q0, 1.0, 0.025), exact);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
    CHECK_THROWS_AS(rk4_oracle(p, q0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rk4_oracle(p, q0, -1.0, 0.1), std::invalid_argument);
}

TEST_CASE("relaxation is bounded by the slowest mode") {
    for (const auto& [a, b] : std::vector<std::pair<Rational, Rational>>{{1, 2}, {3, 5}, {1, 0}}) {
        const ModelParams p(8, a, b);
        SpectralSolution sol(p, point_mass(8, 3));
        const auto lim = sol.limit();
        for (double t : {0.0, 0.1, 0.5, 1.0, 3.0, 6.0}) {
            const auto q = sol.evaluate(t);
            double dist = 0.0;
            for (long k = 0; k <= 8; ++k) dist += std::abs(q[k] - lim[static_cast<size_t>(k)].to_double());
            CHECK(dist <= sol.relaxation_bound(t) * (1 + 1e-9) + 1e-14);
        }
    }
}

TEST_CASE("pure deposition relaxes to the full lattice") {
    const ModelParams p(3, 1, 0);
    const auto lim = propagate(p, point_mass(3, 0), kInf);
    CHECK(lim.exact_entries() == R({0, 0, 0, 1}));
    // Q_3(t) = (1 - e^{-t})^3 when starting empty
    const auto q = propagate(p, point_mass(3, 0), 0.7);
    CHECK(q[3] == doctest::Approx(std::pow(1 - std::exp(-0.7), 3)).epsilon(1e-13));
}
