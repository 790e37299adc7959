#include "skac/spectral.hpp"

#include <algorithm>
#include <stdexcept>

namespace skac {

namespace {

void check_index(long n, long k, const char* what) {
    if (k < 0 || k > n) {
        throw std::out_of_range(std::string(what) + ": index " + std::to_string(k) + " outside 0.." +
                                std::to_string(n));
    }
}

Rational sign_of_power(long e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

// eta^0 .. eta^max_power, with 0^0 = 1.
std::vector<Rational> power_table(const Rational& eta, long max_power) {
    std::vector<Rational> out(static_cast<size_t>(max_power + 1));
    out[0] = Rational(1);
    for (long i = 1; i <= max_power; ++i) {
        out[static_cast<size_t>(i)] = out[static_cast<size_t>(i - 1)] * eta;
    }
    return out;
}

std::vector<Rational> eigenvector_from_table(long n, long k, std::span<const Rational> eta_pow) {
    std::vector<Rational> u(static_cast<size_t>(n + 1));
    for (long l = 0; l <= n; ++l) {
        Rational acc;
        for (long j = l - k; j <= n - k; ++j) {
            BigInt b = binom(k, l - j) * binom(n - k, j);
            if (b == 0) continue;
            Rational term = Rational(b) * eta_pow[static_cast<size_t>(n - k - j)];
            if ((k + l + j) % 2 != 0) term = -term;
            acc += term;
        }
        u[static_cast<size_t>(l)] = std::move(acc);
    }
    return u;
}

Rational l1(std::span<const Rational> v) {
    Rational out;
    for (const auto& x : v) out += abs(x);
    return out;
}

}  // namespace

std::string to_string(SpectralSource source) {
    return source == SpectralSource::ClosedForm ? "closed-form" : "oracle";
}

std::vector<Rational> eigenvalues_generator(const ModelParams& params) {
    std::vector<Rational> out;
    const Rational gap = params.total_rate();
    for (long k = 0; k <= params.n(); ++k) {
        out.push_back(-Rational(k) * gap);
    }
    return out;
}

std::vector<Rational> eigenvector_generator(const ModelParams& params, long k) {
    check_index(params.n(), k, "eigenvector_generator");
    // j runs over l-k .. n-k, so the eta exponent n-k-j stays within 0..n
    return eigenvector_from_table(params.n(), k, power_table(params.eta(), params.n()));
}

SpectralDecomposition decompose_generator(const ModelParams& params) {
    const long n = params.n();
    const auto eta_pow = power_table(params.eta(), n);
    SpectralDecomposition out{params, eigenvalues_generator(params), {}, SpectralSource::ClosedForm};
    out.vectors.reserve(static_cast<size_t>(n + 1));
    for (long k = 0; k <= n; ++k) {
        out.vectors.push_back(eigenvector_from_table(n, k, eta_pow));
    }
    return out;
}

std::optional<std::vector<Rational>> null_vector_bottom_up(const TridiagonalMatrix& t, const Rational& lambda) {
    const auto m = static_cast<size_t>(t.order());
    for (const auto& s : t.sub()) {
        if (s.is_zero()) {
            throw std::invalid_argument("null_vector_bottom_up: subdiagonal has a zero entry");
        }
    }
    std::vector<Rational> v(m);
    v[m - 1] = Rational(1);
    // Row i: sub[i-1] v[i-1] + (d_i - lambda) v[i] + super[i] v[i+1] = 0
    for (size_t i = m - 1; i >= 1; --i) {
        Rational rest = (t.diag()[i] - lambda) * v[i];
        if (i + 1 < m) rest += t.super()[i] * v[i + 1];
        v[i - 1] = -rest / t.sub()[i - 1];
    }
    Rational top = (t.diag()[0] - lambda) * v[0];
    if (m > 1) top += t.super()[0] * v[1];
    if (!top.is_zero()) {
        return std::nullopt;
    }
    return v;
}

SpectralDecomposition decompose_generator_oracle(const ModelParams& params) {
    const auto m = build_generator(params);
    SpectralDecomposition out{params, eigenvalues_generator(params), {}, SpectralSource::Oracle};
    for (const auto& lambda : out.eigenvalues) {
        auto v = null_vector_bottom_up(m, lambda);
        if (!v) {
            throw std::logic_error("decompose_generator_oracle: " + lambda.to_string() + " is not an eigenvalue");
        }
        out.vectors.push_back(std::move(*v));
    }
    return out;
}

std::vector<Rational> eigen_residual(const TridiagonalMatrix& t, const Rational& lambda, std::span<const Rational> v) {
    auto r = matvec(t, v);
    for (size_t i = 0; i < r.size(); ++i) {
        r[i] -= lambda * v[i];
    }
    return r;
}

Rational row_equation_residual(const ModelParams& params, long k, long l, std::span<const Rational> u) {
    const long n = params.n();
    check_index(n, k, "verify_row_equation(k)");
    check_index(n, l, "verify_row_equation(l)");
    if (static_cast<long>(u.size()) != n + 1) {
        throw std::invalid_argument("verify_row_equation: eigenvector length mismatch");
    }
    const Rational eta = params.eta();
    const Rational K(k);
    const Rational L(l);
    const Rational N(n);
    auto at = [&u](long i) -> const Rational& { return u[static_cast<size_t>(i)]; };
    if (l == 0) {
        return (-N + K + K * eta) * at(0) + eta * at(1);
    }
    if (l == n) {
        return at(n - 1) + (K + (K - N) * eta) * at(n);
    }
    return (N - L + 1) * at(l - 1) + (K + L - N + (K - L) * eta) * at(l) + (L + 1) * eta * at(l + 1);
}

Rational verify_row_equation(const ModelParams& params, long k, long l) {
    check_index(params.n(), k, "verify_row_equation(k)");
    return row_equation_residual(params, k, l, eigenvector_generator(params, k));
}

std::vector<Rational> sylvester_kac_spectrum(long n, const Rational& scale) {
    if (n < 1) {
        throw std::invalid_argument("sylvester_kac_spectrum: n must be >= 1");
    }
    std::vector<Rational> out;
    for (long k = 0; k <= n; ++k) {
        out.push_back(scale * Rational(2 * k - n));
    }
    return out;
}

UniPolynomial det_lambda_plus(const TridiagonalMatrix& a) {
    UniPolynomial p = charpoly_tridiagonal(a).reflected();
    if (a.order() % 2 != 0) {
        p *= Rational(-1);
    }
    return p;
}

namespace {

// Order-m matrix with zero diagonal, super a_1..a_{m-1}, sub a_{m-1}..a_1.
TridiagonalMatrix progression_matrix(long m, const Rational& c) {
    std::vector<Rational> diag(static_cast<size_t>(m));
    std::vector<Rational> sub;
    std::vector<Rational> super;
    for (long i = 0; i + 1 < m; ++i) {
        super.push_back(c * Rational(i + 1));
        sub.push_back(c * Rational(m - 1 - i));
    }
    return {std::move(diag), std::move(sub), std::move(super)};
}

}  // namespace

MazzaSides mazza_sides(long n, const Rational& c) {
    if (n < 2) {
        throw std::invalid_argument("mazza_factorization_check: n must be >= 2");
    }
    const Rational an = c * Rational(n);
    UniPolynomial quadratic({-an * an, Rational(0), Rational(1)});
    return {det_lambda_plus(progression_matrix(n + 1, c)),
            quadratic * det_lambda_plus(progression_matrix(n - 1, c))};
}

bool mazza_factorization_check(long n, const Rational& c) {
    auto sides = mazza_sides(n, c);
    return sides.lhs == sides.rhs;
}

std::vector<Rational> krawtchouk_eigenvalues(long n) {
    if (n < 1) {
        throw std::invalid_argument("krawtchouk_eigenvalues: n must be >= 1");
    }
    std::vector<Rational> out;
    for (long k = 0; k <= n; ++k) out.push_back(Rational(-k));
    return out;
}

UniPolynomial krawtchouk_det_k_minus_x(const Rational& p, long n) {
    // det(K - xI) = (-1)^{n+1} det(xI - K)
    return charpoly_tridiagonal(build_krawtchouk(p, n)) * sign_of_power(n + 1);
}

std::vector<Rational> krawtchouk_eigenvector_formula(const Rational& p, long n, long k) {
    if (p.sign() <= 0 || p >= Rational(1)) {
        throw std::invalid_argument("krawtchouk_eigenvector_formula: p must satisfy 0 < p < 1");
    }
    check_index(n, k, "krawtchouk_eigenvector_formula");
    const Rational inv_p = Rational(1) / p;
    std::vector<Rational> u(static_cast<size_t>(n + 1));
    for (long l = 0; l <= n; ++l) {
        Rational acc;
        Rational inv_p_pow(1);
        for (long j = 0; j <= std::min(l, k); ++j) {
            acc += sign_of_power(l - j) * Rational(binom(l, j) * binom(n - j, k - j)) * inv_p_pow;
            inv_p_pow *= inv_p;
        }
        u[static_cast<size_t>(l)] = std::move(acc);
    }
    return u;
}

std::vector<Rational> krawtchouk_left_eigenvector(const Rational& p, long n, long k) {
    if (p.sign() <= 0 || p >= Rational(1)) {
        throw std::invalid_argument("krawtchouk_left_eigenvector: p must satisfy 0 < p < 1");
    }
    return eigenvector_generator(ModelParams(n, p, Rational(1) - p), k);
}

bool EigvecReport::is_right_eigenvector() const {
    return std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.right; });
}

bool EigvecReport::is_left_eigenvector() const {
    return std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.left; });
}

std::optional<Rational> EigvecReport::right_eigenvalue() const {
    for (const auto& e : entries) {
        if (e.right) return e.eigenvalue;
    }
    return std::nullopt;
}

std::optional<Rational> EigvecReport::left_eigenvalue() const {
    for (const auto& e : entries) {
        if (e.left) return e.eigenvalue;
    }
    return std::nullopt;
}

const EigvecClassification* EigvecReport::find(const Rational& lambda) const {
    for (const auto& e : entries) {
        if (e.eigenvalue == lambda) return &e;
    }
    return nullptr;
}

EigvecReport classify_eigvec_claim(const TridiagonalMatrix& t, std::span<const Rational> v,
                                   std::span<const Rational> spectrum) {
    if (static_cast<long>(v.size()) != t.order()) {
        throw std::invalid_argument("classify_eigvec_claim: vector length does not match matrix order");
    }
    if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); })) {
        throw std::invalid_argument("classify_eigvec_claim: zero vector");
    }
    const auto tt = transpose(t);
    EigvecReport report;
    for (const auto& lambda : spectrum) {
        EigvecClassification c;
        c.eigenvalue = lambda;
        c.right_residual_l1 = l1(eigen_residual(t, lambda, v));
        c.left_residual_l1 = l1(eigen_residual(tt, lambda, v));
        c.right = c.right_residual_l1.is_zero();
        c.left = c.left_residual_l1.is_zero();
        report.entries.push_back(std::move(c));
    }
    return report;
}

}  // namespace skac
