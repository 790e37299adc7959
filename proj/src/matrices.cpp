#include "skac/matrices.hpp"

#include <stdexcept>
#include <string>

namespace skac {

ModelParams::ModelParams(long n, Rational alpha, Rational beta)
    : n_(n), alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (n_ < 1) {
        throw std::invalid_argument("ModelParams: n must be >= 1, got " + std::to_string(n_));
    }
    if (alpha_.sign() <= 0) {
        throw std::invalid_argument("ModelParams: alpha must be > 0, got " + alpha_.to_string());
    }
    if (beta_.sign() < 0) {
        throw std::invalid_argument("ModelParams: beta must be >= 0, got " + beta_.to_string());
    }
}

TridiagonalMatrix::TridiagonalMatrix(std::vector<Rational> diag, std::vector<Rational> sub,
                                     std::vector<Rational> super)
    : diag_(std::move(diag)), sub_(std::move(sub)), super_(std::move(super)) {
    if (diag_.empty()) {
        throw std::invalid_argument("TridiagonalMatrix: order must be >= 1");
    }
    if (sub_.size() + 1 != diag_.size() || super_.size() + 1 != diag_.size()) {
        throw std::invalid_argument("TridiagonalMatrix: band lengths must equal order - 1");
    }
}

Rational TridiagonalMatrix::at(long row, long col) const {
    if (row < 0 || col < 0 || row >= order() || col >= order()) {
        throw std::out_of_range("TridiagonalMatrix::at: index out of range");
    }
    if (row == col) return diag_[static_cast<size_t>(row)];
    if (row == col + 1) return sub_[static_cast<size_t>(col)];
    if (col == row + 1) return super_[static_cast<size_t>(row)];
    return Rational(0);
}

Rational TridiagonalMatrix::trace() const {
    Rational out;
    for (const auto& d : diag_) out += d;
    return out;
}

TridiagonalMatrix build_generator(const ModelParams& params) {
    const long n = params.n();
    const Rational& a = params.alpha();
    const Rational& b = params.beta();
    std::vector<Rational> diag;
    std::vector<Rational> sub;
    std::vector<Rational> super;
    diag.reserve(static_cast<size_t>(n + 1));
    for (long i = 0; i <= n; ++i) {
        diag.push_back(-(Rational(n - i) * a + Rational(i) * b));
    }
    for (long i = 0; i < n; ++i) {
        sub.push_back(Rational(n - i) * a);
        // column i+1 of M carries (i+1) beta on its superdiagonal
        super.push_back(Rational(i + 1) * b);
    }
    return {std::move(diag), std::move(sub), std::move(super)};
}

TridiagonalMatrix build_sylvester_kac(long n, const Rational& scale) {
    if (n < 1) {
        throw std::invalid_argument("build_sylvester_kac: n must be >= 1");
    }
    std::vector<Rational> diag(static_cast<size_t>(n + 1));
    std::vector<Rational> sub;
    std::vector<Rational> super;
    for (long i = 0; i < n; ++i) {
        super.push_back(scale * Rational(i + 1));
        sub.push_back(scale * Rational(n - i));
    }
    return {std::move(diag), std::move(sub), std::move(super)};
}

TridiagonalMatrix build_krawtchouk(const Rational& p, long n) {
    if (n < 1) {
        throw std::invalid_argument("build_krawtchouk: n must be >= 1");
    }
    if (p.sign() <= 0 || p >= Rational(1)) {
        throw std::invalid_argument("build_krawtchouk: p must satisfy 0 < p < 1, got " + p.to_string());
    }
    const Rational q = Rational(1) - p;
    const Rational drift = Rational(1) - Rational(2) * p;
    std::vector<Rational> diag;
    std::vector<Rational> sub;
    std::vector<Rational> super;
    for (long l = 0; l <= n; ++l) {
        diag.push_back(-p * Rational(n) - Rational(l) * drift);
    }
    for (long l = 0; l < n; ++l) {
        sub.push_back(Rational(l + 1) * q);
        super.push_back(p * Rational(n - l));
    }
    return {std::move(diag), std::move(sub), std::move(super)};
}

std::vector<Rational> matvec(const TridiagonalMatrix& t, std::span<const Rational> v) {
    const auto m = static_cast<size_t>(t.order());
    if (v.size() != m) {
        throw std::invalid_argument("matvec: vector length " + std::to_string(v.size()) +
                                    " does not match order " + std::to_string(m));
    }
    std::vector<Rational> out(m);
    for (size_t i = 0; i < m; ++i) {
        Rational acc = t.diag()[i] * v[i];
        if (i > 0) acc += t.sub()[i - 1] * v[i - 1];
        if (i + 1 < m) acc += t.super()[i] * v[i + 1];
        out[i] = std::move(acc);
    }
    return out;
}

std::vector<Rational> vecmat(std::span<const Rational> v, const TridiagonalMatrix& t) {
    return matvec(transpose(t), v);
}

TridiagonalMatrix transpose(const TridiagonalMatrix& t) { return {t.diag(), t.super(), t.sub()}; }

TridiagonalMatrix scaled(const TridiagonalMatrix& t, const Rational& c) {
    auto mul = [&c](std::vector<Rational> v) {
        for (auto& x : v) x *= c;
        return v;
    };
    return {mul(t.diag()), mul(t.sub()), mul(t.super())};
}

UniPolynomial charpoly_tridiagonal(const TridiagonalMatrix& t) {
    UniPolynomial prev2;
    UniPolynomial prev = UniPolynomial::constant(1);
    for (long i = 0; i < t.order(); ++i) {
        const auto ui = static_cast<size_t>(i);
        UniPolynomial next = UniPolynomial::linear_factor(t.diag()[ui]) * prev;
        if (i > 0) {
            next -= prev2 * (t.sub()[ui - 1] * t.super()[ui - 1]);
        }
        prev2 = std::move(prev);
        prev = std::move(next);
    }
    return prev;
}

std::vector<Rational> column_sums(const TridiagonalMatrix& t) {
    const auto m = static_cast<size_t>(t.order());
    std::vector<Rational> out(t.diag());
    for (size_t j = 0; j + 1 < m; ++j) {
        out[j] += t.sub()[j];
        out[j + 1] += t.super()[j];
    }
    return out;
}

}  // namespace skac
