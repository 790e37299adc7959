#pragma once

#include <span>
#include <string>
#include <vector>

#include "skac/rational.hpp"

namespace skac {

/// Univariate polynomial with exact coefficients in ascending degree.
/// The zero polynomial has no coefficients; otherwise the leading one is
/// nonzero.
class UniPolynomial {
public:
    UniPolynomial() = default;
    explicit UniPolynomial(std::vector<Rational> coefficients);

    static UniPolynomial constant(const Rational& c);
    /// x - root
    static UniPolynomial linear_factor(const Rational& root);
    /// prod_i (x - roots[i])
    static UniPolynomial from_roots(std::span<const Rational> roots);

    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational coefficient(long power) const;
    Rational leading() const;
    bool is_monic() const { return !is_zero() && leading() == Rational(1); }

    /// Horner evaluation.
    Rational operator()(const Rational& x) const;

    /// p(-x)
    UniPolynomial reflected() const;

    UniPolynomial& operator+=(const UniPolynomial& rhs);
    UniPolynomial& operator-=(const UniPolynomial& rhs);
    UniPolynomial& operator*=(const Rational& c);

    friend UniPolynomial operator+(UniPolynomial a, const UniPolynomial& b) { return a += b; }
    friend UniPolynomial operator-(UniPolynomial a, const UniPolynomial& b) { return a -= b; }
    friend UniPolynomial operator*(UniPolynomial a, const Rational& c) { return a *= c; }
    friend UniPolynomial operator*(const Rational& c, UniPolynomial a) { return a *= c; }
    friend UniPolynomial operator*(const UniPolynomial& a, const UniPolynomial& b);
    friend bool operator==(const UniPolynomial& a, const UniPolynomial& b) = default;

    /// Human-readable form, highest degree first, e.g. "x^2 + 2*x".
    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

}  // namespace skac
