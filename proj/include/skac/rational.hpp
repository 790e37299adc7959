#pragma once

// Exact rational scalars and binomial coefficients.
//
// Every closed-form quantity in skac (rates, eigenvalues, eigenvector
// components, probabilities) is carried as a Rational. The wrapper keeps
// the GMP value canonical: denominator > 0, gcd(|num|, den) = 1, zero as 0/1.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace skac {

using BigInt = mpz_class;

class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT
    explicit Rational(const BigInt& value) : value_(value) {}

    /// Canonical num/den. Throws std::invalid_argument on a zero denominator.
    Rational(const BigInt& numerator, const BigInt& denominator);

    /// Parses "a", "a/b", or an exact decimal such as "-0.25" or "1.5e-3".
    /// Hex-float, nan and inf literals are rejected: they have no exact
    /// decimal meaning.
    static Rational parse(std::string_view text);

    BigInt numerator() const { return value_.get_num(); }
    BigInt denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    int sign() const { return sgn(value_); }
    bool is_integer() const { return value_.get_den() == 1; }

    double to_double() const { return value_.get_d(); }
    long double to_long_double() const;

    /// "num/den", or just "num" when the denominator is 1.
    std::string to_string() const;
    /// Always "num/den" (e.g. "0/1"); the serialized form.
    std::string to_fraction_string() const;
    /// Rounded decimal with `digits` significant digits.
    std::string to_decimal_string(int digits) const;

    Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
    Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
    Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    const mpq_class& raw() const { return value_; }

private:
    mpq_class value_;
};

Rational abs(const Rational& x);

/// x^e for any integer e; 0^0 = 1. Negative powers of zero throw.
Rational pow(const Rational& x, long e);

std::ostream& operator<<(std::ostream& os, const Rational& x);

/// C(n, k) with the vanishing convention: 0 when k < 0 or k > n.
/// Throws std::invalid_argument when n < 0.
BigInt binom(long n, long k);

}  // namespace skac
