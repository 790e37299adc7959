#include "skac/polynomial.hpp"

#include <algorithm>

namespace skac {

UniPolynomial::UniPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

UniPolynomial UniPolynomial::constant(const Rational& c) { return UniPolynomial({c}); }

UniPolynomial UniPolynomial::linear_factor(const Rational& root) { return UniPolynomial({-root, Rational(1)}); }

UniPolynomial UniPolynomial::from_roots(std::span<const Rational> roots) {
    UniPolynomial out = constant(1);
    for (const auto& r : roots) {
        out = out * linear_factor(r);
    }
    return out;
}

void UniPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

Rational UniPolynomial::coefficient(long power) const {
    if (power < 0 || power > degree()) {
        return Rational(0);
    }
    return coeffs_[static_cast<size_t>(power)];
}

Rational UniPolynomial::leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

Rational UniPolynomial::operator()(const Rational& x) const {
    Rational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

UniPolynomial UniPolynomial::reflected() const {
    UniPolynomial out = *this;
    for (size_t i = 1; i < out.coeffs_.size(); i += 2) {
        out.coeffs_[i] = -out.coeffs_[i];
    }
    return out;
}

UniPolynomial& UniPolynomial::operator+=(const UniPolynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size());
    }
    for (size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        coeffs_[i] += rhs.coeffs_[i];
    }
    trim();
    return *this;
}

UniPolynomial& UniPolynomial::operator-=(const UniPolynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size());
    }
    for (size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        coeffs_[i] -= rhs.coeffs_[i];
    }
    trim();
    return *this;
}

UniPolynomial& UniPolynomial::operator*=(const Rational& c) {
    for (auto& a : coeffs_) {
        a *= c;
    }
    trim();
    return *this;
}

UniPolynomial operator*(const UniPolynomial& a, const UniPolynomial& b) {
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return UniPolynomial(std::move(out));
}

std::string UniPolynomial::to_string() const {
    if (is_zero()) {
        return "0";
    }
    std::string out;
    for (long p = degree(); p >= 0; --p) {
        const Rational& c = coeffs_[static_cast<size_t>(p)];
        if (c.is_zero()) continue;
        Rational mag = abs(c);
        if (out.empty()) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        const bool unit = mag == Rational(1);
        if (!unit || p == 0) {
            out += mag.to_string();
            if (p > 0) out += "*";
        }
        if (p >= 1) out += "x";
        if (p >= 2) out += "^" + std::to_string(p);
    }
    return out;
}

}  // namespace skac
