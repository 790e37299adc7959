#include "skac/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace skac {

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) {
        throw std::invalid_argument("Rational: zero denominator");
    }
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) {
        throw std::domain_error("Rational: division by zero");
    }
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::operator-() const {
    Rational out;
    out.value_ = -value_;
    return out;
}

long double Rational::to_long_double() const {
    // Split off the integer part so large numerators do not lose the
    // fractional bits to mpq_get_d truncation twice.
    mpz_class q = value_.get_num() / value_.get_den();
    mpq_class frac = value_ - mpq_class(q);
    return static_cast<long double>(q.get_d()) + static_cast<long double>(frac.get_d());
}

std::string Rational::to_string() const {
    if (is_integer()) {
        return value_.get_num().get_str();
    }
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_fraction_string() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal_string(int digits) const {
    if (digits < 1) {
        throw std::invalid_argument("to_decimal_string: digits must be >= 1");
    }
    mpf_class f(value_, static_cast<mp_bitcnt_t>(digits * 4 + 64));
    mp_exp_t exp = 0;
    std::string mant = f.get_str(exp, 10, static_cast<size_t>(digits));
    if (mant.empty() || mant == "0") {
        return "0";
    }
    bool neg = mant.front() == '-';
    if (neg) {
        mant.erase(0, 1);
    }
    std::string out;
    if (exp <= 0) {
        out = "0." + std::string(static_cast<size_t>(-exp), '0') + mant;
    } else if (static_cast<size_t>(exp) >= mant.size()) {
        out = mant + std::string(static_cast<size_t>(exp) - mant.size(), '0');
    } else {
        out = mant.substr(0, static_cast<size_t>(exp)) + "." + mant.substr(static_cast<size_t>(exp));
    }
    return neg ? "-" + out : out;
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
    if (s.empty()) {
        throw std::invalid_argument("Rational::parse: malformed number '" + std::string(whole) + "'");
    }
    size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) {
        throw std::invalid_argument("Rational::parse: malformed number '" + std::string(whole) + "'");
    }
    for (size_t j = i; j < s.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
            throw std::invalid_argument("Rational::parse: malformed number '" + std::string(whole) + "'");
        }
    }
    std::string digits(s.front() == '+' ? s.substr(1) : s);
    return BigInt(digits, 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    const std::string_view whole = text;
    if (text.empty()) {
        throw std::invalid_argument("Rational::parse: empty string");
    }

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash), whole);
        BigInt den = parse_integer(text.substr(slash + 1), whole);
        return Rational(num, den);
    }

    // Decimal: [sign] digits [. digits] [e|E [sign] digits]
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        BigInt ex = parse_integer(text.substr(e + 1), whole);
        if (!ex.fits_slong_p() || abs(ex) > 100000) {
            throw std::invalid_argument("Rational::parse: exponent out of range in '" + std::string(whole) + "'");
        }
        exponent = ex.get_si();
        text = text.substr(0, e);
    }
    std::string mantissa;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view frac = text.substr(dot + 1);
        std::string_view intpart = text.substr(0, dot);
        if (frac.find_first_not_of("0123456789") != std::string_view::npos ||
            (frac.empty() && (intpart.empty() || intpart == "-" || intpart == "+"))) {
            throw std::invalid_argument("Rational::parse: malformed number '" + std::string(whole) + "'");
        }
        mantissa = std::string(intpart) + std::string(frac);
        if (intpart.empty() || intpart == "-" || intpart == "+") {
            mantissa = std::string(intpart) + "0" + std::string(frac);
        }
        exponent -= static_cast<long>(frac.size());
    } else {
        mantissa = std::string(text);
    }
    BigInt m = parse_integer(mantissa, whole);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent < 0 ? Rational(m, scale) : Rational(BigInt(m * scale));
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& x, long e) {
    if (e == 0) {
        return Rational(1);
    }
    if (x.is_zero()) {
        if (e < 0) {
            throw std::domain_error("pow: negative power of zero");
        }
        return Rational(0);
    }
    const unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), x.raw().get_num_mpz_t(), ue);
    mpz_pow_ui(den.get_mpz_t(), x.raw().get_den_mpz_t(), ue);
    return e > 0 ? Rational(num, den) : Rational(den, num);
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

BigInt binom(long n, long k) {
    if (n < 0) {
        throw std::invalid_argument("binom: n must be nonnegative");
    }
    if (k < 0 || k > n) {
        return 0;
    }
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

}  // namespace skac
