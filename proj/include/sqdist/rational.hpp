#pragma once

/**
 * @file rational.hpp
 * @brief Arbitrary-precision exact fractions.
 *
 * Thin value type over GMP's mpq_class. Every value is kept canonical:
 * the denominator is positive, numerator and denominator are coprime, and
 * zero is 0/1. Textual form is "p/q", or just "p" when q = 1.
 */

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sqdist {

class Rational {
public:
    Rational() = default;

    template <std::signed_integral I>
    Rational(I value) : value_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)

    template <std::unsigned_integral I>
    Rational(I value) : value_(static_cast<unsigned long>(value)) {}  // NOLINT

    explicit Rational(const mpz_class& integer) : value_(integer) {}

    Rational(const mpz_class& numerator, const mpz_class& denominator) {
        if (denominator == 0) throw std::domain_error("rational with zero denominator");
        value_ = mpq_class(numerator, denominator);
        value_.canonicalize();
    }

    /// Parses "p" or "p/q" with optional signs on either part; q must be nonzero.
    static Rational parse(std::string_view text) {
        auto is_integer = [](std::string_view s) {
            if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
            if (s.empty()) return false;
            for (char c : s)
                if (c < '0' || c > '9') return false;
            return true;
        };
        auto to_mpz = [](std::string_view s) {
            if (!s.empty() && s.front() == '+') s.remove_prefix(1);
            return mpz_class(std::string(s), 10);
        };

        const auto slash = text.find('/');
        const std::string_view num = text.substr(0, slash);
        const std::string_view den =
            slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
        if (!is_integer(num) || !is_integer(den))
            throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
        const mpz_class d = to_mpz(den);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(to_mpz(num), d);
    }

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    std::string str() const {
        if (is_integer()) return value_.get_num().get_str();
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    const mpq_class& raw() const noexcept { return value_; }

    Rational reciprocal() const {
        if (is_zero()) throw std::domain_error("reciprocal of zero");
        Rational r;
        mpq_inv(r.value_.get_mpq_t(), value_.get_mpq_t());
        return r;
    }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) {
        Rational r;
        r.value_ = -a.value_;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class value_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Integer power; negative exponents invert the base (which must then be nonzero).
inline Rational pow(const Rational& base, long exponent) {
    if (exponent < 0) return pow(base.reciprocal(), -exponent);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(num, den);
}

/// 2^k for any integer k.
inline Rational pow2(long k) { return pow(Rational(2), k); }

}  // namespace sqdist

template <>
struct std::hash<sqdist::Rational> {
    std::size_t operator()(const sqdist::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.str());
    }
};
