#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace sharpcert {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction of arbitrary-precision integers.
///
/// Canonical form: denominator > 0 and gcd(|num|, den) = 1. Every
/// constructor and operator re-establishes the canonical form, so
/// component-wise comparison is a complete equality test.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::integral auto n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    /// -1, 0 or +1.
    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    Rational operator-() const { return Rational(raw_tag{}, -num_, den_); }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return Rational(num_ * o.num_, den_ * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0)
            throw std::domain_error("Rational: division by zero");
        return Rational(num_ * o.den_, den_ * o.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return num_ * o.den_ < o.num_ * den_;  // denominators positive
    }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational reciprocal() const {
        if (num_ == 0)
            throw std::domain_error("Rational: reciprocal of zero");
        return Rational(den_, num_);
    }

    /// Nearest double, evaluated through a 50-digit binary float so the
    /// final rounding is the only loss.
    double to_double() const {
        using Wide = boost::multiprecision::cpp_bin_float_50;
        return (Wide(num_) / Wide(den_)).convert_to<double>();
    }

    std::string to_string() const {
        std::string s = num_.str();
        if (den_ != 1)
            s += "/" + den_.str();
        return s;
    }

private:
    struct raw_tag {};
    Rational(raw_tag, BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0)
            throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

/// base^exp with the convention base^0 = 1 for every base, including 0.
template <class Scalar>
Scalar scalar_pow(const Scalar& base, int exp) {
    if (exp < 0)
        throw std::domain_error("scalar_pow: negative exponent");
    Scalar acc(1);
    Scalar sq = base;
    for (int e = exp; e > 0; e >>= 1) {
        if (e & 1)
            acc = acc * sq;
        if (e > 1)
            sq = sq * sq;
    }
    return acc;
}

}  // namespace sharpcert
