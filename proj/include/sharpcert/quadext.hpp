#pragma once

#include "sharpcert/rational.hpp"

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sharpcert {

/// Exact element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).
///
/// Canonical form:
///  - d is squarefree: the largest square factor of the input radicand is
///    pulled into b (sqrt(8) becomes 2*sqrt(2)), so all values of one field
///    share one radicand and component-wise equality is complete;
///  - a perfect-square radicand folds into the rational part (b = 0, d = 1);
///  - b = 0 forces d = 1.
///
/// Arithmetic requires both operands to live in the same field (equal
/// radicands, or one operand rational); mixed radicands are rejected.
class QuadExt {
public:
    QuadExt() : a_(0), b_(0), d_(1) {}
    QuadExt(int n) : a_(n), b_(0), d_(1) {}
    QuadExt(Rational a) : a_(std::move(a)), b_(0), d_(1) {}
    QuadExt(Rational a, Rational b, std::int64_t d)
        : a_(std::move(a)), b_(std::move(b)), d_(d) {
        normalize();
    }

    static QuadExt sqrt_of(std::int64_t d) { return QuadExt(0, 1, d); }

    const Rational& rational_part() const { return a_; }
    const Rational& radical_part() const { return b_; }
    std::int64_t radicand() const { return d_; }

    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    /// Exact sign via case analysis on the signs of a, b and a^2 vs b^2*d.
    int sign() const {
        const int sa = a_.sign();
        const int sb = b_.sign();
        if (sb == 0)
            return sa;
        if (sa == 0)
            return sb;
        if (sa == sb)
            return sa;
        // Opposite signs: compare |a| and |b|*sqrt(d) by squaring.
        const Rational lhs = a_ * a_;
        const Rational rhs = b_ * b_ * Rational(d_);
        if (lhs == rhs)
            return 0;  // unreachable in canonical form (sqrt(d) irrational)
        return lhs > rhs ? sa : sb;
    }

    QuadExt abs() const { return sign() < 0 ? -*this : *this; }

    QuadExt operator-() const { return QuadExt(raw_tag{}, -a_, -b_, d_); }

    QuadExt operator+(const QuadExt& o) const {
        const std::int64_t d = common_radicand(o);
        return QuadExt(raw_tag{}, a_ + o.a_, b_ + o.b_, d).folded();
    }
    QuadExt operator-(const QuadExt& o) const {
        const std::int64_t d = common_radicand(o);
        return QuadExt(raw_tag{}, a_ - o.a_, b_ - o.b_, d).folded();
    }
    QuadExt operator*(const QuadExt& o) const {
        const std::int64_t d = common_radicand(o);
        return QuadExt(raw_tag{}, a_ * o.a_ + b_ * o.b_ * Rational(d),
                       a_ * o.b_ + o.a_ * b_, d)
            .folded();
    }
    QuadExt operator/(const QuadExt& o) const { return *this * o.inverse(); }

    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
    QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

    /// Multiplicative inverse via the conjugate: 1/(a+b*sqrt(d)) =
    /// (a-b*sqrt(d)) / (a^2 - b^2*d).
    QuadExt inverse() const {
        if (is_zero())
            throw std::domain_error("QuadExt: division by zero");
        const Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
        return QuadExt(raw_tag{}, a_ / norm, -b_ / norm, d_).folded();
    }

    bool operator==(const QuadExt& o) const {
        return a_ == o.a_ && b_ == o.b_ && d_ == o.d_;
    }
    bool operator!=(const QuadExt& o) const { return !(*this == o); }
    bool operator<(const QuadExt& o) const { return (*this - o).sign() < 0; }
    bool operator>(const QuadExt& o) const { return o < *this; }
    bool operator<=(const QuadExt& o) const { return !(o < *this); }
    bool operator>=(const QuadExt& o) const { return !(*this < o); }

    /// Nearest double of a + b*sqrt(d), evaluated in 50-digit binary floats;
    /// the error is at most 2 ulp.
    double to_double() const {
        using Wide = boost::multiprecision::cpp_bin_float_50;
        const Wide wa = Wide(a_.numerator()) / Wide(a_.denominator());
        const Wide wb = Wide(b_.numerator()) / Wide(b_.denominator());
        return (wa + wb * sqrt(Wide(d_))).convert_to<double>();
    }

    /// "a + b*sqrt(d)" with the Rational grammar; pure rationals render
    /// as a bare Rational, negative b as "a - |b|*sqrt(d)".
    std::string to_string() const {
        if (b_.is_zero())
            return a_.to_string();
        std::string s = a_.to_string();
        s += b_.sign() < 0 ? " - " : " + ";
        s += b_.abs().to_string();
        s += "*sqrt(" + std::to_string(d_) + ")";
        return s;
    }

private:
    struct raw_tag {};
    QuadExt(raw_tag, Rational a, Rational b, std::int64_t d)
        : a_(std::move(a)), b_(std::move(b)), d_(d) {}

    // Re-establish b = 0 => d = 1 after arithmetic on canonical operands.
    QuadExt folded() const {
        if (b_.is_zero() && d_ != 1)
            return QuadExt(raw_tag{}, a_, b_, 1);
        return *this;
    }

    std::int64_t common_radicand(const QuadExt& o) const {
        if (d_ == o.d_)
            return d_;
        if (b_.is_zero())
            return o.d_;
        if (o.b_.is_zero())
            return d_;
        throw std::domain_error("QuadExt: mismatched radicands " +
                                std::to_string(d_) + " and " + std::to_string(o.d_));
    }

    void normalize() {
        if (d_ < 1)
            throw std::domain_error("QuadExt: radicand must be >= 1");
        // Extract the largest square factor of d into b.
        std::int64_t square = 1;
        for (std::int64_t f = 2; f <= d_ / f; ++f) {
            while (d_ % (f * f) == 0) {
                d_ /= f * f;
                square *= f;
            }
        }
        if (square != 1)
            b_ *= Rational(square);
        if (d_ == 1) {
            a_ += b_;
            b_ = 0;
        }
        if (b_.is_zero())
            d_ = 1;
    }

    Rational a_;
    Rational b_;
    std::int64_t d_;
};

inline QuadExt abs(const QuadExt& x) { return x.abs(); }

inline std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
    return os << x.to_string();
}

}  // namespace sharpcert
