#pragma once

#include "sharpcert/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sharpcert {

/// Univariate polynomial in the form parameter C with exact Rational
/// coefficients, coefficient i holding C^i. Trailing zero coefficients are
/// trimmed so degree() is canonical; the zero polynomial has an empty
/// coefficient list and degree -1.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coefficients)
        : coeffs_(std::move(coefficients)) {
        trim();
    }

    static UniPoly constant(Rational c) { return UniPoly({std::move(c)}); }

    const std::vector<Rational>& coefficients() const { return coeffs_; }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    Rational coefficient(int i) const {
        if (i < 0 || static_cast<std::size_t>(i) >= coeffs_.size())
            return Rational(0);
        return coeffs_[static_cast<std::size_t>(i)];
    }

    bool is_zero() const { return coeffs_.empty(); }

    /// Horner evaluation; Scalar is any exact field constructible from
    /// Rational (Rational itself or QuadExt).
    template <class Scalar>
    Scalar evaluate(const Scalar& x) const {
        Scalar acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;)
            acc = acc * x + Scalar(coeffs_[i]);
        return acc;
    }

    UniPoly operator+(const UniPoly& o) const {
        std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            c[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
            c[i] += o.coeffs_[i];
        return UniPoly(std::move(c));
    }

    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero())
            return UniPoly();
        std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                c[i + j] += coeffs_[i] * o.coeffs_[j];
        return UniPoly(std::move(c));
    }

    UniPoly scaled(const Rational& s) const {
        std::vector<Rational> c = coeffs_;
        for (Rational& ci : c)
            ci *= s;
        return UniPoly(std::move(c));
    }

    bool operator==(const UniPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    /// "c0 + c1*C + ... + ck*C^k"; coefficients keep their sign inside the
    /// token ("-1/4 + -1*C + 1*C^2").
    std::string to_string() const {
        if (coeffs_.empty())
            return "0";
        std::string s;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i > 0)
                s += " + ";
            s += coeffs_[i].to_string();
            if (i == 1)
                s += "*C";
            else if (i > 1)
                s += "*C^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero())
            coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

/// Lagrange interpolation through (x_i, y_i); the x_i must be distinct.
inline UniPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("interpolate: need equally many points and values");
    UniPoly result;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        UniPoly basis = UniPoly::constant(Rational(1));
        Rational denom(1);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i)
                continue;
            if (xs[i] == xs[j])
                throw std::invalid_argument("interpolate: duplicate sample point");
            basis = basis * UniPoly({-xs[j], Rational(1)});
            denom *= xs[i] - xs[j];
        }
        result = result + basis.scaled(ys[i] / denom);
    }
    return result;
}

}  // namespace sharpcert
