#pragma once

#include "sharpcert/form_matrix.hpp"
#include "sharpcert/polynomial.hpp"
#include "sharpcert/quadext.hpp"
#include "sharpcert/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace sharpcert {

/// Leading principal minor D_k(C) of Q_p(C) in closed form:
/// C^(k-2) * (C^2 - C - (k-1)/4) for k >= 2, with C^0 = 1 even at C = 0,
/// and the 1x1 special case D_1 = C - 1.
template <class Scalar>
Scalar minor_closed_form(int k, const Scalar& C) {
    if (k < 1)
        throw std::domain_error("minor_closed_form: k must be >= 1");
    if (k == 1)
        return C - Scalar(1);
    const Scalar quad = C * C - C - Scalar(k - 1) / Scalar(4);
    return scalar_pow(C, k - 2) * quad;
}

/// D_k(C) by triangularizing the k x k submatrix with the single column
/// replacement v1' = v1 + sum_j (1/2C) vj and multiplying the diagonal.
/// The replacement divides by 2C, so C = 0 is rejected for k >= 2.
template <class Scalar>
Scalar minor_by_elimination(int k, const Scalar& C) {
    if (k < 1)
        throw std::domain_error("minor_by_elimination: k must be >= 1");
    if (k == 1)
        return C - Scalar(1);
    if (C.is_zero())
        throw std::domain_error("minor_by_elimination: undefined at C = 0, use the closed form");

    const FormMatrix<Scalar> M = build_form_matrix(k, C);
    const Scalar weight = Scalar(1) / (Scalar(2) * C);

    std::vector<Scalar> first_column(static_cast<std::size_t>(k), Scalar(0));
    for (int i = 0; i < k; ++i) {
        Scalar v = M.at(i, 0);
        for (int j = 1; j < k; ++j)
            v += weight * M.at(i, j);
        first_column[static_cast<std::size_t>(i)] = v;
    }

    // The replacement must clear everything below the (1,1) entry; the
    // remaining matrix is then upper triangular.
    for (int i = 1; i < k; ++i)
        if (!first_column[static_cast<std::size_t>(i)].is_zero())
            throw std::logic_error("minor_by_elimination: column operation failed to clear");

    Scalar det = first_column[0];
    for (int i = 1; i < k; ++i)
        det = det * M.at(i, i);
    return det;
}

/// Exact determinant by Bareiss fraction-free elimination with row
/// pivoting; entries in row-major order.
template <class Scalar>
Scalar exact_determinant(std::vector<Scalar> m, int n) {
    if (n < 1)
        throw std::domain_error("exact_determinant: empty matrix");
    auto at = [&m, n](int i, int j) -> Scalar& {
        return m[static_cast<std::size_t>(i) * n + j];
    };
    Scalar sign(1);
    Scalar prev(1);
    for (int k = 0; k + 1 < n; ++k) {
        if (at(k, k).is_zero()) {
            int pivot = -1;
            for (int r = k + 1; r < n; ++r) {
                if (!at(r, k).is_zero()) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0)
                return Scalar(0);
            for (int j = 0; j < n; ++j)
                std::swap(at(k, j), at(pivot, j));
            sign = Scalar(0) - sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(k, k) * at(i, j) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

/// D_k as an exact polynomial in C, obtained by evaluating the k x k
/// determinant at the k+1 sample points C = 1, ..., k+1 and interpolating.
/// Degree k with leading coefficient 1 is enforced.
inline UniPoly minor_polynomial(int k) {
    if (k < 1)
        throw std::domain_error("minor_polynomial: k must be >= 1");
    std::vector<Rational> xs;
    std::vector<Rational> ys;
    xs.reserve(static_cast<std::size_t>(k) + 1);
    ys.reserve(static_cast<std::size_t>(k) + 1);
    for (int c = 1; c <= k + 1; ++c) {
        const Rational C(c);
        const FormMatrix<Rational> M = build_form_matrix(k, C);
        std::vector<Rational> entries;
        entries.reserve(static_cast<std::size_t>(k) * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                entries.push_back(M.at(i, j));
        xs.push_back(C);
        ys.push_back(exact_determinant(std::move(entries), k));
    }
    UniPoly poly = interpolate(xs, ys);
    if (poly.degree() != k || poly.coefficient(k) != Rational(1))
        throw std::logic_error("minor_polynomial: interpolated minor is not monic of degree k");
    return poly;
}

/// D_k evaluated at the sharp constant phi_p = (1+sqrt(p))/2, exactly in
/// Q(sqrt(p)): phi^(k-2)*(p-k)/4 for k >= 2, and phi - 1 for k = 1.
inline QuadExt minor_at_phi(int k, int p) {
    if (k < 1)
        throw std::domain_error("minor_at_phi: k must be >= 1");
    if (k > p)
        throw std::domain_error("minor_at_phi: k must be <= p");
    const QuadExt phi(Rational(1, 2), Rational(1, 2), p);
    if (k == 1)
        return phi - QuadExt(1);
    return scalar_pow(phi, k - 2) * QuadExt(Rational(p - k, 4));
}

/// Sylvester's criterion over the closed-form minor chain: true iff
/// D_k(C) > 0 for every k = 1..p, decided by exact sign evaluation.
template <class Scalar>
bool sylvester_positive_definite(int p, const Scalar& C) {
    if (p < 1)
        throw std::domain_error("sylvester_positive_definite: p must be >= 1");
    for (int k = 1; k <= p; ++k)
        if (minor_closed_form(k, C).sign() <= 0)
            return false;
    return true;
}

}  // namespace sharpcert
