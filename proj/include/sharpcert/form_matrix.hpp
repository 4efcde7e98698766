#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sharpcert {

template <class Scalar>
using ExactVector = std::vector<Scalar>;

/// The p x p symmetric arrowhead matrix of the quadratic form
/// C*sum(u_i^2) - u_1*sum(u_i): corner entry C-1, first row and column
/// -1/2, remaining diagonal C. Stored dense and exact; immutable after
/// construction.
template <class Scalar>
class FormMatrix {
public:
    FormMatrix(int dimension, Scalar parameter, std::vector<Scalar> entries)
        : dim_(dimension), parameter_(std::move(parameter)), entries_(std::move(entries)) {}

    int dimension() const { return dim_; }
    const Scalar& parameter() const { return parameter_; }

    const Scalar& at(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * dim_ + j];
    }

private:
    int dim_;
    Scalar parameter_;
    std::vector<Scalar> entries_;
};

/// Builds Q_p(C). For p = 1 this is the 1x1 matrix [C - 1].
template <class Scalar>
FormMatrix<Scalar> build_form_matrix(int p, const Scalar& C) {
    if (p < 1)
        throw std::domain_error("build_form_matrix: p must be >= 1");
    const Scalar zero(0);
    const Scalar minus_half = Scalar(-1) / Scalar(2);
    std::vector<Scalar> e(static_cast<std::size_t>(p) * p, zero);
    auto set = [&](int i, int j, const Scalar& v) {
        e[static_cast<std::size_t>(i) * p + j] = v;
    };
    set(0, 0, C - Scalar(1));
    for (int i = 1; i < p; ++i) {
        set(i, i, C);
        set(0, i, minus_half);
        set(i, 0, minus_half);
    }
    return FormMatrix<Scalar>(p, C, std::move(e));
}

/// Evaluates the form directly: C*sum(u_i^2) - u_1*sum(u_i).
template <class Scalar>
Scalar quadratic_form_value(const ExactVector<Scalar>& u, const Scalar& C) {
    if (u.empty())
        throw std::domain_error("quadratic_form_value: empty vector");
    Scalar sum(0);
    Scalar sum_sq(0);
    for (const Scalar& ui : u) {
        sum += ui;
        sum_sq += ui * ui;
    }
    return C * sum_sq - u.front() * sum;
}

/// Exact matrix-vector product M*u.
template <class Scalar>
ExactVector<Scalar> apply_form(const FormMatrix<Scalar>& M, const ExactVector<Scalar>& u) {
    if (static_cast<std::size_t>(M.dimension()) != u.size())
        throw std::domain_error("apply_form: dimension mismatch");
    const int p = M.dimension();
    ExactVector<Scalar> out(u.size(), Scalar(0));
    for (int i = 0; i < p; ++i) {
        Scalar acc(0);
        for (int j = 0; j < p; ++j)
            acc += M.at(i, j) * u[j];
        out[i] = acc;
    }
    return out;
}

/// u^T * M * u, the matrix route to the form value.
template <class Scalar>
Scalar form_value_via_matrix(const FormMatrix<Scalar>& M, const ExactVector<Scalar>& u) {
    const ExactVector<Scalar> Mu = apply_form(M, u);
    Scalar acc(0);
    for (std::size_t i = 0; i < u.size(); ++i)
        acc += u[i] * Mu[i];
    return acc;
}

}  // namespace sharpcert
