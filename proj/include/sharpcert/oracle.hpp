#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sharpcert {

/// Outcome of a randomized falsification run. best_ratio can never exceed
/// quad_to_float(phi_p) by more than accumulated rounding; the constructor
/// path enforces best_ratio <= phi_p + 1e-9.
struct SearchReport {
    int dimension = 0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    double best_ratio = 0.0;
    std::vector<double> best_vector;
    double gap_to_phi = 0.0;

    bool operator==(const SearchReport& o) const = default;
};

struct GridResult {
    double value = 0.0;
    double argmax = 0.0;
};

struct SymmetricEigen {
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // row-major; column j is the eigenvector of values[j]
};

/// (sum |x_i|) * (max |x_i|) / (sum x_i^2), computed after rescaling by
/// 1/max|x_i| so the squares can neither overflow nor underflow, with
/// compensated summation. Throws std::domain_error on zero or non-finite
/// input.
double evaluate_ratio(std::span<const double> x);

/// True iff evaluate_ratio(x) <= quad_to_float(phi_p) + tolerance for
/// p = x.size().
bool check_inequality(std::span<const double> x, double tolerance);

/// Default tolerance 1e-12 * p.
bool check_inequality(std::span<const double> x);

/// Randomized falsification: per trial, a coordinate-wise standard normal
/// sample (every tenth trial instead the structured shape (1, t, ..., t)
/// with t uniform on [0, 1]), normalized to unit max-norm, followed by
/// coordinate-wise hill climbing (initial step 0.25, halved 40 times) on
/// trials whose raw ratio lands within 0.25 of phi_p. Each trial is seeded
/// by splitmix64 mixing of (seed, trial index), so the outcome is
/// bit-identical for fixed (p, trials, seed) regardless of how many
/// worker threads run; SHARPCERT_THREADS caps the worker count.
SearchReport random_search(int p, std::int64_t trials, std::uint64_t seed);

/// The normalized starting vector of one search trial, before refinement;
/// exposes the documented sample distribution for raw dumps and tests.
std::vector<double> raw_search_sample(int p, std::int64_t trial, std::uint64_t seed);

/// Maximizes f(t) = (1 + (p-1)t) / (1 + (p-1)t^2) over a uniform grid of
/// `resolution` points on [0, 1], plus one golden-section refinement pass
/// when the grid maximum is interior. The exact maximizer is
/// t* = 1/(1 + sqrt(p)) with f(t*) = phi_p.
GridResult grid_oracle(int p, std::int64_t resolution);

/// Eigenvalues of Q_p(C) in nondecreasing order via the cyclic Jacobi
/// rotation method; per-pair residual ||Q v - lambda v|| <= 1e-10 ||Q||.
std::vector<double> numeric_eigenvalues(int p, double C);

/// Full Jacobi decomposition of an arbitrary symmetric matrix (row-major).
SymmetricEigen jacobi_symmetric_eigen(std::vector<double> matrix, int n);

/// Line-oriented "field = value" text with a "search-v1" header; doubles
/// are rendered shortest-round-trip, so equal reports render identically.
std::string render_search_report(const SearchReport& report);

/// Worker cap for random_search: SHARPCERT_THREADS if set, otherwise the
/// machine parallelism.
int search_thread_cap();

}  // namespace sharpcert
