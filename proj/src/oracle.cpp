#include "sharpcert/oracle.hpp"

#include "sharpcert/certificate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace sharpcert {

namespace {

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double c : x)
        m = std::max(m, std::fabs(c));
    return m;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Documented sub-seed schedule: the trial index is hashed and mixed into
// the user seed, so trials are independent of worker scheduling.
std::uint64_t trial_seed(std::uint64_t seed, std::int64_t trial) {
    return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1));
}

}  // namespace

std::vector<double> raw_search_sample(int p, std::int64_t trial, std::uint64_t seed) {
    std::mt19937_64 rng(trial_seed(seed, trial));
    std::vector<double> v(static_cast<std::size_t>(p));

    if (trial % 10 == 9) {
        std::uniform_real_distribution<double> uniform01(0.0, 1.0);
        const double t = uniform01(rng);
        std::fill(v.begin(), v.end(), t);
        v[0] = 1.0;
    } else {
        std::normal_distribution<double> normal(0.0, 1.0);
        for (double& c : v)
            c = normal(rng);
    }

    const double m = max_abs(v);
    if (m > 0.0) {
        for (double& c : v)
            c /= m;
    } else {
        std::fill(v.begin(), v.end(), 0.0);
        v[0] = 1.0;
    }
    return v;
}

namespace {

// Greedy coordinate hill climb on the ratio, strict improvements only.
// Sums are refreshed at every step level; acceptance decisions use O(1)
// incremental updates in between, which keeps a full climb at O(p) per
// level instead of O(p^2).
void hill_climb(std::vector<double>& v) {
    const std::size_t p = v.size();
    double step = 0.25;
    for (int level = 0; level < 40; ++level, step *= 0.5) {
        double s1 = 0.0;
        double s2 = 0.0;
        double m = 0.0;
        for (double c : v) {
            s1 += std::fabs(c);
            s2 += c * c;
            m = std::max(m, std::fabs(c));
        }
        double ratio = s1 * m / s2;

        bool improved = true;
        for (int sweep = 0; improved && sweep < 64; ++sweep) {
            improved = false;
            for (std::size_t i = 0; i < p; ++i) {
                for (double dir : {1.0, -1.0}) {
                    const double oldc = v[i];
                    const double newc = oldc + dir * step;
                    const double s1c = s1 - std::fabs(oldc) + std::fabs(newc);
                    const double s2c = s2 - oldc * oldc + newc * newc;
                    double mc = m;
                    if (std::fabs(newc) >= m) {
                        mc = std::fabs(newc);
                    } else if (std::fabs(oldc) == m) {
                        v[i] = newc;
                        mc = max_abs(v);
                        v[i] = oldc;
                    }
                    if (!(s2c > 0.0) || !(mc > 0.0))
                        continue;
                    const double candidate = s1c * mc / s2c;
                    if (candidate > ratio) {
                        v[i] = newc;
                        s1 = s1c;
                        s2 = s2c;
                        m = mc;
                        ratio = candidate;
                        improved = true;
                        break;
                    }
                }
            }
        }
    }
}

struct TrialBest {
    double ratio = -1.0;
    std::int64_t index = -1;
    std::vector<double> vec;
};

void run_trial(int p, std::int64_t trial, std::uint64_t seed, double phi_f, TrialBest& best) {
    std::vector<double> v = raw_search_sample(p, trial, seed);

    double ratio = evaluate_ratio(v);
    if (phi_f - ratio < 0.25) {
        hill_climb(v);
        ratio = evaluate_ratio(v);
    }

    if (ratio > best.ratio) {
        best.ratio = ratio;
        best.index = trial;
        best.vec = v;
    }
}

void append_double(std::string& out, double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    out.append(buf, res.ptr);
}

}  // namespace

double evaluate_ratio(std::span<const double> x) {
    if (x.empty())
        throw std::domain_error("evaluate_ratio: empty vector");
    double m = 0.0;
    for (double c : x) {
        if (!std::isfinite(c))
            throw std::domain_error("evaluate_ratio: non-finite coordinate");
        m = std::max(m, std::fabs(c));
    }
    if (m == 0.0)
        throw std::domain_error("evaluate_ratio: zero vector");

    // After rescaling, max|y_i| = 1 exactly and the ratio is
    // sum|y_i| / sum y_i^2.
    KahanSum abs_sum;
    KahanSum sq_sum;
    for (double c : x) {
        const double y = c / m;
        abs_sum.add(std::fabs(y));
        sq_sum.add(y * y);
    }
    return abs_sum.sum / sq_sum.sum;
}

bool check_inequality(std::span<const double> x, double tolerance) {
    const double ratio = evaluate_ratio(x);
    const double bound = sharp_constant(static_cast<int>(x.size())).to_double();
    return ratio <= bound + tolerance;
}

bool check_inequality(std::span<const double> x) {
    return check_inequality(x, 1e-12 * static_cast<double>(x.size()));
}

int search_thread_cap() {
    if (const char* env = std::getenv("SHARPCERT_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed >= 1)
            return static_cast<int>(std::min(parsed, 256L));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

SearchReport random_search(int p, std::int64_t trials, std::uint64_t seed) {
    if (p < 1)
        throw std::domain_error("random_search: p must be >= 1");
    if (trials < 1)
        throw std::domain_error("random_search: trials must be >= 1");

    const double phi_f = sharp_constant(p).to_double();
    const int workers =
        static_cast<int>(std::min<std::int64_t>(search_thread_cap(), trials));

    std::vector<TrialBest> bests(static_cast<std::size_t>(workers));
    if (workers == 1) {
        for (std::int64_t trial = 0; trial < trials; ++trial)
            run_trial(p, trial, seed, phi_f, bests[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const std::int64_t chunk = (trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t lo = w * chunk;
            const std::int64_t hi = std::min<std::int64_t>(lo + chunk, trials);
            pool.emplace_back([&, w, lo, hi] {
                for (std::int64_t trial = lo; trial < hi; ++trial)
                    run_trial(p, trial, seed, phi_f, bests[static_cast<std::size_t>(w)]);
            });
        }
        for (std::thread& t : pool)
            t.join();
    }

    // Deterministic merge: strictly better ratio wins, ties go to the
    // earliest trial, independent of the worker count.
    TrialBest best;
    for (const TrialBest& b : bests) {
        if (b.index < 0)
            continue;
        if (b.ratio > best.ratio || (b.ratio == best.ratio && b.index < best.index) ||
            best.index < 0)
            best = b;
    }

    SearchReport report;
    report.dimension = p;
    report.trials = trials;
    report.seed = seed;
    report.best_ratio = best.ratio;
    report.best_vector = best.vec;
    report.gap_to_phi = phi_f - best.ratio;
    if (!(report.best_ratio <= phi_f + 1e-9))
        throw std::logic_error("random_search: ratio exceeded the sharp bound, library bug");
    return report;
}

GridResult grid_oracle(int p, std::int64_t resolution) {
    if (p < 2)
        throw std::domain_error("grid_oracle: p must be >= 2");
    if (resolution < 2)
        throw std::domain_error("grid_oracle: resolution must be >= 2");

    const double pm1 = static_cast<double>(p - 1);
    const auto f = [pm1](double t) { return (1.0 + pm1 * t) / (1.0 + pm1 * t * t); };
    const double spacing = 1.0 / static_cast<double>(resolution - 1);

    std::int64_t best_i = 0;
    double best_t = 0.0;
    double best_v = f(0.0);
    for (std::int64_t i = 1; i < resolution; ++i) {
        const double t = static_cast<double>(i) * spacing;
        const double value = f(t);
        if (value > best_v) {
            best_v = value;
            best_t = t;
            best_i = i;
        }
    }

    // Refine only when the grid maximum is bracketed by lower neighbors;
    // an endpoint maximum is returned as-is.
    if (best_i == 0 || best_i == resolution - 1)
        return {best_v, best_t};

    double a = static_cast<double>(best_i - 1) * spacing;
    double b = static_cast<double>(best_i + 1) * spacing;
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int iter = 0; iter < 200 && (b - a) > 1e-14; ++iter) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    const double refined_t = 0.5 * (a + b);
    const double refined_v = f(refined_t);
    if (refined_v > best_v)
        return {refined_v, refined_t};
    return {best_v, best_t};
}

SymmetricEigen jacobi_symmetric_eigen(std::vector<double> a, int n) {
    if (n < 1)
        throw std::domain_error("jacobi_symmetric_eigen: empty matrix");
    if (a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw std::domain_error("jacobi_symmetric_eigen: size mismatch");

    std::vector<double> v(a.size(), 0.0);
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i) * n + i] = 1.0;

    const auto idx = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };

    double frob = 0.0;
    for (double e : a)
        frob += e * e;
    frob = std::sqrt(frob);
    const double stop = 1e-15 * (frob > 0.0 ? frob : 1.0);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                off += 2.0 * a[idx(i, j)] * a[idx(i, j)];
        if (std::sqrt(off) <= stop)
            break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[idx(p, q)];
                if (apq == 0.0)
                    continue;
                const double tau = (a[idx(q, q)] - a[idx(p, p)]) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double cos_r = 1.0 / std::sqrt(1.0 + t * t);
                const double sin_r = t * cos_r;

                a[idx(p, p)] -= t * apq;
                a[idx(q, q)] += t * apq;
                a[idx(p, q)] = 0.0;
                a[idx(q, p)] = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a[idx(r, p)];
                        const double arq = a[idx(r, q)];
                        a[idx(r, p)] = cos_r * arp - sin_r * arq;
                        a[idx(p, r)] = a[idx(r, p)];
                        a[idx(r, q)] = sin_r * arp + cos_r * arq;
                        a[idx(q, r)] = a[idx(r, q)];
                    }
                    const double vrp = v[idx(r, p)];
                    const double vrq = v[idx(r, q)];
                    v[idx(r, p)] = cos_r * vrp - sin_r * vrq;
                    v[idx(r, q)] = sin_r * vrp + cos_r * vrq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a[idx(x, x)] < a[idx(y, y)]; });

    SymmetricEigen out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors.assign(a.size(), 0.0);
    for (int j = 0; j < n; ++j) {
        out.values[static_cast<std::size_t>(j)] = a[idx(order[static_cast<std::size_t>(j)],
                                                        order[static_cast<std::size_t>(j)])];
        for (int i = 0; i < n; ++i)
            out.vectors[idx(i, j)] = v[idx(i, order[static_cast<std::size_t>(j)])];
    }
    return out;
}

std::vector<double> numeric_eigenvalues(int p, double C) {
    if (p < 1)
        throw std::domain_error("numeric_eigenvalues: p must be >= 1");
    std::vector<double> a(static_cast<std::size_t>(p) * static_cast<std::size_t>(p), 0.0);
    a[0] = C - 1.0;
    for (int i = 1; i < p; ++i) {
        a[static_cast<std::size_t>(i) * p + i] = C;
        a[static_cast<std::size_t>(i)] = -0.5;
        a[static_cast<std::size_t>(i) * p] = -0.5;
    }
    return jacobi_symmetric_eigen(std::move(a), p).values;
}

std::string render_search_report(const SearchReport& report) {
    std::string out = "search-v1\n";
    out += "dimension = " + std::to_string(report.dimension) + "\n";
    out += "trials = " + std::to_string(report.trials) + "\n";
    out += "seed = " + std::to_string(report.seed) + "\n";
    out += "best_ratio = ";
    append_double(out, report.best_ratio);
    out += "\nbest_vector = ";
    for (std::size_t i = 0; i < report.best_vector.size(); ++i) {
        if (i > 0)
            out += ", ";
        append_double(out, report.best_vector[i]);
    }
    out += "\ngap_to_phi = ";
    append_double(out, report.gap_to_phi);
    out += "\n";
    return out;
}

}  // namespace sharpcert
