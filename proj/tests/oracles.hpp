#pragma once

// Brute-force references used by the tests. Nothing here calls into the
// series engine or the closed-form evolution paths it checks.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

/// Kahan-summed partial sum of f(0) + ... + f(n-1).
inline double partial_sum(const std::function<double(std::size_t)>& f, std::size_t n) {
    double sum = 0.0;
    double c = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(sum)) {
            sum += f(k);
            continue;
        }
        const double y = f(k) - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

/// Partial sums at every index in `checkpoints` (ascending).
inline std::vector<double> partial_sums_at(const std::function<double(std::size_t)>& f,
                                           const std::vector<std::size_t>& checkpoints) {
    std::vector<double> out;
    double sum = 0.0;
    double c = 0.0;
    std::size_t k = 0;
    for (std::size_t cp : checkpoints) {
        for (; k < cp; ++k) {
            if (!std::isfinite(sum)) {
                sum += f(k);
                continue;
            }
            const double y = f(k) - c;
            const double t = sum + y;
            c = (t - sum) - y;
            sum = t;
        }
        out.push_back(sum);
    }
    return out;
}

/// Partial products of f over [0, n), as a log to avoid under/overflow.
inline double log_partial_product(const std::function<double(std::size_t)>& f, std::size_t n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += std::log(f(k));
    return acc;
}

/// log|det| by Gaussian elimination with partial pivoting on a dense
/// row-major n x n matrix.
inline double log_abs_det(std::vector<double> a, std::size_t n) {
    double log_det = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        }
        const double p = a[pivot * n + col];
        if (p == 0.0) return -INFINITY;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
        }
        log_det += std::log(std::abs(p));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r * n + col] / p;
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
        }
    }
    return log_det;
}

/// Forward replay of the supply rule from scratch: returns residuals after
/// each demand, or an empty vector if some demand cannot be met.
inline std::vector<double> replay_residuals(double lambda, const std::vector<std::pair<double, double>>& tm,
                                            double m0) {
    std::vector<double> out;
    double have = m0;
    double prev = 0.0;
    for (auto [t, m] : tm) {
        have *= std::exp((t - prev) * lambda);
        if (have < m * (1.0 - 1e-12)) return {};
        have -= m;
        if (have < 0.0) have = 0.0;
        out.push_back(have);
        prev = t;
    }
    return out;
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

}  // namespace oracle
