// Independent oracle implementations used only by tests. These deliberately
// do not share code paths with the library: naive enumeration instead of the
// incremental codeword walk, direct tail sums instead of the deficit-space
// evaluator, boost special functions for reference distributions.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "nfvsim/generator_matrix.hpp"

namespace oracles {

// Minimum Hamming weight by plain recursive message enumeration.
inline int naive_min_distance(const nfvsim::GeneratorMatrix& code) {
    const int K = code.K, N = code.N, p = code.p_prime;
    int best = N + 1;
    std::vector<int> message(K, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == K) {
            bool zero = true;
            for (int v : message)
                if (v != 0) zero = false;
            if (zero) return;
            int weight = 0;
            for (int c = 0; c < N; ++c) {
                long long acc = 0;
                for (int r = 0; r < K; ++r) acc += 1LL * message[r] * code.at(r, c);
                if (acc % p != 0) ++weight;
            }
            best = std::min(best, weight);
            return;
        }
        for (int v = 0; v < p; ++v) {
            message[pos] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    return best;
}

inline double binom_coeff(int n, int k) {
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * double(n - i) / double(i + 1);
    return c;
}

// Pr(Binomial(n, q) >= k_min), summed directly.
inline double binom_upper_tail(int n, double q, int k_min) {
    double total = 0.0;
    for (int k = std::max(0, k_min); k <= n; ++k)
        total += binom_coeff(n, k) * std::pow(q, k) * std::pow(1.0 - q, n - k);
    return total;
}

// Pr(Binomial(n, q) <= k_max).
inline double binom_lower_tail(int n, double q, int k_max) {
    double total = 0.0;
    for (int k = 0; k <= std::min(n, k_max); ++k)
        total += binom_coeff(n, k) * std::pow(q, k) * std::pow(1.0 - q, n - k);
    return total;
}

// Kolmogorov-Smirnov statistic of samples against a model CDF.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - double(i) / n));
        d = std::max(d, std::abs(double(i + 1) / n - f));
    }
    return d;
}

// Maximize a unimodal function on [lo, hi]: coarse grid then golden section.
inline std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                            double lo, double hi, int grid_points = 512) {
    double best_x = lo, best_v = f(lo);
    for (int i = 1; i <= grid_points; ++i) {
        const double x = lo + (hi - lo) * i / grid_points;
        const double v = f(x);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    }
    const double step = (hi - lo) / grid_points;
    double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-12) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

// Pr(ChiSquared(dof) > x).
inline double chi_squared_sf(double dof, double x) {
    boost::math::chi_squared_distribution<double> dist(dof);
    return boost::math::cdf(boost::math::complement(dist, x));
}

}  // namespace oracles
