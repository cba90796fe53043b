#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "gaussmp/errors.hpp"
#include "gaussmp/quadrature.hpp"
#include "gaussmp/rng.hpp"

namespace gaussmp {

// Parameters of the Marchenko-Pastur law at aspect ratio r = m/n. Support is
// [a, b] = [(1-sqrt(r))^2, (1+sqrt(r))^2]; r = 1 collapses the left edge to 0
// (quarter-circle case). Ratios above 1 are rejected: they put point mass at
// zero, outside this library's regime.
struct MPParams {
    double r = 0.0;
    double a = 0.0;
    double b = 0.0;

    static MPParams from_ratio(double r) {
        if (!(r > 0.0) || r > 1.0) throw Error("MPParams: ratio must be in (0, 1]");
        const double s = std::sqrt(r);
        return MPParams{r, (1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s)};
    }
};

struct SpectralSample {
    std::vector<double> eigenvalues;  // ascending
    int m = 0;                        // matrix dimension
    int n = 0;                        // vector count
};

struct Histogram {
    std::vector<double> bin_edges;  // strictly increasing, size = bins + 1
    std::vector<double> densities;  // per bin, sum(density * width) = 1
};

// Empirical covariance of n i.i.d. standard normal vectors in dimension m:
// Sigma = Y Y^T / n with Y filled row by row from the seeded stream. The
// product is symmetrized before the eigensolve to keep the solver's
// symmetric-input contract exact.
inline SpectralSample sample_wishart(int m, int n, std::uint64_t seed) {
    if (m < 1 || m > n) throw Error("sample_wishart: need 1 <= m <= n");
    NormalSampler rng(seed);
    Eigen::MatrixXd y(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) y(i, j) = rng.normal();
    Eigen::MatrixXd sigma = (y * y.transpose()) / static_cast<double>(n);
    sigma = 0.5 * (sigma + sigma.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return SpectralSample{{ev.data(), ev.data() + ev.size()}, m, n};
}

// Density sqrt((x-a)(b-x)) / (2 pi x r) on [a, b], zero outside. For r = 1
// the left edge sits at 0; the 1/x singularity there is integrable and the
// density is defined as 0 at x = 0 itself.
inline double mp_pdf(double x, const MPParams& params) {
    if (x <= params.a || x >= params.b) return 0.0;
    const double prod = (x - params.a) * (params.b - x);
    if (prod <= 0.0) return 0.0;
    return std::sqrt(prod) / (2.0 * M_PI * x * params.r);
}

namespace detail {

// CDF integrand after x = mid + half*sin(theta): the substitution absorbs
// the square-root edge zeros, and for r = 1 the 1/x pole at theta = -pi/2
// cancels algebraically, so the integrand is smooth on [-pi/2, pi/2].
inline double mp_cdf_integrand(double theta, const MPParams& params) {
    const double mid = 0.5 * (params.a + params.b);
    const double half = 0.5 * (params.b - params.a);
    const double s = std::sin(theta);
    if (params.a == 0.0) return half * (1.0 - s) / (2.0 * M_PI);
    const double c = std::cos(theta);
    return half * half * c * c / (2.0 * M_PI * params.r * (mid + half * s));
}

}  // namespace detail

inline double mp_cdf(double x, const MPParams& params) {
    if (x <= params.a) return 0.0;
    const double mid = 0.5 * (params.a + params.b);
    const double half = 0.5 * (params.b - params.a);
    const double u = std::clamp((std::min(x, params.b) - mid) / half, -1.0, 1.0);
    const double theta_hi = std::asin(u);
    const double cdf = integrate(
        [&params](double theta) { return detail::mp_cdf_integrand(theta, params); },
        -0.5 * M_PI, theta_hi, 1e-10);
    return std::clamp(cdf, 0.0, 1.0);
}

// Two-sided Kolmogorov-Smirnov statistic: the ECDF jumps at each sample
// point, so the sup gap is attained just before or at a jump. Evaluated as
// max_i of max(i/m - F(x_i), F(x_i) - (i-1)/m) over the sorted sample.
inline double ks_distance(const SpectralSample& sample, const MPParams& params) {
    const auto& xs = sample.eigenvalues;
    if (xs.empty()) throw Error("ks_distance: empty sample");
    const double m = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = mp_cdf(xs[i], params);
        d = std::max(d, (static_cast<double>(i) + 1.0) / m - f);
        d = std::max(d, f - static_cast<double>(i) / m);
    }
    return d;
}

namespace detail {

// Linear-interpolation quantile on sorted data (the convention numpy uses).
inline double sorted_quantile(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline Histogram histogram_with_bins(const std::vector<double>& sorted, int n_bins) {
    const double lo = sorted.front();
    const double hi = sorted.back();
    const double m = static_cast<double>(sorted.size());
    Histogram h;
    if (lo == hi) {
        // All mass in one spot: emit a single unit-width bin centered on it.
        h.bin_edges = {lo - 0.5, lo + 0.5};
        h.densities = {1.0};
        return h;
    }
    h.bin_edges.resize(n_bins + 1);
    for (int k = 0; k <= n_bins; ++k)
        h.bin_edges[k] = lo + (hi - lo) * static_cast<double>(k) / n_bins;
    h.bin_edges.back() = hi;
    for (int k = 0; k < n_bins; ++k)
        if (!(h.bin_edges[k] < h.bin_edges[k + 1]))
            throw Error("histogram: bin width underflow, reduce bin count");
    std::vector<int> counts(n_bins, 0);
    const double width = (hi - lo) / n_bins;
    for (double x : sorted) {
        int k = static_cast<int>((x - lo) / width);
        k = std::clamp(k, 0, n_bins - 1);
        ++counts[k];
    }
    h.densities.resize(n_bins);
    for (int k = 0; k < n_bins; ++k)
        h.densities[k] = counts[k] / (m * (h.bin_edges[k + 1] - h.bin_edges[k]));
    return h;
}

}  // namespace detail

// Density-normalized histogram. n_bins <= 0 selects Freedman-Diaconis
// binning, falling back to ceil(sqrt(m)) bins when the IQR vanishes.
inline Histogram empirical_density(const std::vector<double>& values, int n_bins = 0) {
    if (values.empty()) throw Error("empirical_density: empty sample");
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    for (double x : sorted)
        if (!std::isfinite(x)) throw Error("empirical_density: non-finite value");
    const double m = static_cast<double>(sorted.size());
    if (n_bins <= 0) {
        const double iqr =
            detail::sorted_quantile(sorted, 0.75) - detail::sorted_quantile(sorted, 0.25);
        const double range = sorted.back() - sorted.front();
        if (iqr > 0.0 && range > 0.0) {
            const double width = 2.0 * iqr / std::cbrt(m);
            n_bins = std::max(1, static_cast<int>(std::ceil(range / width)));
        } else {
            n_bins = static_cast<int>(std::ceil(std::sqrt(m)));
        }
    }
    return detail::histogram_with_bins(sorted, n_bins);
}

inline Histogram empirical_density(const SpectralSample& sample, int n_bins = 0) {
    return empirical_density(sample.eigenvalues, n_bins);
}

struct LogGasOptions {
    // false reproduces H = -sum V(l_i) - sum_{i<j} ln|l_i - l_j| verbatim;
    // true flips the potential term to the usual +sum V convention.
    bool conventional_signs = false;
};

inline double log_gas_energy(const std::vector<double>& eigenvalues,
                             const std::function<double(double)>& potential,
                             LogGasOptions options = {}) {
    for (double x : eigenvalues)
        if (!std::isfinite(x)) throw Error("log_gas_energy: non-finite eigenvalue");
    double pot = 0.0;
    for (double x : eigenvalues) pot += potential(x);
    double interaction = 0.0;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        for (std::size_t j = i + 1; j < eigenvalues.size(); ++j) {
            const double gap = std::abs(eigenvalues[i] - eigenvalues[j]);
            if (gap == 0.0)
                throw DegenerateSpectrumError("log_gas_energy: coincident eigenvalues");
            interaction += std::log(gap);
        }
    const double pot_sign = options.conventional_signs ? 1.0 : -1.0;
    return pot_sign * pot - interaction;
}

}  // namespace gaussmp
