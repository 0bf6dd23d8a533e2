#include "rsskl/moments.hpp"

#include <cmath>
#include <string>

#include "rsskl/errors.hpp"

namespace rsskl {

namespace {

double sum_sq_about(const std::vector<double>& values, double center) {
    double acc = 0.0;
    for (double v : values) {
        const double d = v - center;
        acc += d * d;
    }
    return acc;
}

}  // namespace

double rss_mean(const RankedSetSample& rss) {
    double acc = 0.0;
    for (double v : rss.cells()) acc += v;
    return acc / rss.n();
}

double stokes_variance(const RankedSetSample& rss) {
    const int n = rss.n();
    if (n < 2) throw insufficient_data("stokes variance needs rk >= 2");
    return sum_sq_about(rss.cells(), rss_mean(rss)) / (n - 1);
}

double maceachern_variance(const RankedSetSample& rss) {
    const int k = rss.k();
    const int r = rss.r();
    if (r < 2) throw insufficient_cycles("maceachern variance needs r >= 2 cycles");
    if (k < 2) throw insufficient_set_size("maceachern variance needs set size k >= 2");

    const double mu = rss_mean(rss);
    double ss_total = 0.0;
    double ss_within = 0.0;
    for (int j = 0; j < k; ++j) {
        double rank_mean = 0.0;
        for (int i = 0; i < r; ++i) rank_mean += rss.cell(i, j);
        rank_mean /= r;
        for (int i = 0; i < r; ++i) {
            const double v = rss.cell(i, j);
            ss_total += (v - mu) * (v - mu);
            ss_within += (v - rank_mean) * (v - rank_mean);
        }
    }
    const double mst = (ss_total - ss_within) / (k - 1);
    const double mse = ss_within / (static_cast<double>(k) * (r - 1));
    const int n = rss.n();
    return ((k - 1) * mst + (n - k + 1) * mse) / n;
}

RssMoments rss_moments(const RankedSetSample& rss) {
    RssMoments out;
    out.mean = rss_mean(rss);
    out.stokes_var = stokes_variance(rss);
    const int k = rss.k();
    const int r = rss.r();
    out.per_rank_means.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        double acc = 0.0;
        for (int i = 0; i < r; ++i) acc += rss.cell(i, j);
        out.per_rank_means[static_cast<std::size_t>(j)] = acc / r;
    }
    if (r >= 2 && k >= 2) {
        double ss_total = 0.0;
        double ss_within = 0.0;
        for (int j = 0; j < k; ++j) {
            const double rank_mean = out.per_rank_means[static_cast<std::size_t>(j)];
            for (int i = 0; i < r; ++i) {
                const double v = rss.cell(i, j);
                ss_total += (v - out.mean) * (v - out.mean);
                ss_within += (v - rank_mean) * (v - rank_mean);
            }
        }
        out.mst = (ss_total - ss_within) / (k - 1);
        out.mse = ss_within / (static_cast<double>(k) * (r - 1));
        out.maceachern_var = ((k - 1) * *out.mst + (rss.n() - k + 1) * *out.mse) / rss.n();
    }
    return out;
}

ParkBreakpoints park_breakpoints(const SimpleSample& sample, int m) {
    if (!sample.sorted) throw validation_error("park breakpoints: sample must be sorted");
    const int n = sample.n();
    if (n < 2 || m < 1 || 2 * m > n)
        throw invalid_window("park breakpoints: need n >= 2m, got n=" + std::to_string(n) +
                             ", m=" + std::to_string(m));
    const auto& v = sample.values;
    auto x = [&](int i) { return v[i - 1]; };  // 1-based order statistics

    std::vector<double> eta(static_cast<std::size_t>(n) + 1, 0.0);
    // Interior: eta_i = average of x_(i-m)..x_(i+m-1), for m+1 <= i <= n-m+1.
    for (int i = m + 1; i <= n - m + 1; ++i) {
        double s = 0.0;
        for (int t = i - m; t <= i + m - 1; ++t) s += x(t);
        eta[i - 1] = s / (2.0 * m);
    }
    // Lower tail: eta_i = eta_{i+1} - (x_(m+i) - x_(1)) / (m+i-1).
    for (int i = m; i >= 1; --i)
        eta[i - 1] = eta[i] - (x(m + i) - x(1)) / (m + i - 1);
    // Upper tail: eta_i = eta_{i-1} + (x_(n) - x_(i-m-1)) / (n+m-i+1).
    for (int i = n - m + 2; i <= n + 1; ++i)
        eta[i - 1] = eta[i - 2] + (x(n) - x(i - m - 1)) / (n + m - i + 1);

    for (int i = 1; i <= n; ++i)
        if (!(eta[i] > eta[i - 1]))
            throw degenerate_breakpoints("breakpoints not strictly increasing at index " +
                                         std::to_string(i) + " (tied data)");
    return ParkBreakpoints{std::move(eta), m, n};
}

CorrectedMoments corrected_moments(const ParkBreakpoints& bp) {
    const int n = bp.n;
    if (n < 1 || bp.eta.size() != static_cast<std::size_t>(n) + 1)
        throw validation_error("corrected moments: breakpoint count must be n + 1");
    double mean = 0.0;
    double second = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = bp.eta[i];
        const double b = bp.eta[i + 1];
        if (!(b > a)) throw degenerate_breakpoints("breakpoints not strictly increasing");
        mean += 0.5 * (a + b);
        second += (a * a + a * b + b * b) / 3.0;  // = (b^3 - a^3) / (3 (b - a))
    }
    mean /= n;
    second /= n;
    return CorrectedMoments{mean, std::max(0.0, second - mean * mean)};
}

}  // namespace rsskl
