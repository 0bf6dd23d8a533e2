#include "rsskl/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rsskl/errors.hpp"

namespace rsskl {

namespace {

void require_window(int n, int m, const char* who) {
    if (n < 2) throw invalid_window(std::string(who) + ": sample size must be at least 2");
    if (m < 1 || m > WindowSpec::max_for(n))
        throw invalid_window(std::string(who) + ": window m=" + std::to_string(m) +
                             " outside 1.." + std::to_string(WindowSpec::max_for(n)) +
                             " for size " + std::to_string(n));
}

void require_sorted(const SimpleSample& sample, const char* who) {
    if (!sample.sorted) throw validation_error(std::string(who) + ": sample must be sorted");
}

// Mean of log( n * spacing_i / (w_i * m) ) over i = 1..n with the boundary
// convention x_(i) = x_(1) for i < 1 and x_(n) for i > n.
double mean_log_spacing(std::span<const double> x, int m, std::span<const double> w) {
    const int n = static_cast<int>(x.size());
    double acc = 0.0;
    for (int i = 1; i <= n; ++i) {
        const int lo = std::max(i - m, 1);
        const int hi = std::min(i + m, n);
        const double d = x[hi - 1] - x[lo - 1];
        if (!(d > 0.0))
            throw degenerate_spacing("zero spacing across window at i=" + std::to_string(i) +
                                     ", m=" + std::to_string(m));
        acc += std::log(n * d / (w[i - 1] * m));
    }
    return acc / n;
}

}  // namespace

const char* estimator_name(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::Vasicek: return "vasicek";
        case EstimatorKind::Ebrahimi: return "ebrahimi";
        case EstimatorKind::RssPooledH1: return "h1";
        case EstimatorKind::RssPerCycleH2: return "h2";
    }
    return "?";
}

EstimatorKind parse_estimator(std::string_view text) {
    if (text == "vasicek") return EstimatorKind::Vasicek;
    if (text == "ebrahimi") return EstimatorKind::Ebrahimi;
    if (text == "h1") return EstimatorKind::RssPooledH1;
    if (text == "h2") return EstimatorKind::RssPerCycleH2;
    throw parse_error("unknown estimator '" + std::string(text) + "'");
}

std::vector<double> spacing_weights(int n, int m) {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        double c;
        if (i <= m)
            c = 1.0 + (i - 1.0) / m;
        else if (i <= n - m)
            c = 2.0;
        else
            c = 1.0 + static_cast<double>(n - i) / m;
        w[i - 1] = c;
    }
    return w;
}

EntropyEstimate vasicek(const SimpleSample& sample, int m) {
    require_sorted(sample, "vasicek");
    const int n = sample.n();
    require_window(n, m, "vasicek");
    const std::vector<double> w(static_cast<std::size_t>(n), 2.0);
    return {mean_log_spacing(sample.values, m, w), EstimatorKind::Vasicek, n, m};
}

EntropyEstimate ebrahimi(const SimpleSample& sample, int m) {
    require_sorted(sample, "ebrahimi");
    const int n = sample.n();
    require_window(n, m, "ebrahimi");
    return {mean_log_spacing(sample.values, m, spacing_weights(n, m)), EstimatorKind::Ebrahimi, n,
            m};
}

EntropyEstimate h1(const RankedSetSample& rss, int m) {
    const SimpleSample pooled = pool_and_sort(rss);
    require_window(pooled.n(), m, "h1");
    const auto est = ebrahimi(pooled, m);
    return {est.value, EstimatorKind::RssPooledH1, est.n, m};
}

EntropyEstimate h2(const RankedSetSample& rss, int m) {
    const int k = rss.k();
    require_window(k, m, "h2");
    const auto w = spacing_weights(k, m);
    std::vector<double> row;
    double acc = 0.0;
    for (int i = 0; i < rss.r(); ++i) {
        auto cyc = rss.cycle(i);
        row.assign(cyc.begin(), cyc.end());
        std::sort(row.begin(), row.end());
        acc += mean_log_spacing(row, m, w);
    }
    return {acc / rss.r(), EstimatorKind::RssPerCycleH2, rss.n(), m};
}

}  // namespace rsskl
