#pragma once

#include <string_view>
#include <vector>

#include "rsskl/sampling.hpp"

namespace rsskl {

enum class EstimatorKind { Vasicek, Ebrahimi, RssPooledH1, RssPerCycleH2 };

const char* estimator_name(EstimatorKind kind);
EstimatorKind parse_estimator(std::string_view text);

// Spacing window m. Valid range is 1..n/2 for the ordered-sample estimators
// (n = pooled size for h1) and 1..k/2 for the per-cycle one.
struct WindowSpec {
    int m = 1;

    static int max_for(int sample_size) { return sample_size / 2; }
};

struct EntropyEstimate {
    double value = 0.0;  // nats
    EstimatorKind estimator = EstimatorKind::Vasicek;
    int n = 0;
    int m = 0;
};

// Boundary-correction weights: 1+(i-1)/m for i <= m, 2 in the middle,
// 1+(n-i)/m for i > n-m. With k in place of n these are the per-cycle
// weights d_i.
std::vector<double> spacing_weights(int n, int m);

// (1/n) sum log( n (x_(i+m) - x_(i-m)) / (2m) ), with x_(i) clamped to the
// extremes outside 1..n. Requires a sorted sample.
EntropyEstimate vasicek(const SimpleSample& sample, int m);

// Same spacings with the corrected weights c_i in place of 2.
EntropyEstimate ebrahimi(const SimpleSample& sample, int m);

// Corrected spacings estimator on the pooled ordered ranked set sample,
// n = r*k.
EntropyEstimate h1(const RankedSetSample& rss, int m);

// Per-cycle variant: each cycle ordered separately, spacings within a cycle
// of size k, weights d_i; the r cycle contributions are averaged.
EntropyEstimate h2(const RankedSetSample& rss, int m);

}  // namespace rsskl
