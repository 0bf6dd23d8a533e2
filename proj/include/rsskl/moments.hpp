#pragma once

#include <optional>
#include <vector>

#include "rsskl/entropy.hpp"
#include "rsskl/sampling.hpp"

namespace rsskl {

struct RssMoments {
    double mean = 0.0;
    double stokes_var = 0.0;
    std::vector<double> per_rank_means;  // averaged over cycles, one per rank
    // Present when r >= 2 and k >= 2.
    std::optional<double> maceachern_var;
    std::optional<double> mst;
    std::optional<double> mse;
};

// Grand mean of all r*k cells.
double rss_mean(const RankedSetSample& rss);

// Pooled sample variance with divisor rk - 1.
double stokes_variance(const RankedSetSample& rss);

// Unbiased variance ((k-1) MST + (rk-k+1) MSE) / (rk) where
//   MST = [sum (X - mean)^2 - sum (X - rank mean)^2] / (k-1)
//   MSE = sum (X - rank mean)^2 / (k (r-1)).
double maceachern_variance(const RankedSetSample& rss);

RssMoments rss_moments(const RankedSetSample& rss);

// Breakpoints eta_1..eta_{n+1} of the piecewise-uniform density with mass
// 1/n on each interval: interior points average 2m consecutive order
// statistics, the tails extend recursively from the interior anchors.
struct ParkBreakpoints {
    std::vector<double> eta;
    int m = 0;
    int n = 0;
};

ParkBreakpoints park_breakpoints(const SimpleSample& sample, int m);

struct CorrectedMoments {
    double mean = 0.0;
    double variance = 0.0;
};

// Moments of the piecewise-uniform density on the breakpoints.
CorrectedMoments corrected_moments(const ParkBreakpoints& bp);

}  // namespace rsskl
