#pragma once

#include <string_view>

#include "rsskl/entropy.hpp"
#include "rsskl/moments.hpp"

namespace rsskl {

enum class TestKind { Exponentiality, Normality };
enum class Scheme { SRS, RSS };

// Tc is the SRS statistic with corrected (breakpoint) moments; RssT its
// ranked-set analog for the exponentiality test; KL1 and KL2 are the
// normality statistics with the Stokes and MacEachern variance estimators.
enum class Variant { Tc, RssT, KL1, KL2 };

const char* test_name(TestKind test);
TestKind parse_test(std::string_view text);
const char* scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view text);
const char* variant_name(Variant variant);
Variant parse_variant(std::string_view text);

struct GofStatistic {
    TestKind test;
    Scheme scheme;
    Variant variant;
    double value = 0.0;
    int n = 0;
    int m = 0;
};

// 1 + log(corrected mean) - H_c, corrected mean from the breakpoint density
// and H_c the corrected spacings estimate. Scale invariant.
GofStatistic exp_statistic_srs(const SimpleSample& sample, int m);

// 1 + log(rss mean) - h1. Scale invariant.
GofStatistic exp_statistic_rss(const RankedSetSample& rss, int m);

// log sqrt(2 pi corrected variance) + 1/2 - H_c. Affine invariant.
GofStatistic norm_statistic_srs(const SimpleSample& sample, int m);

// log sqrt(2 pi stokes variance) + 1/2 - H. Affine invariant.
GofStatistic kl1(const RankedSetSample& rss, int m,
                 EstimatorKind entropy = EstimatorKind::RssPooledH1);

// log sqrt(2 pi maceachern variance) + (1/2n) sum ((x - mean)/sd)^2 - H.
// Needs r >= 2 cycles. Affine invariant.
GofStatistic kl2(const RankedSetSample& rss, int m,
                 EstimatorKind entropy = EstimatorKind::RssPooledH1);

// Known-parameter KL estimates against a normal null.
double i_mn(const SimpleSample& sample, int m, double mu, double sigma);
double k_mn(const RankedSetSample& rss, int m, double mu, double sigma,
            EstimatorKind entropy = EstimatorKind::RssPooledH1);

// One-sided upper-tail rejection: reject iff value > critical.
bool decide(const GofStatistic& stat, double critical);

}  // namespace rsskl
