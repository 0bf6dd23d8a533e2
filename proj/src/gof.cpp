#include "rsskl/gof.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rsskl/errors.hpp"

namespace rsskl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

EntropyEstimate rss_entropy(const RankedSetSample& rss, int m, EstimatorKind entropy) {
    switch (entropy) {
        case EstimatorKind::RssPooledH1: return h1(rss, m);
        case EstimatorKind::RssPerCycleH2: return h2(rss, m);
        default:
            throw validation_error("ranked-set statistics take the h1 or h2 estimator");
    }
}

}  // namespace

const char* test_name(TestKind test) {
    return test == TestKind::Exponentiality ? "exp" : "norm";
}

TestKind parse_test(std::string_view text) {
    if (text == "exp" || text == "exponentiality") return TestKind::Exponentiality;
    if (text == "norm" || text == "normality") return TestKind::Normality;
    throw parse_error("unknown test '" + std::string(text) + "'");
}

const char* scheme_name(Scheme scheme) {
    return scheme == Scheme::SRS ? "srs" : "rss";
}

Scheme parse_scheme(std::string_view text) {
    if (text == "srs") return Scheme::SRS;
    if (text == "rss") return Scheme::RSS;
    throw parse_error("unknown scheme '" + std::string(text) + "'");
}

const char* variant_name(Variant variant) {
    switch (variant) {
        case Variant::Tc: return "tc";
        case Variant::RssT: return "rss-t";
        case Variant::KL1: return "kl1";
        case Variant::KL2: return "kl2";
    }
    return "?";
}

Variant parse_variant(std::string_view text) {
    if (text == "tc") return Variant::Tc;
    if (text == "rss-t" || text == "rsst") return Variant::RssT;
    if (text == "kl1") return Variant::KL1;
    if (text == "kl2") return Variant::KL2;
    throw parse_error("unknown variant '" + std::string(text) + "'");
}

GofStatistic exp_statistic_srs(const SimpleSample& sample, int m) {
    const auto cm = corrected_moments(park_breakpoints(sample, m));
    if (!(cm.mean > 0.0))
        throw invalid_scale("exponentiality statistic: corrected mean is not positive");
    const auto H = ebrahimi(sample, m);
    return {TestKind::Exponentiality, Scheme::SRS, Variant::Tc,
            1.0 + std::log(cm.mean) - H.value, sample.n(), m};
}

GofStatistic exp_statistic_rss(const RankedSetSample& rss, int m) {
    const double mu = rss_mean(rss);
    if (!(mu > 0.0)) throw invalid_scale("exponentiality statistic: sample mean is not positive");
    const auto H = h1(rss, m);
    return {TestKind::Exponentiality, Scheme::RSS, Variant::RssT, 1.0 + std::log(mu) - H.value,
            rss.n(), m};
}

GofStatistic norm_statistic_srs(const SimpleSample& sample, int m) {
    const auto cm = corrected_moments(park_breakpoints(sample, m));
    if (!(cm.variance > 0.0))
        throw degenerate_variance("normality statistic: corrected variance is zero");
    const auto H = ebrahimi(sample, m);
    return {TestKind::Normality, Scheme::SRS, Variant::Tc,
            0.5 * std::log(kTwoPi * cm.variance) + 0.5 - H.value, sample.n(), m};
}

GofStatistic kl1(const RankedSetSample& rss, int m, EstimatorKind entropy) {
    const double var = stokes_variance(rss);
    if (!(var > 0.0)) throw degenerate_variance("kl1: stokes variance is zero");
    const auto H = rss_entropy(rss, m, entropy);
    return {TestKind::Normality, Scheme::RSS, Variant::KL1,
            0.5 * std::log(kTwoPi * var) + 0.5 - H.value, rss.n(), m};
}

GofStatistic kl2(const RankedSetSample& rss, int m, EstimatorKind entropy) {
    const double var = maceachern_variance(rss);
    if (!(var > 0.0)) throw degenerate_variance("kl2: maceachern variance is not positive");
    const double mu = rss_mean(rss);
    double quad = 0.0;
    for (double v : rss.cells()) quad += (v - mu) * (v - mu);
    quad /= 2.0 * rss.n() * var;
    const auto H = rss_entropy(rss, m, entropy);
    return {TestKind::Normality, Scheme::RSS, Variant::KL2,
            0.5 * std::log(kTwoPi * var) + quad - H.value, rss.n(), m};
}

double i_mn(const SimpleSample& sample, int m, double mu, double sigma) {
    if (!(sigma > 0.0)) throw validation_error("i_mn: sigma must be positive");
    const auto H = vasicek(sample, m);
    double quad = 0.0;
    for (double v : sample.values) {
        const double z = (v - mu) / sigma;
        quad += z * z;
    }
    quad /= 2.0 * sample.n();
    return 0.5 * std::log(kTwoPi * sigma * sigma) + quad - H.value;
}

double k_mn(const RankedSetSample& rss, int m, double mu, double sigma, EstimatorKind entropy) {
    if (!(sigma > 0.0)) throw validation_error("k_mn: sigma must be positive");
    const auto H = rss_entropy(rss, m, entropy);
    double quad = 0.0;
    for (double v : rss.cells()) {
        const double z = (v - mu) / sigma;
        quad += z * z;
    }
    quad /= 2.0 * rss.n();
    return 0.5 * std::log(kTwoPi * sigma * sigma) + quad - H.value;
}

bool decide(const GofStatistic& stat, double critical) {
    return stat.value > critical;
}

}  // namespace rsskl
