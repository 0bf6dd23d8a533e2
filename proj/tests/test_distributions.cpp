#include <doctest.h>

#include <cmath>
#include <vector>

#include "rsskl/distributions.hpp"
#include "rsskl/errors.hpp"

using namespace rsskl;

namespace {

// Midpoint-rule integration of f over [a, b], used as the independent check
// that densities normalize and have the stated moments. Midpoints never
// touch the interval ends, so open supports and endpoint singularities are
// harmless.
template <typename F>
double midpoint(F f, double a, double b, int intervals) {
    const double h = (b - a) / intervals;
    double acc = 0.0;
    for (int i = 0; i < intervals; ++i) acc += f(a + (i + 0.5) * h);
    return acc * h;
}

// Integration ranges wide enough for 1e-7 tail mass; chisq integrates in
// u = sqrt(x) to tame the df=1 singularity, the t over a range where the
// polynomial tail is negligible.
double integral_of_pdf(const Distribution& d) {
    switch (d.kind()) {
        case Distribution::Kind::Uniform01:
            return midpoint([&](double x) { return d.pdf(x); }, 0.0, 1.0, 2000);
        case Distribution::Kind::Normal:
            return midpoint([&](double x) { return d.pdf(x); }, -10.0, 10.0, 40000);
        case Distribution::Kind::StudentT:
            return midpoint([&](double x) { return d.pdf(x); }, -400.0, 400.0, 800000);
        case Distribution::Kind::ChiSquare:
            // substitute x = u^2: integral of 2 u pdf(u^2) du
            return midpoint([&](double u) { return 2.0 * u * d.pdf(u * u); }, 0.0, 10.0, 40000);
        case Distribution::Kind::Lognormal:
            return midpoint([&](double x) { return d.pdf(x); }, 0.0, 410.0, 800000);
        default:
            return midpoint([&](double x) { return d.pdf(x); }, 0.0, 60.0, 400000);
    }
}

double mean_by_quadrature(const Distribution& d) {
    return midpoint([&](double x) { return x * d.pdf(x); }, 0.0, 80.0, 400000);
}

std::vector<Distribution> paper_distributions() {
    return {Distribution::uniform01(),      Distribution::exponential(1.0),
            Distribution::normal(0.0, 1.0), Distribution::gamma(1.5),
            Distribution::gamma(2.0),       Distribution::gamma(3.0),
            Distribution::weibull(1.5),     Distribution::weibull(2.0),
            Distribution::lognormal(0.5),   Distribution::lognormal(1.0),
            Distribution::chi_square(1),    Distribution::chi_square(2),
            Distribution::chi_square(4),    Distribution::student_t(3),
            Distribution::student_t(5)};
}

}  // namespace

TEST_CASE("pdf values at the displayed parameterizations") {
    CHECK(Distribution::uniform01().pdf(0.5) == doctest::Approx(1.0));
    CHECK(Distribution::exponential(1.0).pdf(0.0) == doctest::Approx(1.0));
    // gamma(2) at 1: x^(a-1) e^-x / Gamma(a) = e^-1
    CHECK(Distribution::gamma(2.0).pdf(1.0) == doctest::Approx(0.36787944117144233).epsilon(1e-12));
    CHECK(Distribution::weibull(2.0).pdf(1.0) == doctest::Approx(2.0 * std::exp(-1.0)));
    CHECK(Distribution::exponential(2.0).pdf(1.0) == doctest::Approx(2.0 * std::exp(-2.0)));
}

TEST_CASE("pdf vanishes outside the support") {
    CHECK(Distribution::uniform01().pdf(-0.1) == 0.0);
    CHECK(Distribution::uniform01().pdf(1.1) == 0.0);
    CHECK(Distribution::exponential(1.0).pdf(-1.0) == 0.0);
    CHECK(Distribution::gamma(2.0).pdf(-0.5) == 0.0);
    CHECK(Distribution::weibull(1.5).pdf(0.0) == 0.0);
    CHECK(Distribution::lognormal(1.0).pdf(0.0) == 0.0);
    CHECK(Distribution::chi_square(4).pdf(-2.0) == 0.0);
}

TEST_CASE("invalid parameters are rejected at construction") {
    CHECK_THROWS_AS(Distribution::gamma(0.0), validation_error);
    CHECK_THROWS_AS(Distribution::weibull(-1.0), validation_error);
    CHECK_THROWS_AS(Distribution::normal(0.0, 0.0), validation_error);
    CHECK_THROWS_AS(Distribution::exponential(-2.0), validation_error);
    CHECK_THROWS_AS(Distribution::lognormal(0.0), validation_error);
    CHECK_THROWS_AS(Distribution::chi_square(0), validation_error);
    CHECK_THROWS_AS(Distribution::student_t(2), validation_error);
}

TEST_CASE("every pdf integrates to one") {
    for (const auto& d : paper_distributions()) {
        INFO(d.name());
        CHECK(integral_of_pdf(d) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("sampler moments match analytic values within 4 standard errors") {
    const int n = 1'000'000;
    for (const auto& d : paper_distributions()) {
        INFO(d.name());
        RandomStream rng(91u + static_cast<unsigned>(d.kind()));
        double s1 = 0.0, s2 = 0.0, s4 = 0.0;
        const double center = d.mean();
        for (int i = 0; i < n; ++i) {
            const double x = d.sample(rng);
            s1 += x;
            const double c = x - center;
            s2 += c * c;
            s4 += c * c * c * c;
        }
        const double mean = s1 / n;
        const double var = s2 / n;
        const double se_mean = std::sqrt(var / n);
        CHECK(std::abs(mean - d.mean()) <= 4.0 * se_mean);
        // t(3) has no fourth moment; its empirical variance error bar is
        // huge and the check is vacuous there by construction.
        const double se_var = std::sqrt(std::max(0.0, s4 / n - var * var) / n);
        CHECK(std::abs(var - d.variance()) <= 4.0 * se_var + 1e-3);
    }
}

TEST_CASE("named sampler checks") {
    RandomStream rng(7);
    const int n = 1'000'000;

    double acc = 0.0;
    const Distribution e1 = Distribution::exponential(1.0);
    for (int i = 0; i < n; ++i) acc += e1.sample(rng);
    CHECK(acc / n == doctest::Approx(1.0).epsilon(0.005));

    const Distribution norm = Distribution::normal(0.0, 1.0);
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = norm.sample(rng);
        s1 += x;
        s2 += x * x;
    }
    CHECK(s2 / n - (s1 / n) * (s1 / n) == doctest::Approx(1.0).epsilon(0.01));

    const Distribution g3 = Distribution::gamma(3.0);
    CHECK(mean_by_quadrature(g3) == doctest::Approx(3.0).epsilon(1e-6));  // oracle for E[X]
    acc = 0.0;
    for (int i = 0; i < n; ++i) acc += g3.sample(rng);
    CHECK(acc / n == doctest::Approx(3.0).epsilon(0.01 / 3.0));
}

TEST_CASE("true entropy of the table distributions") {
    CHECK(Distribution::uniform01().true_entropy() == 0.0);
    CHECK(Distribution::exponential(1.0).true_entropy() == doctest::Approx(1.0));
    CHECK(Distribution::normal(0.0, 1.0).true_entropy() ==
          doctest::Approx(1.4189385332046727).epsilon(1e-12));
    CHECK(Distribution::uniform01().has_true_entropy());
    CHECK_FALSE(Distribution::gamma(2.0).has_true_entropy());
    CHECK_THROWS_AS(Distribution::gamma(2.0).true_entropy(), unsupported_distribution);
    CHECK_THROWS_AS(Distribution::student_t(5).true_entropy(), unsupported_distribution);
}

TEST_CASE("distribution strings parse and round-trip") {
    CHECK(Distribution::parse("gamma(1.5)").name() == "gamma(1.5)");
    CHECK(Distribution::parse("t(5)").name() == "t(5)");
    CHECK(Distribution::parse("uniform").name() == "uniform");
    CHECK(Distribution::parse(" normal(0, 1) ").name() == "normal(0,1)");
    CHECK(Distribution::parse("chisq(4)").name() == "chisq(4)");
    CHECK(Distribution::parse("e(1)").name() == "exp(1)");
    CHECK(Distribution::parse("lognormal(0.5)").name() == "lognormal(0.5)");
    CHECK(Distribution::parse("weibull(2)").kind() == Distribution::Kind::Weibull);

    CHECK_THROWS_AS(Distribution::parse("gamma"), parse_error);
    CHECK_THROWS_AS(Distribution::parse("foo(1)"), parse_error);
    CHECK_THROWS_AS(Distribution::parse("t(2)"), validation_error);
    CHECK_THROWS_AS(Distribution::parse("normal(0)"), parse_error);
    CHECK_THROWS_AS(Distribution::parse("gamma(1,2)"), parse_error);
    CHECK_THROWS_AS(Distribution::parse("gamma(x)"), parse_error);
}
