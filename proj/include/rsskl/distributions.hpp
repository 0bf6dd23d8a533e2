#pragma once

#include <string>
#include <string_view>

#include "rsskl/rng.hpp"

namespace rsskl {

// Continuous laws used as null and alternative hypotheses. Shape-only
// families are fixed at unit scale (gamma, weibull), the lognormal at zero
// log-mean, and the exponential is rate-parameterized; the power studies
// assume exactly these parameterizations.
class Distribution {
  public:
    enum class Kind {
        Uniform01,
        Exponential,
        Normal,
        Gamma,
        Weibull,
        Lognormal,
        ChiSquare,
        StudentT,
    };

    static Distribution uniform01();
    static Distribution exponential(double rate);
    static Distribution normal(double mean, double sd);
    static Distribution gamma(double shape);
    static Distribution weibull(double shape);
    static Distribution lognormal(double sigma);
    static Distribution chi_square(int df);
    static Distribution student_t(int df);  // requires df > 2

    // Accepts "uniform", "exp(1)", "e(1)", "normal(0,1)", "gamma(1.5)",
    // "weibull(2)", "lognormal(0.5)", "chisq(4)", "t(5)".
    static Distribution parse(std::string_view text);

    Kind kind() const { return kind_; }

    // Canonical spelling, re-parseable by parse().
    std::string name() const;

    // Density; 0 outside the support.
    double pdf(double x) const;

    double sample(RandomStream& rng) const;

    // Exact differential entropy in nats, available for the uniform,
    // exponential and normal kinds; other kinds throw
    // unsupported_distribution.
    bool has_true_entropy() const;
    double true_entropy() const;

    // Analytic moments, for sampler sanity checks.
    double mean() const;
    double variance() const;

  private:
    Distribution(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    Kind kind_;
    double a_ = 0.0;  // rate / shape / mean / sigma / degrees of freedom
    double b_ = 0.0;  // sd (normal only)
};

}  // namespace rsskl
