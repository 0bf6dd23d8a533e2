#include "rsskl/distributions.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "rsskl/errors.hpp"

namespace rsskl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Marsaglia-Tsang; the shape < 1 case is boosted through shape + 1.
double gamma_variate(RandomStream& rng, double shape) {
    if (shape < 1.0) {
        const double u = rng.uniform01();
        return gamma_variate(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_number(const std::string& token, std::string_view whole) {
    const std::string t = trim(token);
    if (t.empty()) throw parse_error("empty parameter in distribution '" + std::string(whole) + "'");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(v))
        throw parse_error("bad parameter '" + t + "' in distribution '" + std::string(whole) + "'");
    return v;
}

int as_int(double v, std::string_view whole) {
    const int i = static_cast<int>(std::lround(v));
    if (std::abs(v - i) > 1e-9)
        throw parse_error("integer parameter expected in distribution '" + std::string(whole) + "'");
    return i;
}

std::string format_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

Distribution Distribution::uniform01() {
    return Distribution(Kind::Uniform01, 0.0, 0.0);
}

Distribution Distribution::exponential(double rate) {
    if (!(rate > 0.0)) throw validation_error("exponential rate must be positive");
    return Distribution(Kind::Exponential, rate, 0.0);
}

Distribution Distribution::normal(double mean, double sd) {
    if (!(sd > 0.0)) throw validation_error("normal sd must be positive");
    return Distribution(Kind::Normal, mean, sd);
}

Distribution Distribution::gamma(double shape) {
    if (!(shape > 0.0)) throw validation_error("gamma shape must be positive");
    return Distribution(Kind::Gamma, shape, 0.0);
}

Distribution Distribution::weibull(double shape) {
    if (!(shape > 0.0)) throw validation_error("weibull shape must be positive");
    return Distribution(Kind::Weibull, shape, 0.0);
}

Distribution Distribution::lognormal(double sigma) {
    if (!(sigma > 0.0)) throw validation_error("lognormal sigma must be positive");
    return Distribution(Kind::Lognormal, sigma, 0.0);
}

Distribution Distribution::chi_square(int df) {
    if (df < 1) throw validation_error("chi-square df must be a positive integer");
    return Distribution(Kind::ChiSquare, static_cast<double>(df), 0.0);
}

Distribution Distribution::student_t(int df) {
    // Variance (and the displayed pdf's support condition) require df > 2.
    if (df <= 2) throw validation_error("student t requires df > 2");
    return Distribution(Kind::StudentT, static_cast<double>(df), 0.0);
}

Distribution Distribution::parse(std::string_view text) {
    std::string s = trim(text);
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    std::string head = s;
    std::vector<std::string> args;
    const auto open = s.find('(');
    if (open != std::string::npos) {
        if (s.back() != ')')
            throw parse_error("missing ')' in distribution '" + std::string(text) + "'");
        head = trim(s.substr(0, open));
        std::string inner = s.substr(open + 1, s.size() - open - 2);
        std::size_t start = 0;
        while (start <= inner.size()) {
            const auto comma = inner.find(',', start);
            if (comma == std::string::npos) {
                if (!trim(inner.substr(start)).empty()) args.push_back(inner.substr(start));
                break;
            }
            args.push_back(inner.substr(start, comma - start));
            start = comma + 1;
        }
    }

    auto want = [&](std::size_t count) {
        if (args.size() != count)
            throw parse_error("distribution '" + std::string(text) + "' expects " +
                              std::to_string(count) + " parameter(s)");
    };

    if (head == "uniform" || head == "uniform01" || head == "u") {
        want(0);
        return uniform01();
    }
    if (head == "exp" || head == "exponential" || head == "e") {
        if (args.empty()) return exponential(1.0);
        want(1);
        return exponential(parse_number(args[0], text));
    }
    if (head == "normal" || head == "n" || head == "gaussian") {
        if (args.empty()) return normal(0.0, 1.0);
        want(2);
        return normal(parse_number(args[0], text), parse_number(args[1], text));
    }
    if (head == "gamma") {
        want(1);
        return gamma(parse_number(args[0], text));
    }
    if (head == "weibull") {
        want(1);
        return weibull(parse_number(args[0], text));
    }
    if (head == "lognormal" || head == "lnorm") {
        want(1);
        return lognormal(parse_number(args[0], text));
    }
    if (head == "chisq" || head == "chi2" || head == "chisquare") {
        want(1);
        return chi_square(as_int(parse_number(args[0], text), text));
    }
    if (head == "t" || head == "student") {
        want(1);
        return student_t(as_int(parse_number(args[0], text), text));
    }
    throw parse_error("unknown distribution '" + std::string(text) + "'");
}

std::string Distribution::name() const {
    switch (kind_) {
        case Kind::Uniform01: return "uniform";
        case Kind::Exponential: return "exp(" + format_param(a_) + ")";
        case Kind::Normal: return "normal(" + format_param(a_) + "," + format_param(b_) + ")";
        case Kind::Gamma: return "gamma(" + format_param(a_) + ")";
        case Kind::Weibull: return "weibull(" + format_param(a_) + ")";
        case Kind::Lognormal: return "lognormal(" + format_param(a_) + ")";
        case Kind::ChiSquare: return "chisq(" + format_param(a_) + ")";
        case Kind::StudentT: return "t(" + format_param(a_) + ")";
    }
    return "?";
}

double Distribution::pdf(double x) const {
    switch (kind_) {
        case Kind::Uniform01:
            return (x > 0.0 && x < 1.0) ? 1.0 : 0.0;
        case Kind::Exponential:
            return x >= 0.0 ? a_ * std::exp(-a_ * x) : 0.0;
        case Kind::Normal: {
            const double z = (x - a_) / b_;
            return std::exp(-0.5 * z * z) / (b_ * std::sqrt(kTwoPi));
        }
        case Kind::Gamma:
            if (x <= 0.0) return 0.0;
            return std::exp((a_ - 1.0) * std::log(x) - x - std::lgamma(a_));
        case Kind::Weibull:
            if (x <= 0.0) return 0.0;
            return std::exp(std::log(a_) + (a_ - 1.0) * std::log(x) - std::pow(x, a_));
        case Kind::Lognormal: {
            if (x <= 0.0) return 0.0;
            const double z = std::log(x) / a_;
            return std::exp(-0.5 * z * z) / (a_ * x * std::sqrt(kTwoPi));
        }
        case Kind::ChiSquare: {
            if (x <= 0.0) return 0.0;
            const double h = 0.5 * a_;
            return std::exp(-std::lgamma(h) - h * std::log(2.0) + (h - 1.0) * std::log(x) - 0.5 * x);
        }
        case Kind::StudentT: {
            const double v = a_;
            return std::exp(std::lgamma(0.5 * (v + 1.0)) - std::lgamma(0.5 * v) -
                            0.5 * std::log(v * std::numbers::pi) -
                            0.5 * (v + 1.0) * std::log1p(x * x / v));
        }
    }
    return 0.0;
}

double Distribution::sample(RandomStream& rng) const {
    switch (kind_) {
        case Kind::Uniform01:
            return rng.uniform01();
        case Kind::Exponential:
            return -std::log(rng.uniform01()) / a_;
        case Kind::Normal:
            return a_ + b_ * rng.normal();
        case Kind::Gamma:
            return gamma_variate(rng, a_);
        case Kind::Weibull:
            return std::pow(-std::log(rng.uniform01()), 1.0 / a_);
        case Kind::Lognormal:
            return std::exp(a_ * rng.normal());
        case Kind::ChiSquare:
            return 2.0 * gamma_variate(rng, 0.5 * a_);
        case Kind::StudentT: {
            const double z = rng.normal();
            const double v = 2.0 * gamma_variate(rng, 0.5 * a_);
            return z / std::sqrt(v / a_);
        }
    }
    return 0.0;
}

bool Distribution::has_true_entropy() const {
    return kind_ == Kind::Uniform01 || kind_ == Kind::Exponential || kind_ == Kind::Normal;
}

double Distribution::true_entropy() const {
    switch (kind_) {
        case Kind::Uniform01:
            return 0.0;
        case Kind::Exponential:
            return 1.0 - std::log(a_);
        case Kind::Normal:
            return 0.5 * std::log(kTwoPi * std::numbers::e * b_ * b_);
        default:
            throw unsupported_distribution("no closed-form entropy for " + name());
    }
}

double Distribution::mean() const {
    switch (kind_) {
        case Kind::Uniform01: return 0.5;
        case Kind::Exponential: return 1.0 / a_;
        case Kind::Normal: return a_;
        case Kind::Gamma: return a_;
        case Kind::Weibull: return std::tgamma(1.0 + 1.0 / a_);
        case Kind::Lognormal: return std::exp(0.5 * a_ * a_);
        case Kind::ChiSquare: return a_;
        case Kind::StudentT: return 0.0;
    }
    return 0.0;
}

double Distribution::variance() const {
    switch (kind_) {
        case Kind::Uniform01: return 1.0 / 12.0;
        case Kind::Exponential: return 1.0 / (a_ * a_);
        case Kind::Normal: return b_ * b_;
        case Kind::Gamma: return a_;
        case Kind::Weibull: {
            const double m1 = std::tgamma(1.0 + 1.0 / a_);
            return std::tgamma(1.0 + 2.0 / a_) - m1 * m1;
        }
        case Kind::Lognormal: {
            const double s2 = a_ * a_;
            return (std::exp(s2) - 1.0) * std::exp(s2);
        }
        case Kind::ChiSquare: return 2.0 * a_;
        case Kind::StudentT: return a_ / (a_ - 2.0);
    }
    return 0.0;
}

}  // namespace rsskl
