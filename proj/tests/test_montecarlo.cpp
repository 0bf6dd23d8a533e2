#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rsskl/errors.hpp"
#include "rsskl/montecarlo.hpp"

using namespace rsskl;

TEST_CASE("error accumulator on a perfect estimator") {
    ErrorAccumulator acc;
    for (int i = 0; i < 50; ++i) acc.add(1.7, 1.7);
    CHECK(acc.bias() == 0.0);
    CHECK(acc.rmse() == 0.0);
    CHECK(acc.bias_std_error() == 0.0);
    CHECK(acc.rmse_std_error() == 0.0);
}

TEST_CASE("error accumulator on a known error pattern") {
    ErrorAccumulator acc;
    acc.add(2.0, 1.0);   // e = 1
    acc.add(0.0, 1.0);   // e = -1
    acc.add(4.0, 1.0);   // e = 3
    acc.add(-2.0, 1.0);  // e = -3
    CHECK(acc.bias() == doctest::Approx(0.0));
    CHECK(acc.rmse() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("quantile convention on a known stream") {
    std::vector<double> values(100);
    std::iota(values.begin(), values.end(), 1.0);
    std::reverse(values.begin(), values.end());  // order must not matter
    CHECK(empirical_critical_value(values, 0.05) == doctest::Approx(95.0));
    CHECK(empirical_critical_value(values, 0.10) == doctest::Approx(90.0));
    CHECK(empirical_critical_value(values, 0.01) == doctest::Approx(99.0));
    CHECK(empirical_critical_value(values, 0.025) == doctest::Approx(98.0));
    // nondecreasing in 1 - alpha
    double last = -1.0;
    for (double alpha : {0.5, 0.25, 0.1, 0.05, 0.025, 0.01, 0.005}) {
        const double crit = empirical_critical_value(values, alpha);
        CHECK(crit >= last);
        last = crit;
    }
    CHECK_THROWS_AS(empirical_critical_value({}, 0.05), validation_error);
    CHECK_THROWS_AS(empirical_critical_value({1.0}, 0.0), validation_error);
}

TEST_CASE("run_replications retries degenerate draws deterministically") {
    const int reps = 10000;
    std::vector<int> attempts(reps, -1);
    const auto count = detail::run_replications(
        reps, 1, 321, [&](int rep, int attempt, RandomStream&) {
            if (attempt == 0 && rep % 1500 == 0) throw degenerate_spacing("synthetic");
            attempts[rep] = attempt;
        });
    CHECK(count == 7);  // reps 0, 1500, ..., 9000
    for (int rep = 0; rep < reps; ++rep) CHECK(attempts[rep] == (rep % 1500 == 0 ? 1 : 0));
}

TEST_CASE("run_replications fails when too many replications degenerate") {
    CHECK_THROWS_AS(detail::run_replications(1000, 1, 9,
                                             [&](int rep, int attempt, RandomStream&) {
                                                 if (attempt == 0 && rep % 50 == 0)
                                                     throw degenerate_spacing("synthetic");
                                             }),
                    degenerate_error);
}

TEST_CASE("make_statistic resolves schemes and rejects bad pairings") {
    const auto tc = make_statistic(TestKind::Normality, Variant::Tc);
    CHECK(tc.scheme == Scheme::SRS);
    CHECK(tc.entropy == EstimatorKind::Ebrahimi);
    const auto kl = make_statistic(TestKind::Normality, Variant::KL2,
                                   EstimatorKind::RssPerCycleH2);
    CHECK(kl.scheme == Scheme::RSS);
    CHECK(kl.entropy == EstimatorKind::RssPerCycleH2);
    CHECK_THROWS_AS(make_statistic(TestKind::Normality, Variant::RssT), validation_error);
    CHECK_THROWS_AS(make_statistic(TestKind::Exponentiality, Variant::KL1), validation_error);
    CHECK_THROWS_AS(make_statistic(TestKind::Normality, Variant::KL1, EstimatorKind::Vasicek),
                    validation_error);
}

TEST_CASE("calibration reports are deterministic and worker-count independent") {
    MonteCarloConfig cfg;
    cfg.reps = 600;
    cfg.master_seed = 4242;
    cfg.k = 5;
    cfg.r = 2;
    cfg.m_min = 1;
    cfg.m_max = 3;
    cfg.alpha_levels = {0.1, 0.05};
    cfg.workers = 1;

    const auto spec = make_statistic(TestKind::Exponentiality, Variant::RssT);
    const auto a = calibrate_critical_values(spec, cfg);
    cfg.workers = 3;
    const auto b = calibrate_critical_values(spec, cfg);
    cfg.workers = 1;
    const auto c = calibrate_critical_values(spec, cfg);

    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].value == b.rows[i].value);
        CHECK(a.rows[i].std_error == b.rows[i].std_error);
        CHECK(a.rows[i].value == c.rows[i].value);
        CHECK(a.rows[i].m == b.rows[i].m);
        CHECK(a.rows[i].alpha == b.rows[i].alpha);
    }
}

TEST_CASE("critical values are nondecreasing in 1 - alpha") {
    MonteCarloConfig cfg;
    cfg.reps = 800;
    cfg.master_seed = 5;
    cfg.k = 10;
    cfg.r = 1;
    cfg.m_min = 2;
    cfg.m_max = 2;
    cfg.alpha_levels = {0.2, 0.1, 0.05, 0.025, 0.01};
    const auto report =
        calibrate_critical_values(make_statistic(TestKind::Normality, Variant::KL1), cfg);
    double last = -1e30;
    for (double alpha : cfg.alpha_levels) {
        const double crit = report.value_at("crit", 2, alpha);
        CHECK(crit >= last);
        last = crit;
    }
}

TEST_CASE("report lookups throw on unknown keys") {
    MonteCarloConfig cfg;
    cfg.reps = 200;
    cfg.k = 4;
    cfg.r = 1;
    cfg.m_min = 1;
    cfg.m_max = 2;
    const auto report = estimate_bias_rmse(Distribution::uniform01(), Scheme::RSS,
                                           EstimatorKind::RssPooledH1, cfg);
    CHECK_NOTHROW(report.value_at("bias", 1));
    CHECK_NOTHROW(report.value_at("rmse", 2, 0.0, "uniform"));
    CHECK_THROWS_AS(report.value_at("bias", 3), key_mismatch);
    CHECK_THROWS_AS(report.value_at("crit", 1), key_mismatch);
    for (const auto& row : report.rows) CHECK(row.std_error >= 0.0);
}

TEST_CASE("bias-rmse validates estimator/scheme pairings and windows") {
    MonteCarloConfig cfg;
    cfg.reps = 100;
    cfg.k = 4;
    cfg.r = 2;
    cfg.m_min = 1;
    cfg.m_max = 2;
    CHECK_THROWS_AS(estimate_bias_rmse(Distribution::uniform01(), Scheme::RSS,
                                       EstimatorKind::Vasicek, cfg),
                    validation_error);
    CHECK_THROWS_AS(estimate_bias_rmse(Distribution::uniform01(), Scheme::SRS,
                                       EstimatorKind::RssPooledH1, cfg),
                    validation_error);
    cfg.m_max = 3;  // h2 window bound is k/2 = 2
    CHECK_THROWS_AS(estimate_bias_rmse(Distribution::uniform01(), Scheme::RSS,
                                       EstimatorKind::RssPerCycleH2, cfg),
                    invalid_window);
    CHECK_THROWS_AS(estimate_bias_rmse(Distribution::gamma(2.0), Scheme::RSS,
                                       EstimatorKind::RssPooledH1, cfg),
                    unsupported_distribution);
    cfg.reps = 50;
    CHECK_THROWS_AS(estimate_bias_rmse(Distribution::uniform01(), Scheme::RSS,
                                       EstimatorKind::RssPooledH1, cfg),
                    validation_error);
}

TEST_CASE("summarize_min reports minima with ties inside one standard error") {
    MonteCarloReport report;
    report.kind = ReportKind::BiasRmse;
    auto row = [&](int m, const char* column, double value, double se) {
        report.rows.push_back({8, 4, 2, m, 0.0, "uniform", column, value, se});
    };
    row(1, "rmse", 0.30, 0.004);
    row(2, "rmse", 0.21, 0.004);
    row(3, "rmse", 0.213, 0.004);
    row(4, "rmse", 0.26, 0.004);
    row(1, "bias", -0.20, 0.003);
    row(2, "bias", 0.05, 0.003);
    row(3, "bias", -0.052, 0.003);
    row(4, "bias", -0.09, 0.003);
    const auto mins = summarize_min(report);
    CHECK(mins.mrmse == doctest::Approx(0.21));
    CHECK(mins.m_at_mrmse == std::vector<int>{2, 3});
    CHECK(mins.mab == doctest::Approx(0.05));
    CHECK(mins.m_at_mab == std::vector<int>{2, 3});

    MonteCarloReport single;
    single.kind = ReportKind::BiasRmse;
    single.rows.push_back({4, 4, 1, 2, 0.0, "uniform", "bias", -0.1, 0.01});
    single.rows.push_back({4, 4, 1, 2, 0.0, "uniform", "rmse", 0.2, 0.01});
    const auto one = summarize_min(single);
    CHECK(one.mrmse == doctest::Approx(0.2));
    CHECK(one.m_at_mrmse == std::vector<int>{2});
}

TEST_CASE("power with extreme critical values is 1 or 0") {
    MonteCarloConfig cfg;
    cfg.reps = 200;
    cfg.k = 4;
    cfg.r = 1;
    cfg.m_min = 2;
    cfg.m_max = 2;
    const auto hi = estimate_power(TestKind::Exponentiality, Variant::RssT,
                                   Distribution::uniform01(), 1e9, cfg);
    CHECK(hi.value_at("power", 2, 0.05) == 0.0);
    const auto lo = estimate_power(TestKind::Exponentiality, Variant::RssT,
                                   Distribution::uniform01(), -1e9, cfg);
    CHECK(lo.value_at("power", 2, 0.05) == 1.0);
    cfg.m_max = 3;
    CHECK_THROWS_AS(estimate_power(TestKind::Exponentiality, Variant::RssT,
                                   Distribution::uniform01(), 1.0, cfg),
                    validation_error);
}

TEST_CASE("calibrate-then-test under the null recovers the nominal size") {
    MonteCarloConfig cfg;
    cfg.reps = 4000;
    cfg.master_seed = 97;
    cfg.k = 10;
    cfg.r = 1;
    cfg.m_min = 2;
    cfg.m_max = 2;
    cfg.alpha_levels = {0.05};
    const auto spec = make_statistic(TestKind::Exponentiality, Variant::RssT);
    CriticalValueTable table;
    table.merge_from_report(calibrate_critical_values(spec, cfg));
    const auto power = estimate_power(spec, Distribution::exponential(1.0), table, 0.05, cfg);
    CHECK(power.value_at("power", 2, 0.05, "exp(1)") == doctest::Approx(0.05).epsilon(0.3));
    // Bernoulli bound on every power cell's standard error
    for (const auto& row : power.rows)
        CHECK(row.std_error <= std::sqrt(0.25 / cfg.reps) + 1e-15);
}

TEST_CASE("kl2 cannot be calibrated with a single cycle") {
    MonteCarloConfig cfg;
    cfg.reps = 200;
    cfg.k = 10;
    cfg.r = 1;
    cfg.m_min = 2;
    cfg.m_max = 2;
    CHECK_THROWS_AS(calibrate_critical_values(TestKind::Normality, Variant::KL2, cfg),
                    insufficient_cycles);
    cfg.r = 2;
    CHECK_NOTHROW(calibrate_critical_values(TestKind::Normality, Variant::KL2, cfg));
}

TEST_CASE("optimal window picks the best average power with ties toward smaller m") {
    MonteCarloReport report;
    report.kind = ReportKind::AveragePower;
    auto row = [&](int m, double ap, double se) {
        report.rows.push_back({20, 10, 2, m, 0.05, "", "ap", ap, se});
    };
    row(1, 0.50, 0.002);
    row(2, 0.64, 0.002);
    row(3, 0.641, 0.002);
    row(4, 0.55, 0.002);
    const auto best = optimal_window_from(report);
    CHECK(best.m_star == 3);
    CHECK(best.ap_star == doctest::Approx(0.641));
    CHECK(best.ties == std::vector<int>{2, 3});

    MonteCarloReport flat;
    flat.kind = ReportKind::AveragePower;
    for (int m = 1; m <= 4; ++m) flat.rows.push_back({20, 10, 2, m, 0.05, "", "ap", 0.4, 0.01});
    const auto tied = optimal_window_from(flat);
    CHECK(tied.m_star == 1);
    CHECK(tied.ties == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("max power per alternative on a single-m range") {
    MonteCarloConfig cfg;
    cfg.reps = 400;
    cfg.master_seed = 3;
    cfg.k = 10;
    cfg.r = 1;
    cfg.m_min = 2;
    cfg.m_max = 2;
    cfg.alpha_levels = {0.05};
    const auto report = max_power_per_alternative(
        TestKind::Exponentiality, Variant::RssT, {Distribution::uniform01()}, cfg);
    const auto* row = report.find("max_power", 2, 0.05, "uniform");
    REQUIRE(row != nullptr);
    CHECK(row->value >= 0.0);
    CHECK(row->value <= 1.0);
    CHECK(report.find("m_at_max", 2, 0.05, "uniform") != nullptr);
}

TEST_CASE("critical value table enforces exact keys") {
    const auto spec = make_statistic(TestKind::Exponentiality, Variant::RssT);
    CriticalValueTable table;
    table.put(CritKey::make(spec, 10, 1, 2, 0.05, 10000), CritEntry{0.35, 0.004, 1});
    CHECK(table.contains(CritKey::make(spec, 10, 1, 2, 0.05, 10000)));
    CHECK(table.at(CritKey::make(spec, 10, 1, 2, 0.05, 10000)).crit == doctest::Approx(0.35));
    // different reps is a different key
    CHECK_FALSE(table.contains(CritKey::make(spec, 10, 1, 2, 0.05, 5000)));
    CHECK_THROWS_AS(table.at(CritKey::make(spec, 10, 1, 2, 0.05, 5000)), key_mismatch);
    // different estimator is a different key
    const auto spec_h2 = make_statistic(TestKind::Normality, Variant::KL1,
                                        EstimatorKind::RssPerCycleH2);
    CHECK_FALSE(table.contains(CritKey::make(spec_h2, 10, 1, 2, 0.05, 10000)));
}

TEST_SUITE("tables") {

namespace {

struct PrintedCell {
    int m;
    double bias;
    double rmse;
};

void check_bias_rmse(const Distribution& dist, int r, const std::vector<PrintedCell>& printed) {
    MonteCarloConfig cfg;
    cfg.reps = 10000;
    cfg.master_seed = 1234500 + 7 * r;
    cfg.k = 10;
    cfg.r = r;
    cfg.m_min = 1;
    cfg.m_max = static_cast<int>(printed.size());
    const auto report =
        estimate_bias_rmse(dist, Scheme::RSS, EstimatorKind::RssPooledH1, cfg);
    for (const auto& cell : printed) {
        INFO(dist.name() << " n=" << 10 * r << " m=" << cell.m);
        CHECK(std::abs(report.value_at("bias", cell.m) - cell.bias) <= 0.02);
        CHECK(std::abs(report.value_at("rmse", cell.m) - cell.rmse) <= 0.02);
    }
}

}  // namespace

TEST_CASE("printed bias/rmse cells reproduce for the pooled estimator at n=10") {
    check_bias_rmse(Distribution::uniform01(), 1,
                    {{1, -0.259, 0.326},
                     {2, -0.108, 0.168},
                     {3, -0.070, 0.124},
                     {4, -0.056, 0.110},
                     {5, -0.050, 0.107}});
    check_bias_rmse(Distribution::exponential(1.0), 1,
                    {{1, -0.298, 0.398},
                     {2, -0.142, 0.266},
                     {3, -0.078, 0.241},
                     {4, -0.031, 0.236},
                     {5, 0.012, 0.249}});
    check_bias_rmse(Distribution::normal(0.0, 1.0), 1,
                    {{1, -0.342, 0.428},
                     {2, -0.227, 0.311},
                     {3, -0.207, 0.289},
                     {4, -0.209, 0.285},
                     {5, -0.204, 0.279}});
}

TEST_CASE("printed bias/rmse cells reproduce for the pooled estimator at n=20") {
    check_bias_rmse(Distribution::uniform01(), 2,
                    {{1, -0.274, 0.302},
                     {2, -0.121, 0.147},
                     {3, -0.076, 0.103},
                     {4, -0.056, 0.084},
                     {5, -0.046, 0.074},
                     {6, -0.040, 0.067},
                     {7, -0.035, 0.063},
                     {8, -0.034, 0.062},
                     {9, -0.032, 0.063},
                     {10, -0.030, 0.063}});
    check_bias_rmse(Distribution::exponential(1.0), 2,
                    {{1, -0.290, 0.340},
                     {2, -0.139, 0.206},
                     {3, -0.083, 0.169},
                     {4, -0.052, 0.161},
                     {5, -0.024, 0.157},
                     {6, 0.001, 0.165},
                     {7, 0.025, 0.173},
                     {8, 0.051, 0.188},
                     {9, 0.078, 0.203},
                     {10, 0.102, 0.225}});
    check_bias_rmse(Distribution::normal(0.0, 1.0), 2,
                    {{1, -0.313, 0.358},
                     {2, -0.178, 0.232},
                     {3, -0.141, 0.200},
                     {4, -0.124, 0.189},
                     {5, -0.117, 0.184},
                     {6, -0.116, 0.185},
                     {7, -0.116, 0.185},
                     {8, -0.114, 0.185},
                     {9, -0.116, 0.188},
                     {10, -0.113, 0.184}});
}

TEST_CASE("printed bias/rmse cells reproduce for the pooled estimator at n=30") {
    check_bias_rmse(Distribution::uniform01(), 3,
                    {{1, -0.273, 0.290},
                     {2, -0.125, 0.141},
                     {3, -0.080, 0.096},
                     {4, -0.058, 0.075},
                     {5, -0.046, 0.065},
                     {6, -0.039, 0.058},
                     {7, -0.034, 0.054},
                     {8, -0.030, 0.050},
                     {9, -0.028, 0.048},
                     {10, -0.027, 0.046},
                     {11, -0.025, 0.045},
                     {12, -0.024, 0.045},
                     {13, -0.023, 0.045},
                     {14, -0.022, 0.046},
                     {15, -0.021, 0.046}});
    check_bias_rmse(Distribution::exponential(1.0), 3,
                    {{1, -0.286, 0.318},
                     {2, -0.136, 0.181},
                     {3, -0.084, 0.145},
                     {4, -0.052, 0.129},
                     {5, -0.034, 0.126},
                     {6, -0.013, 0.125},
                     {7, 0.004, 0.129},
                     {8, 0.021, 0.135},
                     {9, 0.039, 0.145},
                     {10, 0.057, 0.155},
                     {11, 0.073, 0.167},
                     {12, 0.098, 0.185},
                     {13, 0.117, 0.201},
                     {14, 0.132, 0.214},
                     {15, 0.150, 0.231}});
    check_bias_rmse(Distribution::normal(0.0, 1.0), 3,
                    {{1, -0.300, 0.331},
                     {2, -0.160, 0.199},
                     {3, -0.118, 0.164},
                     {4, -0.099, 0.150},
                     {5, -0.088, 0.144},
                     {6, -0.082, 0.142},
                     {7, -0.073, 0.138},
                     {8, -0.069, 0.138},
                     {9, -0.067, 0.140},
                     {10, -0.067, 0.141},
                     {11, -0.065, 0.141},
                     {12, -0.062, 0.141},
                     {13, -0.065, 0.144},
                     {14, -0.066, 0.143},
                     {15, -0.064, 0.143}});
}

TEST_CASE("printed maximum powers reproduce") {
    MonteCarloConfig cfg;
    cfg.reps = 10000;
    cfg.master_seed = 777;
    cfg.k = 10;
    cfg.alpha_levels = {0.05};

    // lognormal(1) alternative of the exponentiality test at n=30
    cfg.r = 3;
    cfg.m_min = 1;
    cfg.m_max = 15;
    const auto exp_report = max_power_per_alternative(
        TestKind::Exponentiality, Variant::RssT, {Distribution::lognormal(1.0)}, cfg);
    double max_exp = 0.0;
    for (const auto& row : exp_report.rows)
        if (row.column == "max_power") max_exp = row.value;
    CHECK(std::abs(max_exp - 0.3133) <= 0.03);

    // t(5) alternative of the normality test at n=40
    cfg.r = 4;
    cfg.m_min = 1;
    cfg.m_max = 20;
    const auto norm_report = max_power_per_alternative(
        TestKind::Normality, Variant::KL1, {Distribution::student_t(5)}, cfg);
    double max_norm = 0.0;
    for (const auto& row : norm_report.rows)
        if (row.column == "max_power") max_norm = row.value;
    CHECK(std::abs(max_norm - 0.1427) <= 0.03);
}

}  // TEST_SUITE("tables")
