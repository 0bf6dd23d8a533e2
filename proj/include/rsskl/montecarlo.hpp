#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsskl/gof.hpp"

namespace rsskl {

struct MonteCarloConfig {
    int reps = 10000;
    std::uint64_t master_seed = 1;
    int k = 10;
    int r = 1;
    int m_min = 1;
    int m_max = 1;
    std::vector<double> alpha_levels = {0.05};
    // Worker threads; any value yields bit-identical reports because
    // replication i always draws from the substream (seed, i, attempt).
    int workers = 1;

    int n() const { return k * r; }
    std::vector<int> m_values() const;
};

// Which test statistic a simulation drives. `entropy` is the estimator that
// feeds the statistic (h1 by default; h2 selectable for the ranked-set
// normality statistics, Ebrahimi fixed for the SRS corrected ones).
struct StatisticSpec {
    TestKind test = TestKind::Exponentiality;
    Scheme scheme = Scheme::RSS;
    Variant variant = Variant::RssT;
    EstimatorKind entropy = EstimatorKind::RssPooledH1;
};

// Resolves the scheme and entropy estimator implied by a variant and checks
// the combination is meaningful.
StatisticSpec make_statistic(TestKind test, Variant variant,
                             EstimatorKind entropy = EstimatorKind::RssPooledH1);

double evaluate_statistic(const StatisticSpec& spec, const RankedSetSample& rss, int m);
double evaluate_statistic(const StatisticSpec& spec, const SimpleSample& sorted_sample, int m);

enum class ReportKind { BiasRmse, CriticalValues, Power, AveragePower, OptimalM, MaxPower };

const char* report_kind_name(ReportKind kind);

struct ReportRow {
    int n = 0;
    int k = 0;
    int r = 0;
    int m = 0;
    double alpha = 0.0;       // 0 when not applicable
    std::string label;        // distribution or alternative, empty otherwise
    std::string column;       // bias, rmse, crit, power, ap, ap_star, max_power, m_at_max
    double value = 0.0;
    double std_error = 0.0;
};

struct MonteCarloReport {
    ReportKind kind = ReportKind::BiasRmse;
    MonteCarloConfig config;
    std::optional<StatisticSpec> statistic;  // calibration / power kinds
    std::optional<Scheme> scheme;            // bias-rmse kind
    std::optional<EstimatorKind> estimator;  // bias-rmse kind
    std::vector<ReportRow> rows;
    std::int64_t degenerate_replications = 0;

    const ReportRow* find(std::string_view column, int m, double alpha = 0.0,
                          std::string_view label = {}) const;
    // Throws key_mismatch when no row matches.
    double value_at(std::string_view column, int m, double alpha = 0.0,
                    std::string_view label = {}) const;
};

// Key of one calibrated critical value. Alpha is keyed in microunits so
// lookups are exact.
struct CritKey {
    TestKind test;
    Variant variant;
    EstimatorKind entropy;
    int k = 0;
    int r = 0;
    int m = 0;
    long long alpha_micro = 0;
    int reps = 0;

    static CritKey make(const StatisticSpec& spec, int k, int r, int m, double alpha, int reps);
    friend auto operator<=>(const CritKey&, const CritKey&) = default;
};

struct CritEntry {
    double crit = 0.0;
    double std_error = 0.0;
    std::uint64_t config_hash = 0;
};

class CriticalValueTable {
  public:
    void put(const CritKey& key, const CritEntry& entry);
    bool contains(const CritKey& key) const;
    // Exact key match only; throws key_mismatch otherwise.
    const CritEntry& at(const CritKey& key) const;
    const std::map<CritKey, CritEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    void merge_from_report(const MonteCarloReport& report, std::uint64_t config_hash = 0);

  private:
    std::map<CritKey, CritEntry> entries_;
};

// --- simulation drivers -----------------------------------------------

// Bias and RMSE of an entropy estimator against the true entropy, one row
// pair per m. The SRS scheme draws samples of size n = k*r.
MonteCarloReport estimate_bias_rmse(const Distribution& dist, Scheme scheme,
                                    EstimatorKind estimator, const MonteCarloConfig& cfg);

struct MinSummary {
    double mrmse = 0.0;
    std::vector<int> m_at_mrmse;  // every m within one std error of the minimum
    double mab = 0.0;
    std::vector<int> m_at_mab;
};

MinSummary summarize_min(const MonteCarloReport& bias_rmse_report);

// Upper-tail critical values: the ceil((1-alpha)*reps)-th order statistic of
// reps statistics simulated under the null (exp(1) or normal(0,1); both
// tests are scale/affine invariant so the choice is general).
MonteCarloReport calibrate_critical_values(const StatisticSpec& spec,
                                           const MonteCarloConfig& cfg);
MonteCarloReport calibrate_critical_values(TestKind test, Variant variant,
                                           const MonteCarloConfig& cfg);

// Rejection frequency against an alternative, per m, at one alpha. Critical
// values come from the table; calibration_reps selects the table key (0
// means cfg.reps).
MonteCarloReport estimate_power(const StatisticSpec& spec, const Distribution& alternative,
                                const CriticalValueTable& crits, double alpha,
                                const MonteCarloConfig& cfg, int calibration_reps = 0);
// Single-m convenience with an explicit critical value.
MonteCarloReport estimate_power(TestKind test, Variant variant, const Distribution& alternative,
                                double crit, const MonteCarloConfig& cfg);

// Mean power over a set of alternatives, per m.
MonteCarloReport average_power(const StatisticSpec& spec,
                               const std::vector<Distribution>& alternatives,
                               const CriticalValueTable& crits, double alpha,
                               const MonteCarloConfig& cfg, int calibration_reps = 0);
// Calibrates internally at cfg.alpha_levels.front().
MonteCarloReport average_power(TestKind test, Variant variant,
                               const std::vector<Distribution>& alternatives,
                               const MonteCarloConfig& cfg);

struct OptimalWindow {
    int m_star = 0;
    double ap_star = 0.0;
    std::vector<int> ties;  // all m whose AP is within one std error of the max
};

OptimalWindow optimal_window_from(const MonteCarloReport& average_power_report);
OptimalWindow optimal_window(TestKind test, Variant variant,
                             const std::vector<Distribution>& alternatives,
                             const MonteCarloConfig& cfg);

// Per-alternative maximum power over m and the attaining m set.
MonteCarloReport max_power_per_alternative(const StatisticSpec& spec,
                                           const std::vector<Distribution>& alternatives,
                                           const CriticalValueTable& crits, double alpha,
                                           const MonteCarloConfig& cfg, int calibration_reps = 0);
MonteCarloReport max_power_per_alternative(TestKind test, Variant variant,
                                           const std::vector<Distribution>& alternatives,
                                           const MonteCarloConfig& cfg);

// --- building blocks (exposed for tests) ------------------------------

// The ceil((1-alpha)*N)-th order statistic of the values.
double empirical_critical_value(std::vector<double> values, double alpha);

// Bias/RMSE accumulation of estimates against a known truth.
class ErrorAccumulator {
  public:
    void add(double estimate, double truth);
    int count() const { return count_; }
    double bias() const;
    double bias_std_error() const;
    double rmse() const;
    double rmse_std_error() const;

  private:
    int count_ = 0;
    double sum_e_ = 0.0;
    double sum_e2_ = 0.0;
    double sum_e4_ = 0.0;
};

namespace detail {

// Runs body(rep, attempt, stream) for rep in [0, reps). A degenerate_error
// thrown by the body redraws the replication with the next attempt stream;
// the total count is returned and the run fails if more than 0.1% of the
// replications degenerate.
std::int64_t run_replications(int reps, int workers, std::uint64_t seed,
                              const std::function<void(int, int, RandomStream&)>& body);

std::uint64_t domain_salt(std::string_view purpose_key);

}  // namespace detail

}  // namespace rsskl
