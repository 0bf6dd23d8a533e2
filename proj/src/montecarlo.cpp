#include "rsskl/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "rsskl/errors.hpp"

namespace rsskl {

namespace {

std::string spec_token(const StatisticSpec& spec) {
    std::string s = test_name(spec.test);
    s += '|';
    s += variant_name(spec.variant);
    s += '|';
    s += estimator_name(spec.entropy);
    return s;
}

std::string size_token(const MonteCarloConfig& cfg) {
    return "k=" + std::to_string(cfg.k) + "|r=" + std::to_string(cfg.r);
}

void validate_config(const MonteCarloConfig& cfg) {
    if (cfg.reps < 100) throw validation_error("reps must be at least 100");
    if (cfg.k < 1 || cfg.r < 1) throw validation_error("k and r must be positive");
    if (cfg.m_min < 1 || cfg.m_max < cfg.m_min)
        throw validation_error("window range must satisfy 1 <= m_min <= m_max");
    for (double a : cfg.alpha_levels)
        if (!(a > 0.0 && a < 1.0)) throw validation_error("alpha levels must lie in (0,1)");
}

int window_bound(Scheme scheme, EstimatorKind entropy, const MonteCarloConfig& cfg) {
    if (scheme == Scheme::RSS && entropy == EstimatorKind::RssPerCycleH2)
        return WindowSpec::max_for(cfg.k);
    return WindowSpec::max_for(cfg.n());
}

void validate_windows(Scheme scheme, EstimatorKind entropy, const MonteCarloConfig& cfg) {
    const int bound = window_bound(scheme, entropy, cfg);
    if (cfg.m_max > bound)
        throw invalid_window("window range exceeds " + std::to_string(bound) + " for " +
                             estimator_name(entropy) + " at k=" + std::to_string(cfg.k) +
                             ", r=" + std::to_string(cfg.r));
    if (scheme == Scheme::RSS && cfg.k < 2)
        throw validation_error("ranked set scheme needs k >= 2");
}

// Canonical row order: label, then m, then alpha descending (the table
// layout), then column.
void sort_rows(std::vector<ReportRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        if (a.label != b.label) return a.label < b.label;
        if (a.m != b.m) return a.m < b.m;
        if (a.alpha != b.alpha) return a.alpha > b.alpha;
        return a.column < b.column;
    });
}

struct PowerCell {
    double power = 0.0;
    double se = 0.0;
};

// Rejection frequencies for every m at once, reusing each replication's
// dataset across the window range.
std::vector<PowerCell> power_cells(const StatisticSpec& spec, const Distribution& alternative,
                                   const std::vector<double>& crits, const MonteCarloConfig& cfg) {
    const auto ms = cfg.m_values();
    const int reps = cfg.reps;
    std::vector<std::uint8_t> reject(ms.size() * static_cast<std::size_t>(reps), 0);
    const std::uint64_t salt =
        detail::domain_salt("power|" + spec_token(spec) + "|" + size_token(cfg) +
                            "|alt=" + alternative.name());
    detail::run_replications(reps, cfg.workers, cfg.master_seed ^ salt,
                             [&](int rep, int, RandomStream& rng) {
        if (spec.scheme == Scheme::RSS) {
            const auto rss = draw_rss(alternative, cfg.k, cfg.r, rng);
            for (std::size_t mi = 0; mi < ms.size(); ++mi)
                reject[mi * reps + rep] =
                    evaluate_statistic(spec, rss, ms[mi]) > crits[mi] ? 1 : 0;
        } else {
            const auto sample = make_sorted(draw_srs(alternative, cfg.n(), rng).values);
            for (std::size_t mi = 0; mi < ms.size(); ++mi)
                reject[mi * reps + rep] =
                    evaluate_statistic(spec, sample, ms[mi]) > crits[mi] ? 1 : 0;
        }
    });
    std::vector<PowerCell> cells(ms.size());
    for (std::size_t mi = 0; mi < ms.size(); ++mi) {
        long hits = 0;
        for (int rep = 0; rep < reps; ++rep) hits += reject[mi * reps + rep];
        const double p = static_cast<double>(hits) / reps;
        cells[mi] = {p, std::sqrt(p * (1.0 - p) / reps)};
    }
    return cells;
}

std::vector<double> crits_for(const StatisticSpec& spec, const CriticalValueTable& table,
                              double alpha, const MonteCarloConfig& cfg, int calibration_reps) {
    const int reps_key = calibration_reps > 0 ? calibration_reps : cfg.reps;
    std::vector<double> crits;
    for (int m : cfg.m_values())
        crits.push_back(table.at(CritKey::make(spec, cfg.k, cfg.r, m, alpha, reps_key)).crit);
    return crits;
}

Distribution null_distribution(TestKind test) {
    return test == TestKind::Exponentiality ? Distribution::exponential(1.0)
                                            : Distribution::normal(0.0, 1.0);
}

}  // namespace

std::vector<int> MonteCarloConfig::m_values() const {
    std::vector<int> ms;
    for (int m = m_min; m <= m_max; ++m) ms.push_back(m);
    return ms;
}

StatisticSpec make_statistic(TestKind test, Variant variant, EstimatorKind entropy) {
    StatisticSpec spec;
    spec.test = test;
    spec.variant = variant;
    switch (variant) {
        case Variant::Tc:
            spec.scheme = Scheme::SRS;
            spec.entropy = EstimatorKind::Ebrahimi;
            break;
        case Variant::RssT:
            if (test != TestKind::Exponentiality)
                throw validation_error("rss-t is an exponentiality statistic");
            spec.scheme = Scheme::RSS;
            spec.entropy = EstimatorKind::RssPooledH1;
            break;
        case Variant::KL1:
        case Variant::KL2:
            if (test != TestKind::Normality)
                throw validation_error("kl1/kl2 are normality statistics");
            if (entropy != EstimatorKind::RssPooledH1 && entropy != EstimatorKind::RssPerCycleH2)
                throw validation_error("kl1/kl2 take the h1 or h2 estimator");
            spec.scheme = Scheme::RSS;
            spec.entropy = entropy;
            break;
    }
    return spec;
}

double evaluate_statistic(const StatisticSpec& spec, const RankedSetSample& rss, int m) {
    if (spec.scheme != Scheme::RSS)
        throw validation_error("statistic spec expects a simple random sample");
    switch (spec.variant) {
        case Variant::RssT: return exp_statistic_rss(rss, m).value;
        case Variant::KL1: return kl1(rss, m, spec.entropy).value;
        case Variant::KL2: return kl2(rss, m, spec.entropy).value;
        case Variant::Tc: break;
    }
    throw validation_error("tc statistic needs a simple random sample");
}

double evaluate_statistic(const StatisticSpec& spec, const SimpleSample& sorted_sample, int m) {
    if (spec.scheme != Scheme::SRS || spec.variant != Variant::Tc)
        throw validation_error("statistic spec expects a ranked set sample");
    return spec.test == TestKind::Exponentiality ? exp_statistic_srs(sorted_sample, m).value
                                                 : norm_statistic_srs(sorted_sample, m).value;
}

const char* report_kind_name(ReportKind kind) {
    switch (kind) {
        case ReportKind::BiasRmse: return "bias-rmse";
        case ReportKind::CriticalValues: return "critical-values";
        case ReportKind::Power: return "power";
        case ReportKind::AveragePower: return "average-power";
        case ReportKind::OptimalM: return "optimal-m";
        case ReportKind::MaxPower: return "max-power";
    }
    return "?";
}

const ReportRow* MonteCarloReport::find(std::string_view column, int m, double alpha,
                                        std::string_view label) const {
    for (const auto& row : rows) {
        if (row.column != column || row.m != m) continue;
        if (std::abs(row.alpha - alpha) > 1e-9) continue;
        if (!label.empty() && row.label != label) continue;
        return &row;
    }
    return nullptr;
}

double MonteCarloReport::value_at(std::string_view column, int m, double alpha,
                                  std::string_view label) const {
    const ReportRow* row = find(column, m, alpha, label);
    if (!row)
        throw key_mismatch("no report row for column=" + std::string(column) +
                           ", m=" + std::to_string(m) + ", alpha=" + std::to_string(alpha) +
                           ", label=" + std::string(label));
    return row->value;
}

CritKey CritKey::make(const StatisticSpec& spec, int k, int r, int m, double alpha, int reps) {
    return CritKey{spec.test, spec.variant, spec.entropy,
                   k,         r,            m,
                   std::llround(alpha * 1e6), reps};
}

void CriticalValueTable::put(const CritKey& key, const CritEntry& entry) {
    entries_[key] = entry;
}

bool CriticalValueTable::contains(const CritKey& key) const {
    return entries_.count(key) != 0;
}

const CritEntry& CriticalValueTable::at(const CritKey& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        throw key_mismatch("no calibrated critical value for test=" +
                           std::string(test_name(key.test)) + ", variant=" +
                           variant_name(key.variant) + ", estimator=" +
                           estimator_name(key.entropy) + ", k=" + std::to_string(key.k) +
                           ", r=" + std::to_string(key.r) + ", m=" + std::to_string(key.m) +
                           ", alpha=" + std::to_string(key.alpha_micro / 1e6) +
                           ", reps=" + std::to_string(key.reps));
    return it->second;
}

void CriticalValueTable::merge_from_report(const MonteCarloReport& report,
                                           std::uint64_t config_hash) {
    if (report.kind != ReportKind::CriticalValues || !report.statistic)
        throw validation_error("only calibration reports carry critical values");
    for (const auto& row : report.rows) {
        if (row.column != "crit") continue;
        put(CritKey::make(*report.statistic, report.config.k, report.config.r, row.m, row.alpha,
                          report.config.reps),
            CritEntry{row.value, row.std_error, config_hash});
    }
}

double empirical_critical_value(std::vector<double> values, double alpha) {
    if (values.empty()) throw validation_error("empirical quantile of an empty sample");
    if (!(alpha > 0.0 && alpha < 1.0)) throw validation_error("alpha must lie in (0,1)");
    std::sort(values.begin(), values.end());
    const int n = static_cast<int>(values.size());
    // The small slack counters floating-point excess in (1-alpha)*n, e.g.
    // 0.9 * 10000 = 9000.0000000000002.
    int idx = static_cast<int>(std::ceil((1.0 - alpha) * n - 1e-9));
    idx = std::clamp(idx, 1, n);
    return values[idx - 1];
}

void ErrorAccumulator::add(double estimate, double truth) {
    const double e = estimate - truth;
    ++count_;
    sum_e_ += e;
    sum_e2_ += e * e;
    sum_e4_ += e * e * e * e;
}

double ErrorAccumulator::bias() const {
    return count_ ? sum_e_ / count_ : 0.0;
}

double ErrorAccumulator::bias_std_error() const {
    if (count_ < 2) return 0.0;
    const double b = bias();
    return std::sqrt(std::max(0.0, sum_e2_ / count_ - b * b) / count_);
}

double ErrorAccumulator::rmse() const {
    return count_ ? std::sqrt(sum_e2_ / count_) : 0.0;
}

double ErrorAccumulator::rmse_std_error() const {
    if (count_ < 2) return 0.0;
    const double me2 = sum_e2_ / count_;
    if (me2 <= 0.0) return 0.0;
    const double var_me2 = std::max(0.0, sum_e4_ / count_ - me2 * me2) / count_;
    return std::sqrt(var_me2) / (2.0 * std::sqrt(me2));
}

namespace detail {

std::uint64_t domain_salt(std::string_view purpose_key) {
    // FNV-1a.
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : purpose_key) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::int64_t run_replications(int reps, int workers,
                              std::uint64_t seed,
                              const std::function<void(int, int, RandomStream&)>& body) {
    if (reps < 1) throw validation_error("at least one replication required");

    std::atomic<std::int64_t> degenerate{0};
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto work = [&]() {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) return;
            const int rep = next.fetch_add(1, std::memory_order_relaxed);
            if (rep >= reps) return;
            try {
                for (int attempt = 0;; ++attempt) {
                    RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(rep),
                                                               static_cast<std::uint64_t>(attempt));
                    try {
                        body(rep, attempt, rng);
                        break;
                    } catch (const degenerate_error&) {
                        degenerate.fetch_add(1, std::memory_order_relaxed);
                        if (attempt >= 64) throw;
                    }
                }
            } catch (...) {
                {
                    const std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    int w = workers;
    if (w <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        w = hc ? static_cast<int>(hc) : 1;
    }
    if (w <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(w));
        for (int i = 0; i < w; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    if (first_error) std::rethrow_exception(first_error);
    const std::int64_t count = degenerate.load();
    if (count * 1000 > reps)
        throw degenerate_error("more than 0.1% of replications degenerate (" +
                               std::to_string(count) + " of " + std::to_string(reps) + ")");
    return count;
}

}  // namespace detail

MonteCarloReport estimate_bias_rmse(const Distribution& dist, Scheme scheme,
                                    EstimatorKind estimator, const MonteCarloConfig& cfg) {
    validate_config(cfg);
    const bool srs_estimator =
        estimator == EstimatorKind::Vasicek || estimator == EstimatorKind::Ebrahimi;
    if (srs_estimator != (scheme == Scheme::SRS))
        throw validation_error(std::string("estimator ") + estimator_name(estimator) +
                               " does not apply to the " + scheme_name(scheme) + " scheme");
    validate_windows(scheme, estimator, cfg);
    const double truth = dist.true_entropy();

    const auto ms = cfg.m_values();
    const int reps = cfg.reps;
    std::vector<double> estimates(ms.size() * static_cast<std::size_t>(reps));
    const std::uint64_t salt = detail::domain_salt(
        std::string("bias-rmse|") + scheme_name(scheme) + "|" + estimator_name(estimator) + "|" +
        dist.name() + "|" + size_token(cfg));
    MonteCarloReport report;
    report.degenerate_replications = detail::run_replications(
        reps, cfg.workers, cfg.master_seed ^ salt, [&](int rep, int, RandomStream& rng) {
            if (scheme == Scheme::RSS) {
                const auto rss = draw_rss(dist, cfg.k, cfg.r, rng);
                for (std::size_t mi = 0; mi < ms.size(); ++mi)
                    estimates[mi * reps + rep] = estimator == EstimatorKind::RssPooledH1
                                                     ? h1(rss, ms[mi]).value
                                                     : h2(rss, ms[mi]).value;
            } else {
                const auto sample = make_sorted(draw_srs(dist, cfg.n(), rng).values);
                for (std::size_t mi = 0; mi < ms.size(); ++mi)
                    estimates[mi * reps + rep] = estimator == EstimatorKind::Vasicek
                                                     ? vasicek(sample, ms[mi]).value
                                                     : ebrahimi(sample, ms[mi]).value;
            }
        });

    report.kind = ReportKind::BiasRmse;
    report.config = cfg;
    report.scheme = scheme;
    report.estimator = estimator;
    for (std::size_t mi = 0; mi < ms.size(); ++mi) {
        ErrorAccumulator acc;
        for (int rep = 0; rep < reps; ++rep) acc.add(estimates[mi * reps + rep], truth);
        report.rows.push_back({cfg.n(), cfg.k, cfg.r, ms[mi], 0.0, dist.name(), "bias",
                               acc.bias(), acc.bias_std_error()});
        report.rows.push_back({cfg.n(), cfg.k, cfg.r, ms[mi], 0.0, dist.name(), "rmse",
                               acc.rmse(), acc.rmse_std_error()});
    }
    sort_rows(report.rows);
    return report;
}

MinSummary summarize_min(const MonteCarloReport& report) {
    if (report.kind != ReportKind::BiasRmse)
        throw validation_error("summarize_min expects a bias-rmse report");
    MinSummary out;
    const ReportRow* best_rmse = nullptr;
    const ReportRow* best_bias = nullptr;
    for (const auto& row : report.rows) {
        if (row.column == "rmse") {
            if (!best_rmse || row.value < best_rmse->value) best_rmse = &row;
        } else if (row.column == "bias") {
            if (!best_bias || std::abs(row.value) < std::abs(best_bias->value)) best_bias = &row;
        }
    }
    if (!best_rmse || !best_bias) throw validation_error("bias-rmse report has no rows");
    out.mrmse = best_rmse->value;
    out.mab = std::abs(best_bias->value);
    for (const auto& row : report.rows) {
        if (row.column == "rmse" && row.value <= out.mrmse + best_rmse->std_error)
            out.m_at_mrmse.push_back(row.m);
        if (row.column == "bias" && std::abs(row.value) <= out.mab + best_bias->std_error)
            out.m_at_mab.push_back(row.m);
    }
    std::sort(out.m_at_mrmse.begin(), out.m_at_mrmse.end());
    std::sort(out.m_at_mab.begin(), out.m_at_mab.end());
    return out;
}

MonteCarloReport calibrate_critical_values(const StatisticSpec& spec,
                                           const MonteCarloConfig& cfg) {
    validate_config(cfg);
    validate_windows(spec.scheme, spec.entropy, cfg);
    if (cfg.alpha_levels.empty()) throw validation_error("calibration needs alpha levels");
    if (spec.variant == Variant::KL2 && cfg.r < 2)
        throw insufficient_cycles("kl2 undefined for r = 1 (maceachern variance needs cycles)");

    const Distribution null = null_distribution(spec.test);
    const auto ms = cfg.m_values();
    const int reps = cfg.reps;
    std::vector<double> stats(ms.size() * static_cast<std::size_t>(reps));
    const std::uint64_t salt = detail::domain_salt("calibrate|" + spec_token(spec) + "|" +
                                                   size_token(cfg));
    MonteCarloReport report;
    report.degenerate_replications = detail::run_replications(
        reps, cfg.workers, cfg.master_seed ^ salt, [&](int rep, int, RandomStream& rng) {
            if (spec.scheme == Scheme::RSS) {
                const auto rss = draw_rss(null, cfg.k, cfg.r, rng);
                for (std::size_t mi = 0; mi < ms.size(); ++mi)
                    stats[mi * reps + rep] = evaluate_statistic(spec, rss, ms[mi]);
            } else {
                const auto sample = make_sorted(draw_srs(null, cfg.n(), rng).values);
                for (std::size_t mi = 0; mi < ms.size(); ++mi)
                    stats[mi * reps + rep] = evaluate_statistic(spec, sample, ms[mi]);
            }
        });

    std::vector<double> alphas = cfg.alpha_levels;
    std::sort(alphas.begin(), alphas.end(), std::greater<>());

    report.kind = ReportKind::CriticalValues;
    report.config = cfg;
    report.statistic = spec;
    std::vector<double> slice(static_cast<std::size_t>(reps));
    for (std::size_t mi = 0; mi < ms.size(); ++mi) {
        std::copy(stats.begin() + static_cast<std::ptrdiff_t>(mi * reps),
                  stats.begin() + static_cast<std::ptrdiff_t>((mi + 1) * reps), slice.begin());
        std::sort(slice.begin(), slice.end());
        for (double alpha : alphas) {
            int idx = static_cast<int>(std::ceil((1.0 - alpha) * reps - 1e-9));
            idx = std::clamp(idx, 1, reps);
            const double crit = slice[idx - 1];
            // Std error from the order statistics one binomial sd away.
            const int d = std::max<int>(1, std::lround(std::sqrt(reps * alpha * (1.0 - alpha))));
            const int lo = std::clamp(idx - d, 1, reps);
            const int hi = std::clamp(idx + d, 1, reps);
            const double se = 0.5 * (slice[hi - 1] - slice[lo - 1]);
            report.rows.push_back(
                {cfg.n(), cfg.k, cfg.r, ms[mi], alpha, null.name(), "crit", crit, se});
        }
    }
    sort_rows(report.rows);
    return report;
}

MonteCarloReport calibrate_critical_values(TestKind test, Variant variant,
                                           const MonteCarloConfig& cfg) {
    return calibrate_critical_values(make_statistic(test, variant), cfg);
}

MonteCarloReport estimate_power(const StatisticSpec& spec, const Distribution& alternative,
                                const CriticalValueTable& crits, double alpha,
                                const MonteCarloConfig& cfg, int calibration_reps) {
    validate_config(cfg);
    validate_windows(spec.scheme, spec.entropy, cfg);
    const auto crit_values = crits_for(spec, crits, alpha, cfg, calibration_reps);
    const auto cells = power_cells(spec, alternative, crit_values, cfg);

    MonteCarloReport report;
    report.kind = ReportKind::Power;
    report.config = cfg;
    report.statistic = spec;
    const auto ms = cfg.m_values();
    for (std::size_t mi = 0; mi < ms.size(); ++mi)
        report.rows.push_back({cfg.n(), cfg.k, cfg.r, ms[mi], alpha, alternative.name(), "power",
                               cells[mi].power, cells[mi].se});
    sort_rows(report.rows);
    return report;
}

MonteCarloReport estimate_power(TestKind test, Variant variant, const Distribution& alternative,
                                double crit, const MonteCarloConfig& cfg) {
    if (cfg.m_min != cfg.m_max)
        throw validation_error("a single critical value applies to a single window");
    const StatisticSpec spec = make_statistic(test, variant);
    CriticalValueTable table;
    const double alpha = cfg.alpha_levels.empty() ? 0.05 : cfg.alpha_levels.front();
    table.put(CritKey::make(spec, cfg.k, cfg.r, cfg.m_min, alpha, cfg.reps),
              CritEntry{crit, 0.0, 0});
    return estimate_power(spec, alternative, table, alpha, cfg);
}

MonteCarloReport average_power(const StatisticSpec& spec,
                               const std::vector<Distribution>& alternatives,
                               const CriticalValueTable& crits, double alpha,
                               const MonteCarloConfig& cfg, int calibration_reps) {
    validate_config(cfg);
    validate_windows(spec.scheme, spec.entropy, cfg);
    if (alternatives.empty()) throw validation_error("average power needs alternatives");
    const auto crit_values = crits_for(spec, crits, alpha, cfg, calibration_reps);

    const auto ms = cfg.m_values();
    std::vector<double> sum_power(ms.size(), 0.0);
    std::vector<double> sum_var(ms.size(), 0.0);
    for (const auto& alt : alternatives) {
        const auto cells = power_cells(spec, alt, crit_values, cfg);
        for (std::size_t mi = 0; mi < ms.size(); ++mi) {
            sum_power[mi] += cells[mi].power;
            sum_var[mi] += cells[mi].se * cells[mi].se;
        }
    }

    MonteCarloReport report;
    report.kind = ReportKind::AveragePower;
    report.config = cfg;
    report.statistic = spec;
    const double count = static_cast<double>(alternatives.size());
    for (std::size_t mi = 0; mi < ms.size(); ++mi)
        report.rows.push_back({cfg.n(), cfg.k, cfg.r, ms[mi], alpha, "", "ap",
                               sum_power[mi] / count, std::sqrt(sum_var[mi]) / count});
    sort_rows(report.rows);
    return report;
}

MonteCarloReport average_power(TestKind test, Variant variant,
                               const std::vector<Distribution>& alternatives,
                               const MonteCarloConfig& cfg) {
    const StatisticSpec spec = make_statistic(test, variant);
    if (cfg.alpha_levels.empty()) throw validation_error("average power needs an alpha level");
    const double alpha = cfg.alpha_levels.front();
    MonteCarloConfig cal_cfg = cfg;
    cal_cfg.alpha_levels = {alpha};
    CriticalValueTable table;
    table.merge_from_report(calibrate_critical_values(spec, cal_cfg));
    return average_power(spec, alternatives, table, alpha, cfg);
}

OptimalWindow optimal_window_from(const MonteCarloReport& report) {
    if (report.kind != ReportKind::AveragePower)
        throw validation_error("optimal window expects an average-power report");
    const ReportRow* best = nullptr;
    for (const auto& row : report.rows) {
        if (row.column != "ap") continue;
        if (!best || row.value > best->value) best = &row;  // ties keep the smaller m
    }
    if (!best) throw validation_error("average-power report has no rows");
    OptimalWindow out;
    out.m_star = best->m;
    out.ap_star = best->value;
    for (const auto& row : report.rows)
        if (row.column == "ap" && row.value >= best->value - best->std_error)
            out.ties.push_back(row.m);
    std::sort(out.ties.begin(), out.ties.end());
    return out;
}

OptimalWindow optimal_window(TestKind test, Variant variant,
                             const std::vector<Distribution>& alternatives,
                             const MonteCarloConfig& cfg) {
    return optimal_window_from(average_power(test, variant, alternatives, cfg));
}

MonteCarloReport max_power_per_alternative(const StatisticSpec& spec,
                                           const std::vector<Distribution>& alternatives,
                                           const CriticalValueTable& crits, double alpha,
                                           const MonteCarloConfig& cfg, int calibration_reps) {
    validate_config(cfg);
    validate_windows(spec.scheme, spec.entropy, cfg);
    if (alternatives.empty()) throw validation_error("max power needs alternatives");
    const auto crit_values = crits_for(spec, crits, alpha, cfg, calibration_reps);

    MonteCarloReport report;
    report.kind = ReportKind::MaxPower;
    report.config = cfg;
    report.statistic = spec;
    const auto ms = cfg.m_values();
    for (const auto& alt : alternatives) {
        const auto cells = power_cells(spec, alt, crit_values, cfg);
        std::size_t best = 0;
        for (std::size_t mi = 1; mi < ms.size(); ++mi)
            if (cells[mi].power > cells[best].power) best = mi;
        report.rows.push_back({cfg.n(), cfg.k, cfg.r, ms[best], alpha, alt.name(), "max_power",
                               cells[best].power, cells[best].se});
        for (std::size_t mi = 0; mi < ms.size(); ++mi)
            if (cells[mi].power >= cells[best].power - cells[best].se)
                report.rows.push_back({cfg.n(), cfg.k, cfg.r, ms[mi], alpha, alt.name(),
                                       "m_at_max", static_cast<double>(ms[mi]), 0.0});
    }
    sort_rows(report.rows);
    return report;
}

MonteCarloReport max_power_per_alternative(TestKind test, Variant variant,
                                           const std::vector<Distribution>& alternatives,
                                           const MonteCarloConfig& cfg) {
    const StatisticSpec spec = make_statistic(test, variant);
    if (cfg.alpha_levels.empty()) throw validation_error("max power needs an alpha level");
    const double alpha = cfg.alpha_levels.front();
    MonteCarloConfig cal_cfg = cfg;
    cal_cfg.alpha_levels = {alpha};
    CriticalValueTable table;
    table.merge_from_report(calibrate_critical_values(spec, cal_cfg));
    return max_power_per_alternative(spec, alternatives, table, alpha, cfg);
}

}  // namespace rsskl
