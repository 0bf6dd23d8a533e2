#include "rsskl/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "rsskl/dataio.hpp"
#include "rsskl/errors.hpp"
#include "rsskl/store.hpp"

namespace rsskl {

namespace {

constexpr std::uint64_t kDefaultSeed = 20101;
constexpr const char* kStoreEnv = "RSSKL_STORE";

int parse_int(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size())
        throw parse_error("bad integer for " + what + ": '" + text + "'");
    return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size())
        throw parse_error("bad integer for " + what + ": '" + text + "'");
    return v;
}

std::pair<int, int> parse_m_range(const std::string& text) {
    auto sep = text.find("..");
    std::size_t sep_len = 2;
    if (sep == std::string::npos) {
        sep = text.find('-');
        sep_len = 1;
    }
    if (sep == std::string::npos) {
        const int m = parse_int(text, "m_range");
        return {m, m};
    }
    return {parse_int(text.substr(0, sep), "m_range"),
            parse_int(text.substr(sep + sep_len), "m_range")};
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string current;
    for (char c : text) {
        if (c == ',' || c == ';') {
            if (!current.empty()) items.push_back(current);
            current.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            current.push_back(c);
        } else if (!current.empty()) {
            current.push_back(c);  // keep interior spaces, e.g. "normal(0, 1)"
        }
    }
    if (!current.empty()) items.push_back(current);
    return items;
}

std::vector<double> parse_alpha_list(const std::string& text) {
    std::vector<double> alphas;
    for (const auto& item : split_list(text)) {
        char* end = nullptr;
        const double a = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size()) throw parse_error("bad alpha '" + item + "'");
        alphas.push_back(a);
    }
    if (alphas.empty()) throw parse_error("empty alpha list");
    return alphas;
}

std::vector<Distribution> parse_alternatives(const std::string& text) {
    std::vector<Distribution> alts;
    for (const auto& item : split_list(text)) alts.push_back(Distribution::parse(item));
    if (alts.empty()) throw parse_error("empty alternatives list");
    return alts;
}

std::string join_alphas(const std::vector<double>& alphas) {
    std::string out;
    for (double a : alphas) {
        if (!out.empty()) out += ',';
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", a);
        out += buf;
    }
    return out;
}

std::string join_names(const std::vector<Distribution>& dists) {
    std::string out;
    for (const auto& d : dists) {
        if (!out.empty()) out += ',';
        out += d.name();
    }
    return out;
}

void emit(const std::string& text, const std::string& output_path, std::ostream& out) {
    if (output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(output_path);
    if (!file) throw validation_error("cannot write " + output_path);
    file << text;
}

std::string store_path_or_env(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    const char* env = std::getenv(kStoreEnv);
    return env ? env : "";
}

Variant default_variant(TestKind test, Scheme scheme) {
    if (scheme == Scheme::SRS) return Variant::Tc;
    return test == TestKind::Exponentiality ? Variant::RssT : Variant::KL1;
}

// Flags shared by the simulation subcommands; config-file values can be
// overridden from the command line.
struct JobFlags {
    std::string config_path;
    std::string output_path;
    std::string store_path;
    int reps = 0;
    std::uint64_t seed = 0;
    int workers = 0;
    bool has_reps = false;
    bool has_seed = false;
    bool has_workers = false;

    void add_to(CLI::App* sub, bool with_store) {
        sub->add_option("--config", config_path, "flat key = value config file")->required();
        sub->add_option("--output", output_path, "CSV output path (default: stdout)");
        if (with_store)
            sub->add_option("--store", store_path,
                            "critical-value store file (default: $RSSKL_STORE)");
        auto* o1 = sub->add_option("--reps", reps, "override replication count");
        auto* o2 = sub->add_option("--seed", seed, "override master seed");
        auto* o3 = sub->add_option("--workers", workers, "worker threads (result-neutral)");
        sub->callback([this, o1, o2, o3] {
            has_reps = o1->count() > 0;
            has_seed = o2->count() > 0;
            has_workers = o3->count() > 0;
        });
    }
};

// Common simulation keys: k, r, m_range, reps, seed, workers.
MonteCarloConfig read_mc_config(KeyValueConfig& kv, const JobFlags& flags) {
    MonteCarloConfig cfg;
    cfg.k = parse_int(kv.take_or("k", "10"), "k");
    cfg.r = parse_int(kv.take_or("r", "1"), "r");
    const auto [lo, hi] = parse_m_range(kv.take_required("m_range"));
    cfg.m_min = lo;
    cfg.m_max = hi;
    cfg.reps = flags.has_reps ? flags.reps : parse_int(kv.take_or("reps", "10000"), "reps");
    if (flags.has_reps) kv.take("reps");
    cfg.master_seed = flags.has_seed
                          ? flags.seed
                          : parse_u64(kv.take_or("seed", std::to_string(kDefaultSeed)), "seed");
    if (flags.has_seed) kv.take("seed");
    cfg.workers = flags.has_workers ? flags.workers : parse_int(kv.take_or("workers", "1"), "workers");
    if (flags.has_workers) kv.take("workers");
    return cfg;
}

void push_mc_items(std::vector<std::pair<std::string, std::string>>& items,
                   const MonteCarloConfig& cfg) {
    items.emplace_back("k", std::to_string(cfg.k));
    items.emplace_back("r", std::to_string(cfg.r));
    items.emplace_back("m_range",
                       std::to_string(cfg.m_min) + ".." + std::to_string(cfg.m_max));
    items.emplace_back("reps", std::to_string(cfg.reps));
    items.emplace_back("seed", std::to_string(cfg.master_seed));
}

StatisticSpec read_statistic(KeyValueConfig& kv) {
    const TestKind test = parse_test(kv.take_required("test"));
    const EstimatorKind entropy = parse_estimator(kv.take_or("estimator", "h1"));
    const auto variant_text = kv.take("variant");
    const Variant variant = variant_text ? parse_variant(*variant_text)
                                         : default_variant(test, Scheme::RSS);
    return make_statistic(test, variant, variant == Variant::Tc ? EstimatorKind::Ebrahimi
                                                                : entropy);
}

void push_spec_items(std::vector<std::pair<std::string, std::string>>& items,
                     const StatisticSpec& spec) {
    items.emplace_back("test", test_name(spec.test));
    items.emplace_back("variant", variant_name(spec.variant));
    items.emplace_back("estimator", estimator_name(spec.entropy));
}

// Loads the store (if any) and calibrates whatever keys are missing; fresh
// calibrations are appended back to the store.
CriticalValueTable ensure_crits(const StatisticSpec& spec, const MonteCarloConfig& cfg,
                                double alpha, const std::string& store_path,
                                std::uint64_t config_hash) {
    CriticalValueTable table =
        store_path.empty() ? CriticalValueTable{} : CriticalValueStore::load(store_path);
    bool missing = false;
    for (int m : cfg.m_values())
        if (!table.contains(CritKey::make(spec, cfg.k, cfg.r, m, alpha, cfg.reps))) {
            missing = true;
            break;
        }
    if (!missing) return table;

    MonteCarloConfig cal_cfg = cfg;
    cal_cfg.alpha_levels = {alpha};
    CriticalValueTable fresh;
    fresh.merge_from_report(calibrate_critical_values(spec, cal_cfg), config_hash);
    for (const auto& [key, entry] : fresh.entries()) table.put(key, entry);
    if (!store_path.empty()) CriticalValueStore::append(store_path, fresh);
    return table;
}

// --- subcommand bodies -------------------------------------------------

void run_entropy(const std::string& input, const std::string& scheme_text,
                 const std::string& estimator_text, int m, int k_flag,
                 const std::string& output_path, std::ostream& out) {
    const Scheme scheme = parse_scheme(scheme_text);
    const EstimatorKind estimator = parse_estimator(estimator_text);
    EntropyEstimate est;
    if (scheme == Scheme::SRS) {
        if (estimator != EstimatorKind::Vasicek && estimator != EstimatorKind::Ebrahimi)
            throw validation_error("srs data takes the vasicek or ebrahimi estimator");
        const auto sample = make_sorted(read_srs_file(input).values);
        est = estimator == EstimatorKind::Vasicek ? vasicek(sample, m) : ebrahimi(sample, m);
    } else {
        if (estimator != EstimatorKind::RssPooledH1 && estimator != EstimatorKind::RssPerCycleH2)
            throw validation_error("rss data takes the h1 or h2 estimator");
        const auto rss = read_rss_matrix(input);
        if (k_flag > 0 && k_flag != rss.k())
            throw validation_error("--k " + std::to_string(k_flag) + " does not match file (k=" +
                                   std::to_string(rss.k()) + ")");
        est = estimator == EstimatorKind::RssPooledH1 ? h1(rss, m) : h2(rss, m);
    }
    std::string text = "estimator,scheme,n,m,value\n";
    text += std::string(estimator_name(estimator)) + "," + scheme_name(scheme) + "," +
            std::to_string(est.n) + "," + std::to_string(est.m) + "," +
            format_fixed(est.value, 4) + "\n";
    emit(text, output_path, out);
}

void run_gof(const std::string& test_text, const std::string& input,
             const std::string& scheme_text, int k_flag, int m, double alpha,
             const std::string& variant_text, const std::string& estimator_text,
             const std::string& crit_table, double critical_flag, bool has_critical, int reps,
             const std::string& output_path, std::ostream& out) {
    const TestKind test = parse_test(test_text);
    const Scheme scheme = parse_scheme(scheme_text);
    const Variant variant =
        variant_text.empty() ? default_variant(test, scheme) : parse_variant(variant_text);
    const EstimatorKind entropy = estimator_text.empty()
                                      ? EstimatorKind::RssPooledH1
                                      : parse_estimator(estimator_text);
    const StatisticSpec spec = make_statistic(test, variant, entropy);
    if (spec.scheme != scheme)
        throw validation_error(std::string("variant ") + variant_name(variant) +
                               " applies to the " + scheme_name(spec.scheme) + " scheme");

    GofStatistic stat;
    int key_k = 0, key_r = 0;
    if (scheme == Scheme::SRS) {
        const auto sample = make_sorted(read_srs_file(input).values);
        stat = test == TestKind::Exponentiality ? exp_statistic_srs(sample, m)
                                                : norm_statistic_srs(sample, m);
        key_k = sample.n();
        key_r = 1;
    } else {
        const auto rss = read_rss_matrix(input);
        if (k_flag > 0 && k_flag != rss.k())
            throw validation_error("--k " + std::to_string(k_flag) + " does not match file (k=" +
                                   std::to_string(rss.k()) + ")");
        switch (variant) {
            case Variant::RssT: stat = exp_statistic_rss(rss, m); break;
            case Variant::KL1: stat = kl1(rss, m, entropy); break;
            case Variant::KL2: stat = kl2(rss, m, entropy); break;
            case Variant::Tc: throw validation_error("tc applies to srs data");
        }
        key_k = rss.k();
        key_r = rss.r();
    }

    double critical = critical_flag;
    if (!has_critical) {
        const std::string path = store_path_or_env(crit_table);
        if (path.empty())
            throw validation_error(
                "no critical value: pass --critical, --crit-table, or set $RSSKL_STORE");
        const auto table = CriticalValueStore::load(path);
        critical = table.at(CritKey::make(spec, key_k, key_r, m, alpha, reps)).crit;
    }

    std::string text = "test,variant,scheme,n,m,alpha,statistic,critical,decision\n";
    text += std::string(test_name(test)) + "," + variant_name(variant) + "," +
            scheme_name(scheme) + "," + std::to_string(stat.n) + "," + std::to_string(m) + "," +
            format_fixed(alpha, 4) + "," + format_fixed(stat.value, 4) + "," +
            format_fixed(critical, 4) + "," + (decide(stat, critical) ? "reject" : "accept") +
            "\n";
    emit(text, output_path, out);
}

void run_bias_rmse(JobFlags& flags, std::ostream& out) {
    auto kv = KeyValueConfig::parse_file(flags.config_path);
    const Distribution dist = Distribution::parse(kv.take_required("distribution"));
    const Scheme scheme = parse_scheme(kv.take_required("scheme"));
    const EstimatorKind estimator = parse_estimator(kv.take_required("estimator"));
    MonteCarloConfig cfg = read_mc_config(kv, flags);
    kv.finish();

    std::vector<std::pair<std::string, std::string>> items;
    items.emplace_back("command", "bias-rmse");
    items.emplace_back("distribution", dist.name());
    items.emplace_back("scheme", scheme_name(scheme));
    items.emplace_back("estimator", estimator_name(estimator));
    push_mc_items(items, cfg);
    const std::uint64_t hash = fnv1a64(canonical_config_text(std::move(items)));

    const auto report = estimate_bias_rmse(dist, scheme, estimator, cfg);
    emit(csv_for_report(report, hash), flags.output_path, out);
}

void run_calibrate(JobFlags& flags, std::ostream& out) {
    auto kv = KeyValueConfig::parse_file(flags.config_path);
    const StatisticSpec spec = read_statistic(kv);
    MonteCarloConfig cfg = read_mc_config(kv, flags);
    cfg.alpha_levels = parse_alpha_list(kv.take_or("alphas", "0.1,0.05,0.025,0.01"));
    kv.finish();

    std::vector<std::pair<std::string, std::string>> items;
    items.emplace_back("command", "calibrate");
    items.emplace_back("alphas", join_alphas(cfg.alpha_levels));
    push_spec_items(items, spec);
    push_mc_items(items, cfg);
    const std::uint64_t hash = fnv1a64(canonical_config_text(std::move(items)));

    const auto report = calibrate_critical_values(spec, cfg);
    const std::string store = store_path_or_env(flags.store_path);
    if (!store.empty()) {
        CriticalValueTable fresh;
        fresh.merge_from_report(report, hash);
        CriticalValueStore::append(store, fresh);
    }
    emit(csv_for_report(report, hash), flags.output_path, out);
}

enum class PowerMode { PerAlternative, Average, OptimalM };

void run_power_family(JobFlags& flags, PowerMode mode, std::ostream& out) {
    auto kv = KeyValueConfig::parse_file(flags.config_path);
    const StatisticSpec spec = read_statistic(kv);
    MonteCarloConfig cfg = read_mc_config(kv, flags);
    const double alpha = parse_alpha_list(kv.take_or("alpha", "0.05")).front();
    cfg.alpha_levels = {alpha};
    const auto alternatives = parse_alternatives(kv.take_required("alternatives"));
    kv.finish();

    std::vector<std::pair<std::string, std::string>> items;
    items.emplace_back("command", mode == PowerMode::PerAlternative ? "power"
                                  : mode == PowerMode::Average      ? "average-power"
                                                                    : "optimal-m");
    items.emplace_back("alpha", join_alphas({alpha}));
    items.emplace_back("alternatives", join_names(alternatives));
    push_spec_items(items, spec);
    push_mc_items(items, cfg);
    const std::uint64_t hash = fnv1a64(canonical_config_text(std::move(items)));

    const auto table =
        ensure_crits(spec, cfg, alpha, store_path_or_env(flags.store_path), hash);

    if (mode == PowerMode::PerAlternative) {
        MonteCarloReport combined;
        combined.kind = ReportKind::Power;
        combined.config = cfg;
        combined.statistic = spec;
        for (const auto& alt : alternatives) {
            auto one = estimate_power(spec, alt, table, alpha, cfg);
            combined.degenerate_replications += one.degenerate_replications;
            combined.rows.insert(combined.rows.end(), one.rows.begin(), one.rows.end());
        }
        emit(csv_for_report(combined, hash), flags.output_path, out);
        return;
    }

    auto ap = average_power(spec, alternatives, table, alpha, cfg);
    if (mode == PowerMode::Average) {
        emit(csv_for_report(ap, hash), flags.output_path, out);
        return;
    }

    const auto best = optimal_window_from(ap);
    MonteCarloReport report = ap;
    report.kind = ReportKind::OptimalM;
    const ReportRow* star = ap.find("ap", best.m_star, alpha);
    report.rows.push_back({cfg.n(), cfg.k, cfg.r, best.m_star, alpha, "", "ap_star", best.ap_star,
                           star ? star->std_error : 0.0});
    for (int m : best.ties)
        report.rows.push_back(
            {cfg.n(), cfg.k, cfg.r, m, alpha, "", "m_tie", static_cast<double>(m), 0.0});
    emit(csv_for_report(report, hash), flags.output_path, out);
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"entropy estimation and Kullback-Leibler goodness-of-fit tests "
                 "under ranked set sampling"};
    app.require_subcommand(1);

    // entropy
    std::string ent_input, ent_scheme, ent_estimator, ent_output;
    int ent_m = 1, ent_k = 0;
    auto* ent = app.add_subcommand("entropy", "estimate entropy from a data file");
    ent->add_option("--input", ent_input)->required();
    ent->add_option("--scheme", ent_scheme, "srs | rss")->required();
    ent->add_option("--estimator", ent_estimator, "vasicek | ebrahimi | h1 | h2")->required();
    ent->add_option("--m", ent_m, "spacing window")->required();
    ent->add_option("--k", ent_k, "expected set size of an rss file");
    ent->add_option("--output", ent_output);

    // gof
    std::string gof_test, gof_input, gof_scheme, gof_variant, gof_estimator, gof_table,
        gof_output;
    int gof_k = 0, gof_m = 1, gof_reps = 10000;
    double gof_alpha = 0.05, gof_critical = 0.0;
    auto* gof = app.add_subcommand("gof", "run a goodness-of-fit test on a data file");
    gof->add_option("--test", gof_test, "exp | norm")->required();
    gof->add_option("--input", gof_input)->required();
    gof->add_option("--scheme", gof_scheme, "srs | rss")->required();
    gof->add_option("--k", gof_k, "expected set size of an rss file");
    gof->add_option("--m", gof_m, "spacing window")->required();
    gof->add_option("--alpha", gof_alpha, "significance level")->required();
    gof->add_option("--variant", gof_variant, "tc | rss-t | kl1 | kl2");
    gof->add_option("--estimator", gof_estimator, "entropy inside kl1/kl2: h1 | h2");
    gof->add_option("--crit-table", gof_table, "critical-value store (default: $RSSKL_STORE)");
    auto* crit_opt = gof->add_option("--critical", gof_critical, "explicit critical value");
    gof->add_option("--reps", gof_reps, "replication count of the calibration to look up");
    gof->add_option("--output", gof_output);

    JobFlags bias_flags, cal_flags, pow_flags, ap_flags, opt_flags;
    auto* bias = app.add_subcommand("bias-rmse", "simulate estimator bias and RMSE");
    bias_flags.add_to(bias, false);
    auto* cal = app.add_subcommand("calibrate", "simulate null critical values");
    cal_flags.add_to(cal, true);
    auto* pow = app.add_subcommand("power", "simulate power against alternatives");
    pow_flags.add_to(pow, true);
    auto* ap = app.add_subcommand("average-power", "simulate average power over alternatives");
    ap_flags.add_to(ap, true);
    auto* opt = app.add_subcommand("optimal-m", "pick the window with the best average power");
    opt_flags.add_to(opt, true);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);

        if (ent->parsed())
            run_entropy(ent_input, ent_scheme, ent_estimator, ent_m, ent_k, ent_output, out);
        if (gof->parsed())
            run_gof(gof_test, gof_input, gof_scheme, gof_k, gof_m, gof_alpha, gof_variant,
                    gof_estimator, gof_table, gof_critical, crit_opt->count() > 0, gof_reps,
                    gof_output, out);
        if (bias->parsed()) run_bias_rmse(bias_flags, out);
        if (cal->parsed()) run_calibrate(cal_flags, out);
        if (pow->parsed()) run_power_family(pow_flags, PowerMode::PerAlternative, out);
        if (ap->parsed()) run_power_family(ap_flags, PowerMode::Average, out);
        if (opt->parsed()) run_power_family(opt_flags, PowerMode::OptimalM, out);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const degenerate_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace rsskl
