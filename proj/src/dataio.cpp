#include "rsskl/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rsskl/errors.hpp"

namespace rsskl {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& token, const std::filesystem::path& path, int line) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || !std::isfinite(v))
        throw parse_error(path.string() + ":" + std::to_string(line) + ": not a number: '" +
                          token + "'");
    return v;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            if (!current.empty()) fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) fields.push_back(std::move(current));
    return fields;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open " + path.string());
    return in;
}

bool skippable(const std::string& line) {
    const std::string t = trim(line);
    return t.empty() || t[0] == '#';
}

}  // namespace

SimpleSample read_srs_file(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 1)
            throw parse_error(path.string() + ":" + std::to_string(lineno) +
                              ": expected one value per line");
        values.push_back(parse_double(fields[0], path, lineno));
    }
    if (values.empty()) throw parse_error(path.string() + ": no data");
    return SimpleSample{std::move(values), false};
}

void write_srs_file(const std::filesystem::path& path, const SimpleSample& sample) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write " + path.string());
    for (double v : sample.values) out << format_full(v) << '\n';
}

RankedSetSample read_rss_matrix(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<double> cells;
    std::string line;
    int lineno = 0;
    int k = 0;
    int rows = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        const auto fields = split_fields(line);
        if (k == 0) {
            k = static_cast<int>(fields.size());
        } else if (static_cast<int>(fields.size()) != k) {
            throw parse_error(path.string() + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(k) + " fields, got " +
                              std::to_string(fields.size()));
        }
        for (const auto& f : fields) cells.push_back(parse_double(f, path, lineno));
        ++rows;
    }
    if (rows == 0) throw parse_error(path.string() + ": no data");
    return RankedSetSample(k, rows, std::move(cells));
}

void write_rss_matrix(const std::filesystem::path& path, const RankedSetSample& rss) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write " + path.string());
    for (int i = 0; i < rss.r(); ++i) {
        for (int j = 0; j < rss.k(); ++j) {
            if (j) out << ' ';
            out << format_full(rss.cell(i, j));
        }
        out << '\n';
    }
}

KeyValueConfig KeyValueConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str(), path.string());
}

KeyValueConfig KeyValueConfig::parse_text(std::string_view text, std::string origin) {
    KeyValueConfig cfg;
    cfg.origin_ = std::move(origin);
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error(cfg.origin_ + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw parse_error(cfg.origin_ + ":" + std::to_string(lineno) + ": empty key");
        if (cfg.entries_.count(key))
            throw parse_error(cfg.origin_ + ":" + std::to_string(lineno) + ": duplicate key '" +
                              key + "'");
        cfg.entries_[key] = Entry{value, lineno, false};
    }
    return cfg;
}

std::optional<std::string> KeyValueConfig::take(std::string_view key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    it->second.used = true;
    return it->second.value;
}

std::string KeyValueConfig::take_or(std::string_view key, std::string_view fallback) {
    auto v = take(key);
    return v ? *v : std::string(fallback);
}

std::string KeyValueConfig::take_required(std::string_view key) {
    auto v = take(key);
    if (!v) throw parse_error(origin_ + ": missing required key '" + std::string(key) + "'");
    return *v;
}

void KeyValueConfig::finish() const {
    for (const auto& [key, entry] : entries_)
        if (!entry.used)
            throw parse_error(origin_ + ":" + std::to_string(entry.line) + ": unknown key '" +
                              key + "'");
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string canonical_config_text(std::vector<std::pair<std::string, std::string>> items) {
    std::sort(items.begin(), items.end());
    std::string out;
    for (const auto& [key, value] : items) {
        out += key;
        out += '=';
        out += value;
        out += '\n';
    }
    return out;
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

std::string format_full(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string csv_for_report(const MonteCarloReport& report, std::uint64_t config_hash) {
    char head[96];
    std::snprintf(head, sizeof(head), "# config_hash=%016llx seed=%llu\n",
                  static_cast<unsigned long long>(config_hash),
                  static_cast<unsigned long long>(report.config.master_seed));
    std::string out = head;
    out += "kind,test,variant,estimator,scheme,n,k,r,m,alpha,label,column,value,std_error\n";

    std::string test, variant, estimator, scheme;
    if (report.statistic) {
        test = test_name(report.statistic->test);
        variant = variant_name(report.statistic->variant);
        estimator = estimator_name(report.statistic->entropy);
        scheme = scheme_name(report.statistic->scheme);
    } else {
        if (report.estimator) estimator = estimator_name(*report.estimator);
        if (report.scheme) scheme = scheme_name(*report.scheme);
    }
    for (const auto& row : report.rows) {
        out += report_kind_name(report.kind);
        out += ',';
        out += test;
        out += ',';
        out += variant;
        out += ',';
        out += estimator;
        out += ',';
        out += scheme;
        out += ',';
        out += std::to_string(row.n);
        out += ',';
        out += std::to_string(row.k);
        out += ',';
        out += std::to_string(row.r);
        out += ',';
        out += row.m > 0 ? std::to_string(row.m) : std::string();
        out += ',';
        out += row.alpha > 0.0 ? format_fixed(row.alpha, 4) : std::string();
        out += ',';
        out += row.label;
        out += ',';
        out += row.column;
        out += ',';
        out += format_fixed(row.value, 4);
        out += ',';
        out += format_fixed(row.std_error, 4);
        out += '\n';
    }
    return out;
}

}  // namespace rsskl
