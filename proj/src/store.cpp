#include "rsskl/store.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rsskl/dataio.hpp"
#include "rsskl/errors.hpp"

namespace rsskl {

namespace {

constexpr const char* kHeader = "rsskl-critstore v1";

}  // namespace

CriticalValueTable CriticalValueStore::load(const std::filesystem::path& path) {
    CriticalValueTable table;
    std::ifstream in(path);
    if (!in) return table;

    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw parse_error(path.string() + ": not a critical-value store (bad header)");

    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string test, variant, estimator, hash_hex;
        int k = 0, r = 0, m = 0, reps = 0;
        double alpha = 0.0, crit = 0.0, se = 0.0;
        if (!(fields >> test >> variant >> estimator >> k >> r >> m >> alpha >> reps >> crit >>
              se >> hash_hex))
            throw parse_error(path.string() + ":" + std::to_string(lineno) + ": malformed record");
        StatisticSpec spec;
        spec.test = parse_test(test);
        spec.variant = parse_variant(variant);
        spec.entropy = parse_estimator(estimator);
        spec.scheme = spec.variant == Variant::Tc ? Scheme::SRS : Scheme::RSS;
        table.put(CritKey::make(spec, k, r, m, alpha, reps),
                  CritEntry{crit, se, std::strtoull(hash_hex.c_str(), nullptr, 16)});
    }
    return table;
}

void CriticalValueStore::append(const std::filesystem::path& path,
                                const CriticalValueTable& table) {
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw validation_error("cannot write " + path.string());
    if (fresh) out << kHeader << '\n';
    for (const auto& [key, entry] : table.entries()) {
        char hash_hex[24];
        std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                      static_cast<unsigned long long>(entry.config_hash));
        out << test_name(key.test) << ' ' << variant_name(key.variant) << ' '
            << estimator_name(key.entropy) << ' ' << key.k << ' ' << key.r << ' ' << key.m << ' '
            << format_fixed(key.alpha_micro / 1e6, 6) << ' ' << key.reps << ' '
            << format_full(entry.crit) << ' ' << format_full(entry.std_error) << ' ' << hash_hex
            << '\n';
    }
}

}  // namespace rsskl
