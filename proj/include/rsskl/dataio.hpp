#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rsskl/montecarlo.hpp"
#include "rsskl/sampling.hpp"

namespace rsskl {

// One value per line; blank lines and '#' comments are skipped.
SimpleSample read_srs_file(const std::filesystem::path& path);
void write_srs_file(const std::filesystem::path& path, const SimpleSample& sample);

// r lines of k whitespace- or comma-separated reals, column j = rank j.
RankedSetSample read_rss_matrix(const std::filesystem::path& path);
void write_rss_matrix(const std::filesystem::path& path, const RankedSetSample& rss);

// Flat "key = value" config files with '#' comments. Consumers take() the
// keys they understand and then finish(), which rejects anything left over
// naming the offending key and line.
class KeyValueConfig {
  public:
    static KeyValueConfig parse_file(const std::filesystem::path& path);
    static KeyValueConfig parse_text(std::string_view text, std::string origin);

    std::optional<std::string> take(std::string_view key);
    std::string take_or(std::string_view key, std::string_view fallback);
    std::string take_required(std::string_view key);
    void finish() const;

    const std::string& origin() const { return origin_; }

  private:
    struct Entry {
        std::string value;
        int line = 0;
        bool used = false;
    };

    std::map<std::string, Entry, std::less<>> entries_;
    std::string origin_;
};

std::uint64_t fnv1a64(std::string_view text);

// Canonical "key=value\n" text over sorted keys; hashed into the config
// fingerprint every CSV echoes.
std::string canonical_config_text(std::vector<std::pair<std::string, std::string>> items);

std::string format_fixed(double value, int decimals);
std::string format_full(double value);

// CSV rendering of a report: a comment line carrying the config hash and
// master seed, a header, then one line per row with 4-decimal values.
std::string csv_for_report(const MonteCarloReport& report, std::uint64_t config_hash);

}  // namespace rsskl
