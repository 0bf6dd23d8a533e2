#pragma once

#include <filesystem>

#include "rsskl/montecarlo.hpp"

namespace rsskl {

// Plain-text critical-value store: a version header, then one record per
// key with the value at full precision. The file is append-only; on load,
// later records win over earlier ones with the same key.
class CriticalValueStore {
  public:
    // Missing file loads as an empty table.
    static CriticalValueTable load(const std::filesystem::path& path);

    static void append(const std::filesystem::path& path, const CriticalValueTable& table);
};

}  // namespace rsskl
