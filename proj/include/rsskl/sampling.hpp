#pragma once

#include <span>
#include <vector>

#include "rsskl/distributions.hpp"

namespace rsskl {

struct SimpleSample {
    std::vector<double> values;
    bool sorted = false;

    int n() const { return static_cast<int>(values.size()); }
};

// Sorts the values and sets the flag.
SimpleSample make_sorted(std::vector<double> values);

// Balanced ranked set sample: r cycles of set size k. Entry (cycle i,
// rank j) is the j-th order statistic of its own subsample of k draws under
// perfect ranking, so all r*k measured cells are mutually independent.
class RankedSetSample {
  public:
    // cells is row-major r x k: cells[i*k + j] holds cycle i, rank j+1.
    RankedSetSample(int k, int r, std::vector<double> cells);

    int k() const { return k_; }
    int r() const { return r_; }
    int n() const { return r_ * k_; }

    double cell(int cycle, int rank) const { return cells_[cycle * k_ + rank]; }
    std::span<const double> cycle(int i) const {
        return {cells_.data() + static_cast<std::size_t>(i) * k_, static_cast<std::size_t>(k_)};
    }
    const std::vector<double>& cells() const { return cells_; }

  private:
    int k_;
    int r_;
    std::vector<double> cells_;
};

// n i.i.d. draws, unsorted.
SimpleSample draw_srs(const Distribution& dist, int n, RandomStream& rng);

// r cycles; each cell draws its own subsample of k values and keeps the
// order statistic of its rank (r*k*k underlying draws per dataset).
RankedSetSample draw_rss(const Distribution& dist, int k, int r, RandomStream& rng);

// All r*k measured values, sorted.
SimpleSample pool_and_sort(const RankedSetSample& rss);

// Each cycle sorted separately.
std::vector<SimpleSample> sort_within_cycles(const RankedSetSample& rss);

}  // namespace rsskl
