#include "rsskl/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "rsskl/errors.hpp"

namespace rsskl {

SimpleSample make_sorted(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return SimpleSample{std::move(values), true};
}

RankedSetSample::RankedSetSample(int k, int r, std::vector<double> cells) : k_(k), r_(r) {
    if (k < 1 || r < 1) throw validation_error("ranked set sample needs k >= 1 and r >= 1");
    if (cells.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(r))
        throw validation_error("ranked set sample cell count does not match r x k");
    for (double v : cells)
        if (!std::isfinite(v)) throw validation_error("ranked set sample has a non-finite cell");
    cells_ = std::move(cells);
}

SimpleSample draw_srs(const Distribution& dist, int n, RandomStream& rng) {
    if (n < 1) throw validation_error("sample size must be at least 1");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) values.push_back(dist.sample(rng));
    return SimpleSample{std::move(values), false};
}

RankedSetSample draw_rss(const Distribution& dist, int k, int r, RandomStream& rng) {
    if (k < 2) throw validation_error("ranked set sampling needs set size k >= 2");
    if (r < 1) throw validation_error("ranked set sampling needs at least one cycle");
    std::vector<double> cells(static_cast<std::size_t>(k) * static_cast<std::size_t>(r));
    std::vector<double> sub(static_cast<std::size_t>(k));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < k; ++j) {
            for (int t = 0; t < k; ++t) sub[static_cast<std::size_t>(t)] = dist.sample(rng);
            std::nth_element(sub.begin(), sub.begin() + j, sub.end());
            cells[static_cast<std::size_t>(i) * k + j] = sub[static_cast<std::size_t>(j)];
        }
    }
    return RankedSetSample(k, r, std::move(cells));
}

SimpleSample pool_and_sort(const RankedSetSample& rss) {
    return make_sorted(rss.cells());
}

std::vector<SimpleSample> sort_within_cycles(const RankedSetSample& rss) {
    std::vector<SimpleSample> out;
    out.reserve(static_cast<std::size_t>(rss.r()));
    for (int i = 0; i < rss.r(); ++i) {
        auto row = rss.cycle(i);
        out.push_back(make_sorted(std::vector<double>(row.begin(), row.end())));
    }
    return out;
}

}  // namespace rsskl
