#pragma once

#include <vector>

namespace spingw {

/// Calls fn(counts) for every vector of dim nonnegative counts with sum <= max_total,
/// in lexicographic order.
template <typename Fn>
void for_each_multiplicity(std::size_t dim, int max_total, Fn &&fn)
{
    std::vector<int> counts(dim, 0);
    auto rec = [&](auto &self, std::size_t pos, int remaining) -> void {
        if (pos == dim) {
            fn(static_cast<const std::vector<int> &>(counts));
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            counts[pos] = k;
            self(self, pos + 1, remaining - k);
        }
        counts[pos] = 0;
    };
    if (max_total >= 0)
        rec(rec, 0, max_total);
}

} // namespace spingw
