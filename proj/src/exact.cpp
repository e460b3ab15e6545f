#include "rangepack/exact.hpp"

#include <limits>
#include <utility>
#include <vector>

#include "rangepack/baselines.hpp"

namespace rangepack {

int lower_bound_l1(const Instance& instance) {
  const Units total = instance.total_units();
  return static_cast<int>((total + instance.capacity() - 1) / instance.capacity());
}

int optimal_bins(const Instance& instance, std::size_t limit) {
  const std::size_t n = instance.size();
  if (n > limit)
    throw OracleLimitError("exact oracle refuses " + std::to_string(n) + " items (limit " + std::to_string(limit) +
                           ")");
  if (n > 30) throw OracleLimitError("exact oracle supports at most 30 items");
  if (n == 0) return 0;

  // FFD meeting the L1 bound is already optimal.
  const int l1 = lower_bound_l1(instance);
  if (static_cast<int>(first_fit_decreasing(instance).bin_count()) == l1) return l1;

  // best[mask] = lexicographically smallest (closed bins, load of the open bin)
  // over all orderings of the items in mask.
  const Units capacity = instance.capacity();
  const std::size_t full = std::size_t{1} << n;
  std::vector<std::pair<int, Units>> best(full, {std::numeric_limits<int>::max(), 0});
  best[0] = {1, 0};
  for (std::size_t mask = 0; mask < full; ++mask) {
    const auto [bins, load] = best[mask];
    if (bins == std::numeric_limits<int>::max()) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) continue;
      const Units size = instance.units(static_cast<ItemId>(i));
      std::pair<int, Units> next = load + size <= capacity ? std::pair{bins, load + size} : std::pair{bins + 1, size};
      auto& slot = best[mask | (std::size_t{1} << i)];
      if (next < slot) slot = next;
    }
  }
  return best[full - 1].first;
}

}  // namespace rangepack
