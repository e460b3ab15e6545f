#include "rangepack/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

namespace rangepack {
namespace {

// Max-tree over residual capacities; leftmost bin with residual >= size in
// O(log n).
class ResidualTree {
 public:
  explicit ResidualTree(std::size_t max_bins) {
    while (leaves_ < std::max<std::size_t>(max_bins, 1)) leaves_ *= 2;
    tree_.assign(2 * leaves_, -1);
  }

  std::size_t first_fit(Units size) const {
    if (tree_[1] < size) return npos;
    std::size_t node = 1;
    while (node < leaves_) node = tree_[2 * node] >= size ? 2 * node : 2 * node + 1;
    return node - leaves_;
  }

  void set(std::size_t bin, Units residual) {
    std::size_t node = bin + leaves_;
    tree_[node] = residual;
    for (node /= 2; node >= 1; node /= 2) tree_[node] = std::max(tree_[2 * node], tree_[2 * node + 1]);
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t leaves_ = 1;
  std::vector<Units> tree_;
};

std::vector<ItemId> decreasing_order(const Instance& instance) {
  std::vector<ItemId> order(instance.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](ItemId a, ItemId b) { return instance.units(a) > instance.units(b); });
  return order;
}

std::vector<ItemId> input_order(const Instance& instance) {
  std::vector<ItemId> order(instance.size());
  std::iota(order.begin(), order.end(), 0);
  return order;
}

PackingResult finish(const Instance& instance, std::vector<std::vector<ItemId>> members,
                     const std::vector<Units>& loads, std::string tag) {
  PackingResult result;
  result.algorithm_tag = std::move(tag);
  result.bins.reserve(members.size());
  for (std::size_t b = 0; b < members.size(); ++b)
    result.bins.push_back(Bin{std::move(members[b]), Weight(loads[b], instance.capacity())});
  result.counters.item_touches = static_cast<std::int64_t>(instance.size());
  return result;
}

PackingResult first_fit_in_order(const Instance& instance, const std::vector<ItemId>& order, std::string tag) {
  ResidualTree tree(instance.size());
  std::vector<std::vector<ItemId>> members;
  std::vector<Units> loads;
  for (ItemId id : order) {
    const Units size = instance.units(id);
    std::size_t bin = tree.first_fit(size);
    if (bin == ResidualTree::npos) {
      bin = members.size();
      members.emplace_back();
      loads.push_back(0);
    }
    members[bin].push_back(id);
    loads[bin] += size;
    tree.set(bin, instance.capacity() - loads[bin]);
  }
  auto result = finish(instance, std::move(members), loads, std::move(tag));
  result.counters.peak_open = static_cast<std::int64_t>(result.bins.size());
  return result;
}

}  // namespace

PackingResult first_fit_decreasing(const Instance& instance) {
  return first_fit_in_order(instance, decreasing_order(instance), "ffd");
}

PackingResult first_fit(const Instance& instance) { return first_fit_in_order(instance, input_order(instance), "ff"); }

PackingResult best_fit_decreasing(const Instance& instance) {
  // (residual, bin index): lower_bound finds the tightest fit, lowest index on ties.
  std::set<std::pair<Units, std::size_t>> open;
  std::vector<std::vector<ItemId>> members;
  std::vector<Units> loads;
  for (ItemId id : decreasing_order(instance)) {
    const Units size = instance.units(id);
    auto it = open.lower_bound({size, 0});
    std::size_t bin;
    if (it == open.end()) {
      bin = members.size();
      members.emplace_back();
      loads.push_back(0);
    } else {
      bin = it->second;
      open.erase(it);
    }
    members[bin].push_back(id);
    loads[bin] += size;
    open.insert({instance.capacity() - loads[bin], bin});
  }
  auto result = finish(instance, std::move(members), loads, "bfd");
  result.counters.peak_open = static_cast<std::int64_t>(result.bins.size());
  return result;
}

PackingResult next_fit(const Instance& instance) {
  std::vector<std::vector<ItemId>> members;
  std::vector<Units> loads;
  std::int64_t touches = 0;
  for (const Item& item : instance.items()) {
    ++touches;
    const Units size = item.weight.numerator();
    if (members.empty() || loads.back() + size > instance.capacity()) {
      members.emplace_back();
      loads.push_back(0);
    }
    members.back().push_back(item.id);
    loads.back() += size;
  }
  auto result = finish(instance, std::move(members), loads, "nf");
  result.counters.item_touches = touches;
  result.counters.peak_open = result.bins.empty() ? 0 : 1;
  return result;
}

}  // namespace rangepack
