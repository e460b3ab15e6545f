#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rangepack {

using Rational = boost::multiprecision::cpp_rational;
using ItemId = std::int32_t;
using Units = std::int64_t;

// Item size as an exact fraction of the bin capacity. All weights of one
// instance share the capacity as denominator, so comparisons and sums never
// round.
class Weight {
 public:
  Weight() = default;
  Weight(Units numerator, Units denominator);

  Units numerator() const { return numerator_; }
  Units denominator() const { return denominator_; }

  Rational value() const { return Rational(numerator_, denominator_); }
  double to_double() const { return static_cast<double>(numerator_) / static_cast<double>(denominator_); }

  bool is_full() const { return numerator_ == denominator_; }
  bool is_large() const { return 2 * numerator_ > denominator_; }

  Weight operator+(const Weight& other) const;
  std::strong_ordering operator<=>(const Weight& other) const;
  bool operator==(const Weight& other) const;

 private:
  Units numerator_ = 0;
  Units denominator_ = 1;
};

struct Item {
  ItemId id = 0;
  Weight weight;

  bool operator==(const Item&) const = default;
};

// One original item or a merged composite.
struct Piece {
  Weight weight;
  std::vector<ItemId> member_ids;
};

struct Bin {
  std::vector<ItemId> member_ids;
  Weight load;
};

class Instance {
 public:
  Instance() = default;
  /// Builds an instance from integer sizes measured against `capacity`.
  /// Throws std::invalid_argument unless every size lies in [1, capacity].
  Instance(std::string name, Units capacity, const std::vector<Units>& sizes,
           std::optional<int> best_known = std::nullopt);

  const std::string& name() const { return name_; }
  Units capacity() const { return capacity_; }
  const std::vector<Item>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::optional<int> best_known() const { return best_known_; }

  Units units(ItemId id) const { return items_[static_cast<std::size_t>(id)].weight.numerator(); }
  Units total_units() const;

  void set_name(std::string name) { name_ = std::move(name); }
  void set_best_known(std::optional<int> best) { best_known_ = best; }

  bool operator==(const Instance&) const = default;

 private:
  std::string name_;
  Units capacity_ = 1;
  std::vector<Item> items_;
  std::optional<int> best_known_;
};

struct PackCounters {
  std::int64_t merges = 0;
  std::int64_t bucket_scans = 0;
  std::int64_t f2_overflows = 0;
  std::int64_t item_touches = 0;
  std::int64_t peak_open = 0;
};

struct PackingResult {
  std::vector<Bin> bins;
  std::string algorithm_tag;
  std::int64_t merge_count = 0;
  std::string config_echo;
  PackCounters counters;

  std::size_t bin_count() const { return bins.size(); }
};

struct Verdict {
  bool ok = true;
  std::string violation;

  explicit operator bool() const { return ok; }
};

/// Checks capacity, exact partition of item ids and recorded loads, in that
/// order per bin. Reports the first failure; never throws.
Verdict validate_result(const Instance& instance, const PackingResult& result);

struct FillStats {
  Rational min_fill;
  Rational mean_fill;
  Rational fraction_at_least_two_thirds;
};

/// Fill statistics over bin loads. An empty result reports 1 for every field.
FillStats fill_stats(const PackingResult& result);

std::string format_rational(const Rational& value);
double to_double(const Rational& value);

}  // namespace rangepack
