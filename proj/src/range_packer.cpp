#include "rangepack/range_packer.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rangepack {

void RangeConfig::validate() const {
  int r = range_count;
  if (r < 10 || r % 10 != 0) throw std::invalid_argument("range count must be 10 * 2^j");
  r /= 10;
  if ((r & (r - 1)) != 0) throw std::invalid_argument("range count must be 10 * 2^j");
  if (scaling_depth < 0 || scaling_depth > kMaxScalingDepth)
    throw std::invalid_argument("scaling depth must be in [0, " + std::to_string(kMaxScalingDepth) + "]");
}

std::string RangeConfig::echo() const {
  std::ostringstream out;
  out << "ranges=" << range_count << " policy=" << (policy == SelectionPolicy::lifo ? "lifo" : "random")
      << " seed=" << seed << " scaling_depth=" << scaling_depth;
  return out.str();
}

int range_index(Units numerator, Units denominator, int range_count) {
  if (numerator <= 0 || numerator >= denominator)
    throw std::logic_error("range_index: weight must lie strictly inside (0, 1)");
  const Units scaled = static_cast<Units>(range_count) * numerator;
  return static_cast<int>((scaled + denominator - 1) / denominator) - 1;
}

BucketTable::BucketTable(const Instance& instance, const RangeConfig& config)
    : instance_(&instance),
      range_count_(config.range_count),
      capacity_(instance.capacity()),
      inverse_capacity_(1.0 / static_cast<double>(instance.capacity())),
      policy_(config.policy),
      rng_(config.seed),
      units_(instance.size(), 0),
      tail_(instance.size(), -1),
      next_(instance.size(), -1),
      buckets_(static_cast<std::size_t>(config.range_count)) {
  config.validate();
}

void BucketTable::add_item(ItemId id) {
  if (id < 0 || static_cast<std::size_t>(id) >= tail_.size()) throw std::out_of_range("add_item: unknown item");
  if (tail_[static_cast<std::size_t>(id)] != -1) throw std::logic_error("item added twice");
  units_[static_cast<std::size_t>(id)] = instance_->units(id) << level_;
  tail_[static_cast<std::size_t>(id)] = id;
  ++live_;
  counters_.peak_open = std::max<std::int64_t>(counters_.peak_open, static_cast<std::int64_t>(live_));
  route(id);
}

void BucketTable::add_all_items() {
  for (std::size_t i = 0; i < instance_->size(); ++i) add_item(static_cast<ItemId>(i));
}

int BucketTable::bucket_of(Units units) const {
  if (units <= 0 || units >= capacity_) throw std::logic_error("range_index: weight must lie strictly inside (0, 1)");
  const Units scaled = static_cast<Units>(range_count_) * units;
  auto k = static_cast<Units>(static_cast<double>(scaled) * inverse_capacity_);
  while (k > 0 && k * capacity_ >= scaled) --k;
  while ((k + 1) * capacity_ < scaled) ++k;
  return static_cast<int>(k);
}

BucketTable::ClosedBin BucketTable::closed_bin(std::size_t index) const {
  const auto next_level = std::upper_bound(level_begin_.begin(), level_begin_.end(), index);
  const PieceRef head = closed_heads_.at(index);
  return {head, units_[static_cast<std::size_t>(head)], static_cast<int>(next_level - level_begin_.begin()) - 1};
}

std::vector<BucketTable::ClosedBin> BucketTable::closed() const {
  std::vector<ClosedBin> out;
  out.reserve(closed_heads_.size());
  for (std::size_t i = 0; i < closed_heads_.size(); ++i) out.push_back(closed_bin(i));
  return out;
}

void BucketTable::append_members(PieceRef ref, std::vector<ItemId>& out) const {
  for (ItemId it = ref; it != -1; it = next_[static_cast<std::size_t>(it)]) out.push_back(it);
}

std::vector<ItemId> BucketTable::members(PieceRef ref) const {
  scratch_.clear();
  append_members(ref, scratch_);
  return {scratch_.begin(), scratch_.end()};
}

Piece BucketTable::piece(PieceRef ref) const {
  return Piece{Weight(units_[static_cast<std::size_t>(ref)], capacity_), members(ref)};
}

std::vector<Piece> BucketTable::bucket(int k) const {
  std::vector<Piece> out;
  for (PieceRef ref : buckets_.at(static_cast<std::size_t>(k))) out.push_back(piece(ref));
  return out;
}

BucketTable::Taken BucketTable::take_slot(int k) {
  auto& bucket = bucket_ref(k);
  if (bucket.empty()) throw std::logic_error("take from empty bucket");
  std::size_t slot = bucket.size() - 1;
  if (policy_ == SelectionPolicy::seeded_random) slot = static_cast<std::size_t>(rng_() % bucket.size());
  const PieceRef ref = bucket[slot];
  bucket[slot] = bucket.back();
  bucket.pop_back();
  return {ref, slot};
}

// Exact inverse of take_slot.
void BucketTable::restore(int k, Taken taken) {
  auto& bucket = bucket_ref(k);
  if (taken.slot == bucket.size()) {
    bucket.push_back(taken.ref);
  } else {
    bucket.push_back(bucket[taken.slot]);
    bucket[taken.slot] = taken.ref;
  }
}

PieceRef BucketTable::take(int k) { return take_slot(k).ref; }

PieceRef BucketTable::merge(PieceRef a, PieceRef b) {
  const auto ia = static_cast<std::size_t>(a);
  const auto ib = static_cast<std::size_t>(b);
  units_[ia] += units_[ib];
  next_[static_cast<std::size_t>(tail_[ia])] = b;
  tail_[ia] = tail_[ib];
  --live_;
  ++counters_.merges;
  return a;
}

int BucketTable::route(PieceRef c) {
  const Units units = units_[static_cast<std::size_t>(c)];
  if (units > capacity_) throw std::logic_error("piece exceeds capacity");
  if (units == capacity_) {
    close(c);
    return -1;
  }
  const int k = bucket_of(units);
  bucket_ref(k).push_back(c);
  return k;
}

void BucketTable::close(PieceRef a) {
  closed_heads_.push_back(a);
  --live_;
}

MatchResult BucketTable::f1_exact_complement(PieceRef a) {
  const Units a_units = units_[static_cast<std::size_t>(a)];
  const int k = bucket_of(a_units);
  const int complement = range_count_ - 1 - k;
  ++counters_.bucket_scans;
  if (bucket_size(complement) == 0) return {false, a};
  const Taken b = take_slot(complement);
  if (a_units + units_[static_cast<std::size_t>(b.ref)] > capacity_) {
    restore(complement, b);
    return {false, a};
  }
  const PieceRef c = merge(a, b.ref);
  return {true, route(c) < 0 ? -1 : c};
}

MatchResult BucketTable::f2_chain(PieceRef a) {
  const Units a_units = units_[static_cast<std::size_t>(a)];
  const int k = bucket_of(a_units);
  for (int j = range_count_ - 2 - k; j >= 0; --j) {
    ++counters_.bucket_scans;
    if (bucket_size(j) == 0) continue;
    const PieceRef b = take(j);
    if (a_units + units_[static_cast<std::size_t>(b)] > capacity_) {
      ++counters_.f2_overflows;
      throw std::logic_error("f2_chain overflow: complement-chain bound violated");
    }
    const PieceRef c = merge(a, b);
    return {true, route(c) < 0 ? -1 : c};
  }
  return {false, a};
}

void BucketTable::large_phase() {
  for (int k = range_count_ / 2; k < range_count_; ++k) {
    while (true) {
      ++counters_.bucket_scans;
      if (bucket_size(k) == 0) break;
      const PieceRef a = take(k);
      if (f1_exact_complement(a).merged) continue;
      if (f2_chain(a).merged) continue;
      close(a);
    }
  }
}

SmallStep BucketTable::small_pair_phase_step() {
  int k = range_count_ / 2 - 1;
  for (; k >= 0; --k) {
    ++counters_.bucket_scans;
    if (bucket_size(k) != 0) break;
  }
  if (k < 0) return {StepKind::idle, -1};

  const PieceRef a = take(k);
  if (bucket_size(k) > 0) {
    const PieceRef b = take(k);
    return {StepKind::merged, route(merge(a, b))};
  }
  // Lone piece in its range: pair it with the largest-range piece below.
  for (int j = k - 1; j >= 0; --j) {
    ++counters_.bucket_scans;
    if (bucket_size(j) == 0) continue;
    const PieceRef b = take(j);
    return {StepKind::merged, route(merge(a, b))};
  }
  close(a);
  return {StepKind::closed, -1};
}

void BucketTable::double_all() {
  std::vector<PieceRef> pieces;
  pieces.reserve(live_);
  for (auto& bucket : buckets_) {
    pieces.insert(pieces.end(), bucket.begin(), bucket.end());
    bucket.clear();
  }
  ++level_;
  level_begin_.push_back(closed_heads_.size());
  for (PieceRef ref : pieces) {
    Units& units = units_[static_cast<std::size_t>(ref)];
    if (2 * units > capacity_) throw std::logic_error("double_all: piece larger than one half");
    units *= 2;
    route(ref);
  }
}

Verdict BucketTable::check_invariants() const {
  auto fail = [](std::string message) { return Verdict{false, std::move(message)}; };
  std::vector<char> seen(tail_.size(), 0);
  auto claim = [&](const std::vector<ItemId>& ids) -> bool {
    for (ItemId id : ids) {
      auto& s = seen[static_cast<std::size_t>(id)];
      if (s || tail_[static_cast<std::size_t>(id)] == -1) return false;
      s = 1;
    }
    return true;
  };
  std::size_t live = 0;
  for (int k = 0; k < range_count_; ++k) {
    for (PieceRef ref : buckets_[static_cast<std::size_t>(k)]) {
      ++live;
      const Units units = units_[static_cast<std::size_t>(ref)];
      if (range_index(units, capacity_, range_count_) != k)
        return fail("piece in wrong bucket " + std::to_string(k));
      const auto ids = members(ref);
      Units sum = 0;
      for (ItemId id : ids) sum += instance_->units(id);
      if ((sum << level_) != units) return fail("piece weight differs from member sum");
      if (!claim(ids)) return fail("bucketed piece overlaps another piece or bin");
    }
  }
  if (live != live_) return fail("live piece count out of sync");
  for (const auto& bin : closed()) {
    if (!claim(members(bin.head))) return fail("closed bin overlaps another piece or bin");
    if (bin.units > capacity_) return fail("closed bin overfull");
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if ((tail_[i] != -1) != (seen[i] != 0)) return fail("processed item " + std::to_string(i) + " is unaccounted for");
  return {};
}

void drive(BucketTable& table, int scaling_depth, const DriverObserver& observer) {
  auto notify = [&] {
    if (observer) observer(table);
  };
  const int half = table.range_count() / 2;
  table.large_phase();
  notify();
  for (int depth = 0; depth < scaling_depth && table.live_pieces() > 0; ++depth) {
    table.double_all();
    table.large_phase();
    notify();
  }
  while (true) {
    const SmallStep step = table.small_pair_phase_step();
    if (step.kind == StepKind::idle) break;
    if (step.landed_bucket >= half) table.large_phase();
    notify();
  }
}

std::vector<Bin> assemble_bins(const BucketTable& table) {
  const Units capacity = table.capacity();
  std::vector<Bin> bins;
  bins.reserve(table.closed_count());
  std::size_t begin = 0;
  while (begin < table.closed_count()) {
    const BucketTable::ClosedBin first = table.closed_bin(begin);
    const int level = first.level;
    const std::size_t end = table.level_end(level);
    if (level == 0) {
      for (std::size_t i = begin; i < end; ++i) {
        const PieceRef head = table.closed_head(i);
        bins.push_back(Bin{table.members(head), Weight(table.units_of(head), capacity)});
      }
    } else {
      const std::size_t group = std::size_t{1} << level;
      std::size_t taken = 0;
      Bin current;
      Units load = 0;
      for (std::size_t i = end; i-- > begin;) {
        const PieceRef head = table.closed_head(i);
        table.append_members(head, current.member_ids);
        load += table.units_of(head) >> level;
        if (++taken % group == 0 || i == begin) {
          current.load = Weight(load, capacity);
          bins.push_back(std::move(current));
          current = Bin{};
          load = 0;
        }
      }
    }
    begin = end;
  }
  return bins;
}

PackingResult pack(const Instance& instance, const RangeConfig& config) {
  BucketTable table(instance, config);
  table.add_all_items();
  drive(table, config.scaling_depth);
  PackingResult result;
  result.algorithm_tag = "range";
  result.merge_count = table.counters().merges;
  result.config_echo = config.echo();
  result.counters = table.counters();
  result.counters.item_touches = static_cast<std::int64_t>(instance.size());
  result.bins = assemble_bins(table);
  return result;
}

PackingResult pack_scaled(const Instance& instance, const RangeConfig& config) {
  if (config.scaling_depth < 1) throw std::invalid_argument("pack_scaled needs scaling_depth >= 1");
  return pack(instance, config);
}

}  // namespace rangepack
