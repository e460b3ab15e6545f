#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rangepack/model.hpp"

namespace rangepack {

enum class SelectionPolicy { lifo, seeded_random };

struct RangeConfig {
  static constexpr int kMaxScalingDepth = 3;

  int range_count = 10;
  SelectionPolicy policy = SelectionPolicy::lifo;
  std::uint64_t seed = 0;
  int scaling_depth = 0;

  /// Throws std::invalid_argument unless range_count is 10 * 2^j and the
  /// scaling depth is within [0, kMaxScalingDepth].
  void validate() const;
  std::string echo() const;
};

/// Bucket of a weight strictly inside (0, 1): the k with k/R < w <= (k+1)/R.
int range_index(Units numerator, Units denominator, int range_count);
inline int range_index(const Weight& w, int range_count) {
  return range_index(w.numerator(), w.denominator(), range_count);
}

using PieceRef = std::int32_t;

struct MatchResult {
  bool merged = false;
  // The composite when merged (invalid if it closed a bin), otherwise the
  // unmatched input piece.
  PieceRef piece = -1;
};

enum class StepKind { merged, closed, idle };

struct SmallStep {
  StepKind kind = StepKind::idle;
  int landed_bucket = -1;  // -1 when the composite closed a bin
};

// Working state of one range-packing run: R buckets of live pieces plus the
// closed bins. Pieces are kept as intrusive linked lists over item ids, so a
// merge is O(1) and the whole run stays linear in the item count.
class BucketTable {
 public:
  // A closed bin is recorded by the head of its member list; members are
  // materialized on demand.
  struct ClosedBin {
    PieceRef head = -1;
    Units units = 0;  // load measured at `level`, i.e. real load * 2^level
    int level = 0;
  };

  BucketTable(const Instance& instance, const RangeConfig& config);

  /// Turns an original item into a live piece; a full-capacity item closes at once.
  void add_item(ItemId id);
  void add_all_items();

  int range_count() const { return range_count_; }
  Units capacity() const { return capacity_; }
  int level() const { return level_; }

  std::size_t bucket_size(int k) const { return buckets_[static_cast<std::size_t>(k)].size(); }
  std::vector<Piece> bucket(int k) const;
  Piece piece(PieceRef ref) const;
  std::size_t live_pieces() const { return live_; }

  /// Removes one piece from a non-empty bucket according to the selection policy.
  PieceRef take(int k);

  MatchResult f1_exact_complement(PieceRef a);
  MatchResult f2_chain(PieceRef a);
  void close(PieceRef a);
  void large_phase();
  SmallStep small_pair_phase_step();

  /// Scaling step: doubles every live piece. Requires all live pieces <= 1/2.
  void double_all();

  std::size_t closed_count() const { return closed_heads_.size(); }
  PieceRef closed_head(std::size_t index) const { return closed_heads_[index]; }
  Units units_of(PieceRef ref) const { return units_[static_cast<std::size_t>(ref)]; }
  // One past the last closed index recorded at `level`.
  std::size_t level_end(int level) const {
    const auto next = static_cast<std::size_t>(level) + 1;
    return next < level_begin_.size() ? level_begin_[next] : closed_heads_.size();
  }
  ClosedBin closed_bin(std::size_t index) const;
  std::vector<ClosedBin> closed() const;
  void append_members(PieceRef ref, std::vector<ItemId>& out) const;
  std::vector<ItemId> members(PieceRef ref) const;
  std::vector<ItemId> closed_members(std::size_t index) const { return members(closed_heads_[index]); }
  const PackCounters& counters() const { return counters_; }

  /// Bucket membership, piece sums and the partition of processed items.
  Verdict check_invariants() const;

 private:
  struct Taken {
    PieceRef ref;
    std::size_t slot;
  };

  Taken take_slot(int k);
  void restore(int k, Taken taken);
  PieceRef merge(PieceRef a, PieceRef b);
  int route(PieceRef c);
  int bucket_of(Units units) const;  // range_index without the division
  std::vector<ItemId>& bucket_ref(int k) { return buckets_[static_cast<std::size_t>(k)]; }

  const Instance* instance_;
  int range_count_;
  Units capacity_;
  double inverse_capacity_;
  SelectionPolicy policy_;
  std::mt19937_64 rng_;
  int level_ = 0;

  // A piece is a linked list over item ids whose head is its PieceRef.
  std::vector<Units> units_;    // by PieceRef
  std::vector<ItemId> tail_;    // by PieceRef
  std::vector<ItemId> next_;    // by item id
  mutable std::vector<ItemId> scratch_;
  std::vector<std::vector<PieceRef>> buckets_;
  std::vector<PieceRef> closed_heads_;       // a closed piece keeps its units_ entry
  std::vector<std::size_t> level_begin_{0};  // first closed index of each level
  std::size_t live_ = 0;
  PackCounters counters_;
};

using DriverObserver = std::function<void(const BucketTable&)>;

/// Runs the packing loop on a populated table: the large phase, up to
/// `scaling_depth` doubling levels, then alternating small pairing with the
/// large phase until no piece is left. The observer sees every iteration.
void drive(BucketTable& table, int scaling_depth, const DriverObserver& observer = {});

/// Turns closed virtual bins into real bins: level-i bins are taken newest
/// first and grouped 2^i at a time.
std::vector<Bin> assemble_bins(const BucketTable& table);

PackingResult pack(const Instance& instance, const RangeConfig& config = {});
/// As pack, with the scaling enhancement; requires scaling_depth >= 1.
PackingResult pack_scaled(const Instance& instance, const RangeConfig& config);

}  // namespace rangepack
