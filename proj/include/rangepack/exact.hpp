#pragma once

#include <stdexcept>

#include "rangepack/model.hpp"

namespace rangepack {

inline constexpr std::size_t kDefaultOracleLimit = 16;

class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Minimum number of bins, by exhaustive subset dynamic programming.
/// Throws OracleLimitError when the instance has more than `limit` items.
int optimal_bins(const Instance& instance, std::size_t limit = kDefaultOracleLimit);

/// ceil(total weight); never exceeds the optimum.
int lower_bound_l1(const Instance& instance);

}  // namespace rangepack
