#pragma once

#include "rangepack/model.hpp"

namespace rangepack {

// Classical comparison heuristics. All bins stay open until the end except in
// next_fit, which keeps a single open bin.

PackingResult first_fit_decreasing(const Instance& instance);
PackingResult best_fit_decreasing(const Instance& instance);
PackingResult first_fit(const Instance& instance);
PackingResult next_fit(const Instance& instance);

}  // namespace rangepack
