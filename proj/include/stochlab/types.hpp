#pragma once

#include <cstdint>

namespace stochlab {

/// Index of a door (a natural number the host fills with a car or a goat).
using Door = std::uint64_t;
/// Time-stamp of a contestant's move.
using Time = std::uint64_t;

}  // namespace stochlab
