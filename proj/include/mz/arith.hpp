#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mz/common.hpp"

// Divisor-function table d(n) for the explicit-formula sums.

namespace mz {

struct DivisorTable {
  std::uint64_t limit = 0;               // N_max
  std::vector<std::uint32_t> d;          // d[n] for n in 1..N_max (d[0] unused)

  std::uint32_t operator()(std::uint64_t n) const {
    if (n < 1 || n > limit)
      throw CapacityError("DivisorTable: index outside table");
    return d[static_cast<std::size_t>(n)];
  }
};

/// Exact d(n) for n <= n_max by incrementing counts over multiples.
/// Throws CapacityError when n_max exceeds the memory budget (default 1e8).
DivisorTable divisor_sieve(std::uint64_t n_max,
                           std::uint64_t budget = 100000000ull);

// Binary cache: little-endian u32 magic 0x4D5A4431 ("MZD1"), u64 n_max, then
// n_max u32 values d(1..n_max).
void save_divisor_cache(const DivisorTable& table, const std::string& path);
bool load_divisor_cache(const std::string& path, DivisorTable* table);

/// Cached sieve: loads `path` if it covers n_max, otherwise sieves and
/// rewrites the cache.  Empty path = no caching.
DivisorTable divisor_table_cached(std::uint64_t n_max, const std::string& path);

}  // namespace mz
