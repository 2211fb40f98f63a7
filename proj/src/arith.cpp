#include "mz/arith.hpp"

#include <cstdio>

namespace mz {

namespace {
constexpr std::uint32_t kMagic = 0x4D5A4431u;  // "MZD1"
}

DivisorTable divisor_sieve(std::uint64_t n_max, std::uint64_t budget) {
  if (n_max < 1) throw DomainError("divisor_sieve: n_max >= 1 required");
  if (n_max > budget)
    throw CapacityError("divisor_sieve: n_max exceeds memory budget");
  DivisorTable t;
  t.limit = n_max;
  t.d.assign(static_cast<std::size_t>(n_max) + 1, 0);
  for (std::uint64_t k = 1; k <= n_max; ++k)
    for (std::uint64_t m = k; m <= n_max; m += k) ++t.d[static_cast<std::size_t>(m)];
  return t;
}

void save_divisor_cache(const DivisorTable& table, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw Error("cannot write divisor cache " + path);
  auto put32 = [&](std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v),
                          static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    std::fwrite(b, 1, 4, fp);
  };
  put32(kMagic);
  std::uint64_t n = table.limit;
  unsigned char b8[8];
  for (int i = 0; i < 8; ++i) b8[i] = static_cast<unsigned char>(n >> (8 * i));
  std::fwrite(b8, 1, 8, fp);
  for (std::uint64_t i = 1; i <= table.limit; ++i)
    put32(table.d[static_cast<std::size_t>(i)]);
  std::fclose(fp);
}

bool load_divisor_cache(const std::string& path, DivisorTable* table) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) return false;
  auto get32 = [&](std::uint32_t* v) {
    unsigned char b[4];
    if (std::fread(b, 1, 4, fp) != 4) return false;
    *v = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
    return true;
  };
  std::uint32_t magic = 0;
  if (!get32(&magic) || magic != kMagic) {
    std::fclose(fp);
    return false;
  }
  unsigned char b8[8];
  if (std::fread(b8, 1, 8, fp) != 8) {
    std::fclose(fp);
    return false;
  }
  std::uint64_t n = 0;
  for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(b8[i]) << (8 * i);
  DivisorTable t;
  t.limit = n;
  t.d.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint64_t i = 1; i <= n; ++i) {
    std::uint32_t v = 0;
    if (!get32(&v)) {
      std::fclose(fp);
      return false;
    }
    t.d[static_cast<std::size_t>(i)] = v;
  }
  std::fclose(fp);
  *table = std::move(t);
  return true;
}

DivisorTable divisor_table_cached(std::uint64_t n_max, const std::string& path) {
  if (!path.empty()) {
    DivisorTable t;
    if (load_divisor_cache(path, &t) && t.limit >= n_max) return t;
  }
  DivisorTable t = divisor_sieve(n_max);
  if (!path.empty()) save_divisor_cache(t, path);
  return t;
}

}  // namespace mz
