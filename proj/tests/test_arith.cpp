#include <cstdint>
#include <cstdio>
#include <numeric>
#include <random>

#include "doctest.h"
#include "mz/arith.hpp"

using namespace mz;

TEST_CASE("small divisor counts") {
  DivisorTable t = divisor_sieve(36);
  const std::uint32_t first6[] = {1, 2, 2, 3, 2, 4};
  for (int n = 1; n <= 6; ++n) CHECK(t(n) == first6[n - 1]);
  CHECK(t(36) == 9);  // 36 = 2^2 3^2 -> (2+1)(2+1)
  CHECK(t(1) == 1);
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) CHECK(t(p) == 2);
}

TEST_CASE("divisor sum vs hyperbola identity") {
  // sum_{n<=N} d(n) = sum_{k<=N} floor(N/k), exactly
  DivisorTable t = divisor_sieve(1000000);
  for (std::uint64_t N : {10ull, 100ull, 10000ull, 1000000ull}) {
    std::uint64_t lhs = 0, rhs = 0;
    for (std::uint64_t n = 1; n <= N; ++n) lhs += t(n);
    for (std::uint64_t k = 1; k <= N; ++k) rhs += N / k;
    CHECK(lhs == rhs);
  }
  // brute-force double loop for N = 100
  std::uint64_t s = 0;
  for (std::uint64_t k = 1; k <= 100; ++k) s += 100 / k;
  CHECK(s == 482);
}

TEST_CASE("multiplicativity on coprime pairs") {
  DivisorTable t = divisor_sieve(1000000);
  std::mt19937 rng(12345);
  std::uniform_int_distribution<std::uint64_t> dist(2, 999);
  int checked = 0;
  while (checked < 200) {
    std::uint64_t m = dist(rng), n = dist(rng);
    if (std::gcd(m, n) != 1) continue;
    CHECK(t(m * n) == t(m) * t(n));
    ++checked;
  }
}

TEST_CASE("capacity guard") {
  CHECK_THROWS_AS(divisor_sieve(200, 100), CapacityError);
}

TEST_CASE("binary cache roundtrip") {
  DivisorTable t = divisor_sieve(5000);
  const std::string path = "test_divisors.bin";
  save_divisor_cache(t, path);
  DivisorTable u;
  REQUIRE(load_divisor_cache(path, &u));
  REQUIRE(u.limit == t.limit);
  for (std::uint64_t n = 1; n <= t.limit; ++n) CHECK(u(n) == t(n));
  // magic bytes as specified: little-endian 0x4D5A4431
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  unsigned char b[4];
  REQUIRE(std::fread(b, 1, 4, fp) == 4);
  std::fclose(fp);
  CHECK(b[0] == 0x31);
  CHECK(b[1] == 0x44);
  CHECK(b[2] == 0x5A);
  CHECK(b[3] == 0x4D);
  std::remove(path.c_str());
}

TEST_CASE("cached helper falls back to sieve") {
  const std::string path = "test_divisors2.bin";
  std::remove(path.c_str());
  DivisorTable t = divisor_table_cached(100, path);
  CHECK(t.limit >= 100);
  DivisorTable u = divisor_table_cached(50, path);  // served from cache
  CHECK(u.limit >= 100);
  std::remove(path.c_str());
}
