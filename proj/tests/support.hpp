#pragma once

// Seeded instance generators shared by the test binaries.

#include "skeintrace/cyclotomic.hpp"
#include "skeintrace/matrix.hpp"
#include "skeintrace/rational.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace skeintrace::test_support {

#ifndef SKEINTRACE_DATA_DIR
#define SKEINTRACE_DATA_DIR "data"
#endif

inline std::string data_file(const std::string& name) { return std::string(SKEINTRACE_DATA_DIR) + "/" + name; }

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(n) - 1)); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(std::int64_t bound = 9) {
    std::int64_t d = 0;
    while (d == 0) d = integer(1, bound);
    return Rational(integer(-bound, bound), d);
  }
  // near the int64 boundary, to exercise the overflow paths
  Rational wide() {
    const std::int64_t big = std::int64_t{1} << 62;
    std::int64_t d = integer(1, big);
    return Rational(integer(-big, big), d);
  }
  Cyclotomic cyclotomic(int order, std::int64_t bound = 5) {
    std::vector<Rational> c(static_cast<std::size_t>(order));
    for (auto& x : c) x = rational(bound);
    return Cyclotomic(order, std::move(c));
  }
  Matrix<Rational> matrix(std::size_t r, std::size_t c, std::int64_t bound = 4) {
    Matrix<Rational> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(integer(-bound, bound));
    return m;
  }
  // product of random r x k and k x c factors: rank at most k
  Matrix<Rational> low_rank(std::size_t r, std::size_t c, std::size_t k) { return matrix(r, k) * matrix(k, c); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace skeintrace::test_support
