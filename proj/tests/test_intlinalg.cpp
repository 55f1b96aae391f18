#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "theta2/errors.hpp"
#include "theta2/intlinalg.hpp"
#include "theta2/rng.hpp"

using namespace theta2;

TEST_CASE("hermite form is canonical for the row lattice") {
  IntMat a = IntMat::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
  IntMat b = IntMat::from_rows({{-6, 6, 12}, {10, 4, 16}, {2, 4, 4}});
  CHECK(hnf_rows(a) == hnf_rows(b));

  // unimodular row operations do not change the form
  IntMat c = IntMat::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
  for (int j = 0; j < 3; ++j) c(0, j) += 5 * c(1, j) - 2 * c(2, j);
  CHECK(hnf_rows(c) == hnf_rows(a));
}

TEST_CASE("rank") {
  CHECK(rank(IntMat::from_rows({{1, 2}, {2, 4}})) == 1);
  CHECK(rank(IntMat::from_rows({{1, 0, 0, 0}, {0, 1, 1, 0}})) == 2);
  CHECK(rank(IntMat(3, 3)) == 0);
}

TEST_CASE("kernel rows annihilate the matrix and are saturated") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = 1 + int(rng.below(3)), cols = 2 + int(rng.below(4));
    IntMat a(rows, cols);
    for (auto& v : a.a) v = rng.below(9) - 4;
    IntMat k = kernel_rows(a);
    CHECK(k.rows + rank(a) == cols);
    IntMat product = mul(a, k.transposed());
    for (long long v : product.a) CHECK(v == 0);
    if (k.rows > 0) {
      auto divisors = elementary_divisors(k);
      for (long long d : divisors) CHECK(d == 1);
    }
  }
}

TEST_CASE("saturation") {
  // index-2 sublattice of a plane in Z^3
  IntMat a = IntMat::from_rows({{2, 0, 0}, {0, 2, 2}});
  IntMat sat = saturate_rows(a);
  CHECK(sat == hnf_rows(IntMat::from_rows({{1, 0, 0}, {0, 1, 1}})));
  // already saturated input is unchanged up to canonical form
  IntMat b = IntMat::from_rows({{1, 0, 0}, {0, 1, 1}});
  CHECK(saturate_rows(b) == hnf_rows(b));
}

TEST_CASE("elementary divisors") {
  CHECK(elementary_divisors(IntMat::from_rows({{1, 0}, {0, 1}})) ==
        std::vector<long long>{1, 1});
  CHECK(elementary_divisors(IntMat::from_rows({{2, 0}, {0, 6}})) ==
        std::vector<long long>{2, 6});
  // gcd 2, |det| 4 forces divisors (2, 2)
  CHECK(elementary_divisors(IntMat::from_rows({{2, 4}, {4, 10}})) ==
        std::vector<long long>{2, 2});
}

TEST_CASE("determinant") {
  CHECK(det(IntMat::from_rows({{1, 2}, {3, 4}})) == -2);
  CHECK(det(IntMat::from_rows({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})) == -1);
  CHECK(det(IntMat::from_rows({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}})) == 30);
  CHECK(det(IntMat::from_rows({{1, 1}, {2, 2}})) == 0);
  CHECK_THROWS_AS((void)det(IntMat(2, 3)), Error);
}
