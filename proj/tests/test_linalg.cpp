#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cplx1/linalg.hpp"
#include "oracles.hpp"

using namespace cplx1;

namespace {

IntMatrix diag_matrix(const IntVec& d, std::size_t r, std::size_t c) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace

TEST_CASE("smith form of a textbook matrix") {
  IntMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  CHECK(invariant_factors(m) == IntVec{2, 6, 12});
}

TEST_CASE("smith form agrees with determinantal divisors") {
  std::mt19937 rng(7);
  for (int it = 0; it < 300; ++it) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    IntMatrix m = oracle::random_matrix(rng, r, c, -9, 9);
    SmithForm s = smith_form(m);
    CHECK(s.diag == oracle::invariant_factors(m));
    for (std::size_t i = 0; i + 1 < s.diag.size(); ++i)
      CHECK(mpz_divisible_p(s.diag[i + 1].get_mpz_t(), s.diag[i].get_mpz_t()));
    CHECK(s.U * m * s.V == diag_matrix(s.diag, r, c));
    CHECK(s.V * s.V_inv == IntMatrix::identity(c));
    CHECK(abs(oracle::det(s.U)) == 1);
  }
}

TEST_CASE("cokernel structure") {
  CHECK(cokernel_structure(IntMatrix{{2, 0}, {0, 3}}) == Cokernel{0, {6}});
  CHECK(cokernel_structure(IntMatrix{{2}, {0}}) == Cokernel{1, {2}});
  CHECK(cokernel_structure(IntMatrix{{1, 1}}) == Cokernel{0, {}});
  CHECK(cokernel_structure(IntMatrix(3, 0)).free_rank == 3);
}

TEST_CASE("rank") {
  CHECK(rank(IntMatrix{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}) == 2);
  CHECK(rank(IntMatrix(2, 2)) == 0);
}

TEST_CASE("rational solve") {
  IntMatrix m{{1, 2}, {3, 4}};
  auto x = solve_rational(m, RatVec{Rat(1), Rat(0)});
  REQUIRE(x);
  CHECK((*x)[0] == Rat(-2));
  CHECK((*x)[1] == Rat(3, 2));
  CHECK_FALSE(solve_rational(IntMatrix{{1, 1}, {2, 2}}, RatVec{Rat(1), Rat(3)}));
  auto y = solve_rational(IntMatrix{{1, 1}}, RatVec{Rat(4)});
  REQUIRE(y);
  CHECK((*y)[0] + (*y)[1] == 4);
  CHECK_THROWS(solve_rational(m, RatVec{Rat(1)}));
}

TEST_CASE("integer solve") {
  CHECK_FALSE(solve_integer(IntMatrix{{2}}, IntVec{3}));
  auto x = solve_integer(IntMatrix{{2, 4}, {0, 3}}, IntVec{6, 3});
  REQUIRE(x);
  CHECK(IntMatrix({{2, 4}, {0, 3}}) * *x == IntVec{6, 3});
  std::mt19937 rng(3);
  for (int it = 0; it < 100; ++it) {
    IntMatrix m = oracle::random_matrix(rng, 2, 4, -5, 5);
    IntVec x0{Int(int(rng() % 7) - 3), Int(int(rng() % 7) - 3), Int(1), Int(-2)};
    auto s = solve_integer(m, m * x0);
    REQUIRE(s);
    CHECK(m * *s == m * x0);
  }
}

TEST_CASE("primitivity") {
  CHECK(is_primitive(IntVec{2, 3}));
  CHECK_FALSE(is_primitive(IntVec{2, -4}));
  CHECK_THROWS_AS(is_primitive(IntVec{0, 0}), std::invalid_argument);
  CHECK(primitive(IntVec{-4, 6}) == IntVec{-2, 3});
}

TEST_CASE("hermite form is invariant under unimodular row operations") {
  std::mt19937 rng(11);
  for (int it = 0; it < 100; ++it) {
    IntMatrix m = oracle::random_matrix(rng, 3, 4, -6, 6);
    IntMatrix u = IntMatrix::identity(3);
    u.add_row(0, 1, Int(int(rng() % 5) - 2));
    u.add_row(2, 0, Int(int(rng() % 5) - 2));
    u.swap_rows(1, 2);
    CHECK(hermite_form(m) == hermite_form(u * m));
  }
}

TEST_CASE("saturation and kernel") {
  CHECK(saturation(IntMatrix{{2, 2}}) == IntMatrix{{1, 1}});
  CHECK(saturation(IntMatrix{{2, 0}, {0, 2}}) == IntMatrix{{1, 0}, {0, 1}});
  IntMatrix sat = saturation(IntMatrix{{-2, 2, 0, 0, 0}, {-2, 0, 2, 0, 0}, {-2, 0, 0, 1, 1}});
  CHECK(sat.rows() == 3);
  CHECK(invariant_factors(sat) == IntVec{1, 1, 1});
  CHECK(rank(sat) == 3);
  auto k = integer_kernel(IntMatrix{{1, 1, 1}});
  REQUIRE(k.size() == 2);
  for (const auto& v : k) CHECK(dot(v, IntVec{1, 1, 1}) == 0);
  IntMatrix km = IntMatrix::from_rows(k, 3);
  CHECK(invariant_factors(km) == IntVec{1, 1});
}

TEST_CASE("unimodular completion") {
  std::mt19937 rng(5);
  for (int it = 0; it < 100; ++it) {
    IntVec v{Int(int(rng() % 13) - 6), Int(int(rng() % 13) - 6), Int(int(rng() % 13) - 6)};
    if (is_zero(v) || !is_primitive(v)) continue;
    IntMatrix g = unimodular_completion(v);
    CHECK(g.row(2) == v);
    CHECK(abs(oracle::det(g)) == 1);
  }
}

TEST_CASE("rational printing") {
  CHECK(to_string(frac(-3, 6)) == "-1/2");
  CHECK(to_string(Rat(4)) == "4");
  CHECK(clear_denominators(RatVec{Rat(1, 2), Rat(1, 3)}) == IntVec{3, 2});
}
