#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tautri/exactla.hpp"

using namespace tautri::la;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, std::uint32_t p, int density = 100) {
  Matrix m(r, c, p);
  std::uniform_int_distribution<std::uint32_t> val(0, p - 1);
  std::uniform_int_distribution<int> pct(0, 99);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (pct(rng) < density) m.set_raw(i, j, val(rng));
  return m;
}

// Leibniz expansion, fine for n <= 6.
std::uint32_t brute_det(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  const Field& k = a.field();
  std::uint32_t total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    std::uint32_t t = 1;
    for (std::size_t i = 0; i < n; ++i) t = k.mul(t, a(i, perm[i]));
    total = inversions % 2 ? k.sub(total, t) : k.add(total, t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("factor: identity, zero, rank-one") {
  auto f = factor(Matrix::identity(2, 1009));
  CHECK(f.rank == 2);
  CHECK(f.kernel_basis.cols() == 0);

  auto z = factor(Matrix::zero(3, 2, 1009));
  CHECK(z.rank == 0);
  CHECK(z.kernel_basis.cols() == 2);

  auto o = factor(Matrix{{1, 1}, {1, 1}});
  CHECK(o.rank == 1);
  REQUIRE(o.kernel_basis.cols() == 1);
  CHECK(o.kernel_basis(0, 0) == 1);
  CHECK(o.kernel_basis(1, 0) == 1008);
}

TEST_CASE("factor on empty shapes") {
  auto f = factor(Matrix(0, 3, 7));
  CHECK(f.rank == 0);
  CHECK(f.kernel_basis.cols() == 3);
  auto g = factor(Matrix(4, 0, 7));
  CHECK(g.rank == 0);
  CHECK(g.image_basis.cols() == 0);
}

TEST_CASE("solve examples") {
  Matrix b{{3, 4}, {5, 6}};
  auto x = solve(Matrix::identity(2, 1009), b);
  REQUIRE(x);
  CHECK(*x == b);
  CHECK_FALSE(solve(Matrix::zero(2, 2, 1009), b));
  auto y = solve(Matrix{{1}, {1}}, Matrix{{2}, {2}});
  REQUIRE(y);
  CHECK(*y == Matrix{{2}});
  CHECK_THROWS_AS(solve(Matrix::identity(2, 1009), Matrix(3, 1, 1009)), std::invalid_argument);
}

TEST_CASE("random properties: rank of transpose, kernel, solve, determinism") {
  std::mt19937 rng(12345);
  for (std::uint32_t p : {2u, 3u, 1009u}) {
    for (int trial = 0; trial < 60; ++trial) {
      std::uniform_int_distribution<std::size_t> sz(0, 9);
      const std::size_t r = sz(rng), c = sz(rng);
      Matrix a = random_matrix(rng, r, c, p, trial % 3 == 0 ? 30 : 100);
      auto f = factor(a);
      CHECK(f.rank == rank(a.transpose()));
      CHECK(f.rank + f.kernel_basis.cols() == c);
      CHECK(f.image_basis.cols() == f.rank);
      CHECK(rank(f.image_basis) == f.rank);
      CHECK((a * f.kernel_basis).is_zero());
      Matrix x = random_matrix(rng, c, 2, p);
      Matrix b = a * x;
      auto s = solve(a, b);
      REQUIRE(s);
      CHECK(a * *s == b);
      auto g = factor_serial(a);
      CHECK(g.rref == f.rref);
      CHECK(g.kernel_basis == f.kernel_basis);
      CHECK(g.pivots == f.pivots);
    }
  }
}

TEST_CASE("parallel and serial factor agree on large inputs") {
  std::mt19937 rng(7);
  Matrix a = random_matrix(rng, 180, 160, 1009, 40);
  Matrix low = random_matrix(rng, 160, 60, 1009);
  Matrix b = a * low;
  auto f = factor(b);
  auto g = factor_serial(b);
  CHECK(f.rank == 60);
  CHECK(f.rref == g.rref);
  CHECK(f.kernel_basis == g.kernel_basis);
}

TEST_CASE("inverse and complement") {
  Matrix a{{2, 1}, {1, 1}};
  auto inv = inverse(a);
  REQUIRE(inv);
  CHECK(a * *inv == Matrix::identity(2, 1009));
  CHECK_FALSE(inverse(Matrix{{1, 1}, {1, 1}}));
  Matrix col{{1}, {1}, {0}};
  Matrix comp = complement(col);
  CHECK(comp.cols() == 2);
  CHECK(rank(hstack(col, comp)) == 3);
}

TEST_CASE("charpoly matches brute-force determinant") {
  std::mt19937 rng(99);
  for (std::uint32_t p : {2u, 5u, 1009u}) {
    Field k(p);
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t n = 1 + trial % 5;
      Matrix a = random_matrix(rng, n, n, p);
      Poly chi = charpoly(a);
      REQUIRE(chi.size() == n + 1);
      CHECK(chi.back() == 1);
      for (std::uint32_t x : {0u, 1u, 2u % p, (p - 1)}) {
        Matrix m = scale(Matrix::identity(n, p), x) - a;
        CHECK(evaluate(chi, x, k) == brute_det(m));
      }
    }
  }
}

TEST_CASE("roots with multiplicity") {
  Field k(1009);
  // (x-2)^2 (x-5) = x^3 - 9x^2 + 24x - 20
  Poly f{k.reduce(-20), 24, k.reduce(-9), 1};
  auto r = roots(f, k);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == std::make_pair(2u, std::size_t{2}));
  CHECK(r[1] == std::make_pair(5u, std::size_t{1}));
}
