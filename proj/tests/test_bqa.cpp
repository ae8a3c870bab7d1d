#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "algebras.hpp"

using namespace tautri;

namespace {

void check_associative(const Algebra& a) {
  const int n = static_cast<int>(a.dim());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        Element xy = a.multiply_basis(x, y);
        Element yz = a.multiply_basis(y, z);
        CHECK(a.multiply(xy, Element::basis(z)) == a.multiply(Element::basis(x), yz));
      }
}

void check_relations_vanish(const Algebra& a) {
  for (const auto& r : a.relations()) {
    Element total;
    for (const auto& t : r.terms) {
      Path p;
      for (const auto& name : t.path) p.arrows.push_back(*a.quiver().arrow_index(name));
      p.source = a.quiver().arrow(p.arrows.front()).source;
      p.target = a.quiver().arrow(p.arrows.back()).target;
      total.add(a.normal_form(p), a.field().reduce(t.coeff), a.field());
    }
    CHECK(total.is_zero());
  }
}

void check_idempotents(const Algebra& a) {
  Element one;
  for (int v = 0; v < static_cast<int>(a.num_vertices()); ++v) one.add(a.idempotent(v), 1, a.field());
  for (int b = 0; b < static_cast<int>(a.dim()); ++b) {
    CHECK(a.multiply(one, Element::basis(b)) == Element::basis(b));
    CHECK(a.multiply(Element::basis(b), one) == Element::basis(b));
  }
  for (int i = 0; i < static_cast<int>(a.num_vertices()); ++i)
    for (int j = 0; j < static_cast<int>(a.num_vertices()); ++j) {
      Element e = a.multiply_basis(a.idempotent(i), a.idempotent(j));
      CHECK(e == (i == j ? Element::basis(a.idempotent(i)) : Element()));
    }
}

}  // namespace

TEST_CASE("small algebras") {
  CHECK(fixtures::A2()->dim() == 3);
  auto loop = Algebra::build(Quiver({"1"}, {{"x", 0, 0}}), {Relation{{{1, {"x", "x"}}}}});
  CHECK(loop->dim() == 2);
  CHECK(fixtures::k()->dim() == 1);
  auto zero = Algebra::build(Quiver({}, {}), {});
  CHECK(zero->dim() == 0);
}

TEST_CASE("R has dimension 11 with the expected length-2 class") {
  auto r = fixtures::R();
  CHECK(r->dim() == 11);
  CHECK(r->top_degree() == 2);
  std::size_t deg2 = 0;
  for (const auto& p : r->basis())
    if (p.length() == 2) {
      ++deg2;
      CHECK(r->path_string(p) == "eps*delta");
    }
  CHECK(deg2 == 1);
  Path ag{2, 1, {*r->quiver().arrow_index("alpha"), *r->quiver().arrow_index("gamma")}};
  CHECK(r->element_string(r->normal_form(ag)) == "eps*delta");
  check_associative(*r);
  check_relations_vanish(*r);
  check_idempotents(*r);
}

TEST_CASE("construction errors") {
  Quiver loop({"1"}, {{"x", 0, 0}});
  CHECK_THROWS_WITH_AS(Algebra::build(loop, {}, 20), doctest::Contains("not finite-dimensional"), AlgebraError);
  Quiver a2({"1", "2"}, {{"d", 0, 1}});
  CHECK_THROWS_WITH_AS(Algebra::build(a2, {Relation{{{1, {"d", "d"}}}}}), doctest::Contains("ill-formed"),
                       AlgebraError);
  CHECK_THROWS_WITH_AS(Algebra::build(a2, {Relation{{{1, {"d"}}}}}), doctest::Contains("ill-formed"), AlgebraError);
  auto r = fixtures::R();
  Quiver q = r->quiver();
  CHECK_THROWS_WITH_AS(Algebra::build(q, {Relation{{{1, {"alpha", "gamma"}}, {1, {"alpha", "beta"}}}}}),
                       doctest::Contains("ill-formed"), AlgebraError);
  CHECK_THROWS_AS(Quiver({"1", "1"}, {}), AlgebraError);
  CHECK_THROWS_AS(Quiver({"1"}, {{"x", 0, 3}}), AlgebraError);
}

TEST_CASE("corners of R") {
  auto r = fixtures::R();
  auto lam = corner(*r, {0, 1});
  auto gam = corner(*r, {2, 3, 4});
  CHECK(lam->dim() == 3);
  CHECK(gam->dim() == 5);
  CHECK(corner(*r, {0, 1, 2, 3, 4})->dim() == 11);
  check_associative(*gam);
  // a corner that needs a path through an outside vertex
  auto a3 = Algebra::build(Quiver({"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}}), {});
  CHECK_THROWS_WITH_AS(corner(*a3, {0, 2}), doctest::Contains("corner not a subquiver algebra"), AlgebraError);
}

TEST_CASE("opposite algebra") {
  auto r = fixtures::R();
  auto op = r->opposite();
  CHECK(op->dim() == 11);
  CHECK(op->opposite().get() == r.get());
  check_associative(*op);
  for (int x = 0; x < 11; ++x)
    for (int y = 0; y < 11; ++y)
      CHECK(r->to_opposite(r->multiply_basis(x, y), *op) ==
            op->multiply(r->to_opposite(Element::basis(y), *op), r->to_opposite(Element::basis(x), *op)));
}

TEST_CASE("triangular split of R") {
  auto r = fixtures::R();
  auto s = triangular_split(r, {0, 1}, {2, 3, 4});
  CHECK(s.dim_M() == 3);
  CHECK(r->dim() == s.Lambda->dim() + s.Gamma->dim() + s.dim_M());
  std::vector<std::string> names;
  for (int m : s.m_basis) names.push_back(r->path_string(r->basis_path(m)));
  CHECK(names == std::vector<std::string>{"eps", "gamma", "eps*delta"});
  // actions commute
  for (std::size_t g = 0; g < s.Gamma->dim(); ++g)
    for (std::size_t m = 0; m < s.dim_M(); ++m)
      for (std::size_t l = 0; l < s.Lambda->dim(); ++l) {
        Element lhs, rhs;
        for (const auto& [m2, c] : s.left_action[g][m].terms()) lhs.add(s.right_action[m2][l], c, r->field());
        for (const auto& [m2, c] : s.right_action[m][l].terms()) rhs.add(s.left_action[g][m2], c, r->field());
        CHECK(lhs == rhs);
      }
  CHECK_THROWS_WITH_AS(triangular_split(r, {2, 3, 4}, {0, 1}), doctest::Contains("not triangular"), AlgebraError);
  CHECK_THROWS_WITH_AS(triangular_split(r, {0, 1}, {2, 3}), doctest::Contains("not a partition"), AlgebraError);
  auto whole = triangular_split(r, {0, 1, 2, 3, 4}, {});
  CHECK(whole.dim_M() == 0);
  CHECK(whole.Gamma->dim() == 0);
}
