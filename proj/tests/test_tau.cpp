#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "algebras.hpp"
#include "modules.hpp"
#include "tautri/tau.hpp"

using namespace tautri;

TEST_CASE("Nakayama functor") {
  auto lam = fixtures::A2();
  ProjMap id1{lam, {0}, {0}, {{Element::basis(lam->idempotent(0))}}};
  auto nu = nakayama(id1);
  CHECK(nu.source.dims() == std::vector<std::size_t>{1, 0});
  CHECK(nu.is_iso());
  CHECK(nu.is_valid());
  ProjMap id2{lam, {1}, {1}, {{Element::basis(lam->idempotent(1))}}};
  CHECK(nakayama(id2).maps == identity_morphism(injective(lam, 1)).maps);
  ProjMap empty{lam, {}, {}, {}};
  CHECK(nakayama(empty).source.is_zero());
  for (auto a : {fixtures::A3_ab0(), fixtures::R()})
    for (const auto& x : fixtures::psi_modules(a)) CHECK(nakayama(min_proj_presentation(x).p).is_valid());
}

TEST_CASE("tau examples") {
  auto lam = fixtures::A2();
  auto gam = fixtures::A3_ab0();
  for (auto a : {lam, gam})
    for (int v = 0; v < static_cast<int>(a->num_vertices()); ++v) CHECK(tau(projective(a, v)).is_zero());
  CHECK(is_isomorphic(tau(simple(lam, 0)), projective(lam, 1)));
  CHECK(is_isomorphic(tau(simple(gam, 0)), simple(gam, 1)));
  CHECK(is_isomorphic(tau(direct_sum({projective(lam, 0), simple(lam, 0)})), projective(lam, 1)));
}

TEST_CASE("tau is additive") {
  for (auto a : {fixtures::A2(), fixtures::A3_ab0()}) {
    auto ind = fixtures::psi_modules(a);
    for (const auto& x : ind)
      for (const auto& y : ind)
        CHECK(is_isomorphic(tau(direct_sum({x, y})), direct_sum({tau(x), tau(y)})));
  }
}

TEST_CASE("tau-rigidity and support tau-tilting pairs") {
  auto lam = fixtures::A2();
  auto p1 = projective(lam, 0), p2 = projective(lam, 1), s1 = simple(lam, 0);
  CHECK(is_tau_rigid(direct_sum({p1, p2})));
  CHECK(is_tau_rigid(direct_sum({p1, s1})));
  CHECK_FALSE(is_tau_rigid(direct_sum({p2, s1})));

  CHECK(max_annihilating_idempotent(regular_module(lam)).empty());
  CHECK(max_annihilating_idempotent(Representation::zero(lam)) == std::vector<int>{0, 1});
  CHECK(max_annihilating_idempotent(s1) == std::vector<int>{1});

  auto reg = is_support_tau_tilting(regular_module(lam));
  REQUIRE(reg);
  CHECK(reg->support.empty());
  auto ps = is_support_tau_tilting(direct_sum({p1, s1}));
  REQUIRE(ps);
  CHECK(ps->support.empty());
  auto s = is_support_tau_tilting(s1);
  REQUIRE(s);
  CHECK(s->support == std::vector<int>{1});
  CHECK_FALSE(is_support_tau_tilting(p1));
  auto zero = is_support_tau_tilting(Representation::zero(lam));
  REQUIRE(zero);
  CHECK(zero->support.size() == 2);
}

TEST_CASE("D_sigma membership") {
  auto lam = fixtures::A2();
  auto p2 = projective(lam, 1), s1 = simple(lam, 0);
  ProjMap to_p0{lam, {}, {0}, {{}}};
  CHECK(d_sigma_contains(to_p0, p2));
  auto sig = min_proj_presentation(s1).p;
  CHECK_FALSE(d_sigma_contains(sig, p2));
  CHECK(d_sigma_contains(sig, s1));
}

TEST_CASE("D_sigma agrees with Hom(-, tau X) = 0 and with tau-rigidity") {
  for (auto a : {fixtures::A2(), fixtures::A3_ab0(), fixtures::R()}) {
    auto ind = fixtures::psi_modules(a);
    for (const auto& x : ind) {
      auto sig = min_proj_presentation(x).p;
      auto tx = tau(x);
      for (const auto& y : ind) CHECK(d_sigma_contains(sig, y) == (hom_dim(y, tx) == 0));
      CHECK(d_sigma_contains(sig, x) == is_tau_rigid(x));
    }
  }
}

TEST_CASE("tilting") {
  auto lam = fixtures::A2();
  CHECK(is_tilting(regular_module(lam)));
  CHECK(is_tilting(direct_sum({projective(lam, 0), simple(lam, 0)})));
  CHECK_FALSE(is_tilting(simple(lam, 0)));
}
