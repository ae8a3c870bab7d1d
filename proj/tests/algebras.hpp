#pragma once

#include "tautri/bqa.hpp"

namespace fixtures {

using tautri::AlgebraPtr;
using tautri::Arrow;
using tautri::Quiver;
using tautri::Relation;

// 1 <-eps- 3 -alpha-> 4 -beta-> 5, 1 -delta-> 2, 4 -gamma-> 2
inline AlgebraPtr R(std::uint32_t p = 1009) {
  Quiver q({"1", "2", "3", "4", "5"}, {{"delta", 0, 1}, {"eps", 2, 0}, {"alpha", 2, 3}, {"gamma", 3, 1}, {"beta", 3, 4}});
  std::vector<Relation> rels = {
      Relation{{{1, {"alpha", "gamma"}}, {-1, {"eps", "delta"}}}},
      Relation{{{1, {"alpha", "beta"}}}},
  };
  return tautri::Algebra::build(q, rels, 20, p, "R");
}

inline AlgebraPtr A2(std::uint32_t p = 1009) {
  return tautri::Algebra::build(Quiver({"1", "2"}, {{"delta", 0, 1}}), {}, 20, p, "A2");
}

inline AlgebraPtr A3_ab0(std::uint32_t p = 1009) {
  Quiver q({"3", "4", "5"}, {{"alpha", 0, 1}, {"beta", 1, 2}});
  return tautri::Algebra::build(q, {Relation{{{1, {"alpha", "beta"}}}}}, 20, p, "Gamma");
}

inline AlgebraPtr k(std::uint32_t p = 1009) { return tautri::Algebra::build(Quiver({"1"}, {}), {}, 20, p, "k"); }

// Lambda = Gamma = M = A2: the doubled square with one commutativity relation.
inline AlgebraPtr A2_doubled(std::uint32_t p = 1009) {
  Quiver q({"1", "2", "3", "4"}, {{"delta", 0, 1}, {"delta2", 2, 3}, {"c1", 2, 0}, {"c2", 3, 1}});
  std::vector<Relation> rels = {Relation{{{1, {"delta2", "c2"}}, {-1, {"c1", "delta"}}}}};
  return tautri::Algebra::build(q, rels, 20, p, "A2x2");
}

}  // namespace fixtures
