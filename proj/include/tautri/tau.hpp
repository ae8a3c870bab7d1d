#pragma once

// Auslander-Reiten translation and the tau-tilting predicates.

#include <optional>
#include <vector>

#include "tautri/rep.hpp"

namespace tautri {

/// A support tau-tilting pair (M, eA): `module` is basic and `support` lists
/// the vertices of e in ascending order.
struct SttPair {
  Representation module;
  std::vector<int> support;
};

/// The Nakayama functor on a map of projectives: P_u -> P_t given by left
/// multiplication with lambda becomes I_u -> I_t, phi |-> phi(- * lambda).
Morphism nakayama(const ProjMap& p);

Representation tau(const Representation& x);
bool is_tau_rigid(const Representation& x);

/// Vertices i with X e_i = 0, i.e. Hom(e_i A, X) = 0.
std::vector<int> max_annihilating_idempotent(const Representation& x);
bool is_sincere(const Representation& x);

std::optional<SttPair> is_support_tau_tilting(const Representation& x);

/// Whether Hom(sigma, A): Hom(P0, A) -> Hom(P1, A) is surjective.
bool d_sigma_contains(const ProjMap& sigma, const Representation& a);

bool is_tilting(const Representation& x);

}  // namespace tautri
