#pragma once

// Support tau-tilting pairs: mutation, enumeration of the poset ordered by
// Gen-inclusion, Hasse quiver, and brute-force oracles.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tautri/rep.hpp"
#include "tautri/tau.hpp"

namespace tautri {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SearchTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultNodeBudget = 10000;

/// One exchangeable slot of a pair: an indecomposable summand of the module,
/// or a vertex of the support projective.
struct Slot {
  std::optional<Representation> summand;
  int vertex = -1;

  static Slot module(Representation m) { return Slot{std::move(m), -1}; }
  static Slot support(int v) { return Slot{std::nullopt, v}; }
};

/// The indecomposable summands of pair.module, one per isomorphism class.
std::vector<Representation> summands(const SttPair& pair);

/// Minimal left add(U)-approximation of x, U given by its indecomposable
/// summands.
Morphism left_approximation(const Representation& x, const std::vector<Representation>& u);

/// Mutation at a slot; goes down (left mutation) when the slot is a summand
/// outside Gen of the others, up otherwise.
SttPair mutate(const SttPair& pair, const Slot& slot);
/// Left mutation only; throws when the summand lies in Gen of the others.
SttPair left_mutate(const SttPair& pair, const Representation& summand);
/// The order-reversing bijection with pairs over the opposite algebra,
/// (M, P) |-> (Tr M_np (+) P*, M_pr*).
SttPair dagger(const SttPair& pair);
Representation transpose(const Representation& x);

/// p <= q iff Gen(p.module) is contained in Gen(q.module).
bool gen_leq(const SttPair& p, const SttPair& q);

std::string support_label(const Labeler& lab, const std::vector<int>& support);
/// "(module|support)" with canonical summand order.
std::string pair_label(const Labeler& lab, const SttPair& pair);

struct SttNode {
  SttPair pair;
  std::string label;
  std::vector<std::string> summand_labels;
};

struct MutationEdge {
  std::size_t from;
  std::size_t to;
  std::string exchanged;  // label of the summand mutated at
};

struct SttPoset {
  AlgebraPtr alg;
  std::vector<SttNode> nodes;                          // sorted by label
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // Hasse covers, bigger -> smaller
  std::vector<MutationEdge> mutation_edges;            // left mutations, sorted

  std::optional<std::size_t> find(const std::string& label) const;
};

/// Breadth-first closure under left mutation from (A, 0).
SttPoset enumerate_stt(const AlgebraPtr& alg, const Labeler& lab, std::size_t node_budget = kDefaultNodeBudget);
/// Cover relations of gen_leq among the given nodes, bigger -> smaller.
std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const std::vector<SttNode>& nodes);

/// Budget from the TAUTRI_NODE_BUDGET environment variable, else the default.
std::size_t node_budget_from_env();

inline constexpr std::size_t kDefaultSearchLimit = std::size_t{1} << 24;

/// All indecomposables with dimension vector bounded by `cap`, found by
/// exhaustive search over arrow matrices with entries in {0, 1}.
std::vector<Representation> oracle_indecomposables(const AlgebraPtr& alg, const std::vector<std::size_t>& cap,
                                                   std::size_t search_limit = kDefaultSearchLimit);
/// Single-threaded reference for oracle_indecomposables.
std::vector<Representation> oracle_indecomposables_serial(const AlgebraPtr& alg, const std::vector<std::size_t>& cap,
                                                          std::size_t search_limit = kDefaultSearchLimit);
/// Support tau-tilting pairs assembled from the oracle's indecomposables by
/// definition: pairwise tau-compatibility and the count condition.
std::vector<SttPair> oracle_stt(const AlgebraPtr& alg, const std::vector<std::size_t>& cap,
                                std::size_t search_limit = kDefaultSearchLimit);

}  // namespace tautri
