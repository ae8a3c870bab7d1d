#pragma once

// Finite-dimensional right modules over a bound quiver algebra, given as
// representations: a space per vertex and a matrix per arrow. For an arrow
// a: i -> j the matrix maps the vertex-i space to the vertex-j space, so a
// path a1 a2 ... ak acts by A_ak * ... * A_a1.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tautri/bqa.hpp"
#include "tautri/exactla.hpp"

namespace tautri {

class ModuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Representation {
 public:
  Representation() = default;
  /// Validates matrix shapes and that every relation acts as zero.
  Representation(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<la::Matrix> arrow_maps);
  static Representation zero(AlgebraPtr alg);

  const AlgebraPtr& algebra_ptr() const { return alg_; }
  const Algebra& algebra() const { return *alg_; }
  std::uint32_t prime() const { return alg_->prime(); }

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(int v) const { return dims_.at(static_cast<std::size_t>(v)); }
  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  const la::Matrix& arrow_map(int a) const { return maps_.at(static_cast<std::size_t>(a)); }
  const std::vector<la::Matrix>& arrow_maps() const { return maps_; }

  /// Action of a basis path: dims[target] x dims[source].
  la::Matrix path_action(int b) const;
  /// Action of an element all of whose terms run from vertex i to vertex j.
  la::Matrix element_action(const Element& e, int i, int j) const;

  bool operator==(const Representation& o) const {
    return alg_.get() == o.alg_.get() && dims_ == o.dims_ && maps_ == o.maps_;
  }

 private:
  AlgebraPtr alg_;
  std::vector<std::size_t> dims_;
  std::vector<la::Matrix> maps_;
};

struct Morphism {
  Representation source;
  Representation target;
  std::vector<la::Matrix> maps;  // per vertex, target.dim(v) x source.dim(v)

  bool is_valid() const;
  bool is_zero() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_iso() const;
};

void require_same_algebra(const Representation& x, const Representation& y);

Morphism identity_morphism(const Representation& x);
Morphism zero_morphism(const Representation& x, const Representation& y);
/// g after f.
Morphism compose(const Morphism& g, const Morphism& f);
Morphism add(const Morphism& f, const Morphism& g);
Morphism scale(const Morphism& f, std::uint32_t c);

/// Basis of Hom(X, Y), the kernel of the intertwining system.
std::vector<Morphism> hom_space(const Representation& x, const Representation& y);
std::size_t hom_dim(const Representation& x, const Representation& y);

struct SubModule {
  Representation module;
  Morphism inclusion;
};
struct QuotientModule {
  Representation module;
  Morphism projection;
};

/// Submodule spanned (vertexwise) by the given columns; the columns must
/// already span a submodule.
SubModule submodule(const Representation& x, const std::vector<la::Matrix>& spans);
/// Quotient by a submodule given by vertexwise spanning columns.
QuotientModule quotient(const Representation& x, const std::vector<la::Matrix>& spans);

SubModule kernel(const Morphism& f);
QuotientModule cokernel(const Morphism& f);
SubModule image(const Morphism& f);

Representation direct_sum(const std::vector<Representation>& parts);
Representation direct_sum(AlgebraPtr alg, const std::vector<Representation>& parts);
/// Block morphism from a sum of sources to a sum of targets: blocks[t][s].
Morphism block_morphism(const std::vector<Representation>& sources, const std::vector<Representation>& targets,
                        const std::vector<std::vector<Morphism>>& blocks);

Representation projective(const AlgebraPtr& alg, int v);
Representation simple(const AlgebraPtr& alg, int v);
Representation injective(const AlgebraPtr& alg, int v);
Representation regular_module(const AlgebraPtr& alg);

/// The morphism P_v -> X sending e_v to x (a column of X's vertex-v space).
Morphism from_projective(const Representation& x, int v, const la::Matrix& column);

struct RadicalTop {
  SubModule rad;
  QuotientModule top;
};
RadicalTop radical_top(const Representation& x);
/// Vertexwise top multiplicities: dim of top X at each vertex.
std::vector<std::size_t> top_dims(const Representation& x);

/// A map between direct sums of indecomposable projectives,
/// (+)_r P_{source[r]} -> (+)_s P_{target[s]}, given by left multiplication
/// with entries[s][r] in e_{target[s]} A e_{source[r]}.
struct ProjMap {
  AlgebraPtr alg;
  std::vector<int> source;
  std::vector<int> target;
  std::vector<std::vector<Element>> entries;
};

Representation projective_sum(const AlgebraPtr& alg, const std::vector<int>& vertices);
/// Column of the generator e_u of the r-th summand inside the vertex-u space
/// of projective_sum(vertices), u = vertices[r].
std::size_t generator_column(const Algebra& alg, const std::vector<int>& vertices, std::size_t r);
Morphism to_morphism(const ProjMap& p);

struct Presentation {
  ProjMap p;         // P1 -> P0
  Representation P1;
  Representation P0;
  Morphism cover;    // P0 -> X
};
/// Minimal projective presentation P1 -> P0 -> X -> 0.
Presentation min_proj_presentation(const Representation& x);
/// Projective cover only.
std::pair<std::vector<int>, Morphism> projective_cover(const Representation& x);

bool gen_membership(const Representation& n, const Representation& x);
bool is_projective(const Representation& x);
bool proj_dim_le_one(const Representation& x);

struct Summand {
  Representation module;
  Morphism inclusion;
};
/// Krull-Schmidt decomposition with an inclusion for every piece; the sum of
/// the inclusions is an isomorphism. Pieces come in canonical order.
std::vector<Summand> decompose_full(const Representation& x);
/// Pairwise non-isomorphic indecomposable summands with multiplicities.
std::vector<std::pair<Representation, std::size_t>> decompose(const Representation& x);
bool is_indecomposable(const Representation& x);
/// Number of pairwise non-isomorphic indecomposable summands.
std::size_t count_summands(const Representation& x);
/// One copy of each indecomposable summand.
Representation basic_part(const Representation& x);

std::optional<Morphism> isomorphism(const Representation& x, const Representation& y);
inline bool is_isomorphic(const Representation& x, const Representation& y) { return isomorphism(x, y).has_value(); }

/// Canonical names for indecomposables: P_i, then S_i, then I_i, else the
/// dimension vector "M(d1,...)" with a "#k" suffix on collisions.
class Labeler {
 public:
  explicit Labeler(AlgebraPtr alg);

  const AlgebraPtr& algebra() const { return alg_; }
  std::string label(const Representation& indecomposable) const;
  /// Summand labels (with multiplicity) in canonical order; "0" for zero.
  std::vector<std::string> summand_labels(const Representation& x) const;
  std::string module_label(const Representation& x) const;
  /// Sort key of a registered label.
  std::pair<int, int> key(const std::string& label) const;
  std::optional<Representation> resolve(const std::string& label) const;
  /// Sorts labels into canonical order.
  void sort_labels(std::vector<std::string>& labels) const;

 private:
  struct Entry {
    std::string label;
    Representation module;
    std::pair<int, int> key;
  };
  AlgebraPtr alg_;
  mutable std::mutex mu_;
  mutable std::vector<Entry> registry_;
  mutable int next_other_ = 0;
};

}  // namespace tautri
