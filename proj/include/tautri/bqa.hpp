#pragma once

// Bound quiver algebras kQ/I over F_p.
//
// Composition convention: paths are written left to right in diagram order.
// The path "alpha gamma" first traverses alpha, then gamma, so it runs from
// source(alpha) to target(gamma). A right module X acts as X e_i -> X e_j
// along an arrow i -> j.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tautri/exactla.hpp"

namespace tautri {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_arrows() const { return arrows_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::string& vertex_name(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }
  const Arrow& arrow(int a) const { return arrows_.at(static_cast<std::size_t>(a)); }

  std::optional<int> vertex_index(const std::string& name) const;
  std::optional<int> arrow_index(const std::string& name) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

/// A path given by its arrow sequence; length-0 paths are vertex idempotents.
struct Path {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;

  std::size_t length() const { return arrows.size(); }
  bool operator==(const Path& o) const {
    return source == o.source && target == o.target && arrows == o.arrows;
  }
};

struct Term {
  std::int64_t coeff = 1;
  std::vector<std::string> path;  // arrow names, diagram order
};

struct Relation {
  std::vector<Term> terms;
};

/// Sparse linear combination of basis elements, sorted by basis index,
/// with no zero coefficients.
class Element {
 public:
  Element() = default;

  static Element basis(int b) {
    Element e;
    e.terms_.emplace_back(b, 1);
    return e;
  }

  const std::vector<std::pair<int, std::uint32_t>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint32_t coeff(int b) const;

  void add(int b, std::uint32_t c, const la::Field& k);
  void add(const Element& o, std::uint32_t c, const la::Field& k);
  bool operator==(const Element& o) const { return terms_ == o.terms_; }

 private:
  std::vector<std::pair<int, std::uint32_t>> terms_;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  static constexpr std::size_t kDefaultMaxPathLength = 20;

  /// Builds kQ/I degree by degree. Relations must be homogeneous, parallel
  /// and of length >= 2. Throws AlgebraError("ill-formed relation ...") or
  /// AlgebraError("not finite-dimensional within bound ...").
  static AlgebraPtr build(Quiver quiver, std::vector<Relation> relations,
                          std::size_t max_path_length = kDefaultMaxPathLength,
                          std::uint32_t prime = la::kDefaultPrime, std::string name = "");

  const std::string& name() const { return name_; }
  const Quiver& quiver() const { return quiver_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const la::Field& field() const { return field_; }
  std::uint32_t prime() const { return field_.prime(); }
  std::size_t max_path_length() const { return max_path_length_; }
  std::size_t num_vertices() const { return quiver_.num_vertices(); }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<Path>& basis() const { return basis_; }
  const Path& basis_path(int b) const { return basis_.at(static_cast<std::size_t>(b)); }
  /// Basis indices of paths from vertex i to vertex j, in global order.
  const std::vector<int>& basis_between(int i, int j) const;
  int idempotent(int v) const { return idempotent_.at(static_cast<std::size_t>(v)); }
  int arrow_basis(int a) const { return arrow_basis_.at(static_cast<std::size_t>(a)); }
  std::size_t top_degree() const { return top_degree_; }

  /// Normal form of an arbitrary path; zero when the path is in the ideal.
  Element normal_form(const Path& p) const;
  Element multiply_basis(int b1, int b2) const;
  Element multiply(const Element& x, const Element& y) const;
  /// Structure constants (basis path) * (arrow).
  const Element& times_arrow(int b, int arrow) const;

  std::string path_string(const Path& p) const;
  std::string element_string(const Element& e) const;

  /// The opposite algebra: same vertices, reversed arrows (same names),
  /// reversed relations. Memoized; opposite of the opposite is this algebra.
  AlgebraPtr opposite() const;
  /// Transports an element to the opposite algebra by reversing paths.
  Element to_opposite(const Element& e, const Algebra& op) const;

 private:
  Algebra() = default;
  void construct(const std::vector<std::vector<std::pair<std::uint32_t, std::vector<int>>>>& rels);

  std::string name_;
  Quiver quiver_;
  std::vector<Relation> relations_;
  la::Field field_{};
  std::size_t max_path_length_ = kDefaultMaxPathLength;
  std::size_t top_degree_ = 0;

  std::vector<Path> basis_;
  std::vector<int> idempotent_;
  std::vector<int> arrow_basis_;
  std::vector<std::vector<std::vector<int>>> between_;
  // Normal forms of every path of length 1..top_degree_, keyed by arrow sequence.
  std::map<std::vector<int>, Element> normal_forms_;
  std::vector<std::vector<Element>> times_arrow_;

  mutable std::once_flag opposite_once_;
  mutable AlgebraPtr opposite_;
  mutable std::weak_ptr<const Algebra> opposite_back_;
};

/// Corner algebra e A e for e the sum of the vertex idempotents in `vs`,
/// presented on the full subquiver. Throws AlgebraError("corner not a
/// subquiver algebra") when e A e needs paths leaving `vs`.
AlgebraPtr corner(const Algebra& alg, const std::vector<int>& vs);

/// A validated triangular decomposition R = (Lambda 0; M Gamma): the A
/// vertices carry Lambda, the B vertices carry Gamma, and M is spanned by
/// the basis paths from B to A.
struct TriSplit {
  AlgebraPtr R;
  std::vector<int> A;  // R vertices, ascending
  std::vector<int> B;
  AlgebraPtr Lambda;  // vertex k of Lambda is R vertex A[k]
  AlgebraPtr Gamma;   // vertex k of Gamma is R vertex B[k]
  std::vector<int> lambda_arrow_in_R;  // Lambda arrow -> R arrow
  std::vector<int> gamma_arrow_in_R;
  std::vector<int> lambda_basis_in_R;  // Lambda basis -> R basis
  std::vector<int> gamma_basis_in_R;

  std::vector<int> m_basis;  // R basis indices of the B -> A paths
  std::vector<int> m_source;  // Gamma vertex of each M basis element
  std::vector<int> m_target;  // Lambda vertex
  // left_action[g][m]: (Gamma basis g) * (M basis m), over the M basis
  std::vector<std::vector<Element>> left_action;
  // right_action[m][l]: (M basis m) * (Lambda basis l), over the M basis
  std::vector<std::vector<Element>> right_action;

  std::size_t dim_M() const { return m_basis.size(); }
  /// M basis indices of e_j M e_a (Gamma vertex j, Lambda vertex a).
  std::vector<int> m_between(int gamma_vertex, int lambda_vertex) const;
  /// Maps a Gamma (resp. Lambda) element into R.
  Element gamma_to_R(const Element& g) const;
  Element lambda_to_R(const Element& l) const;
};

/// Throws AlgebraError("not a partition ...") or ("not triangular ...").
TriSplit triangular_split(const AlgebraPtr& alg, const std::vector<int>& A, const std::vector<int>& B);

}  // namespace tautri
