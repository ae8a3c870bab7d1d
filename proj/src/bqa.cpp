#include "tautri/bqa.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tautri {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  std::set<std::string> seen;
  for (const auto& v : vertices_)
    if (!seen.insert(v).second) throw AlgebraError("duplicate vertex id '" + v + "'");
  seen.clear();
  const int n = static_cast<int>(vertices_.size());
  for (const auto& a : arrows_) {
    if (!seen.insert(a.name).second) throw AlgebraError("duplicate arrow name '" + a.name + "'");
    if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n)
      throw AlgebraError("arrow '" + a.name + "' has an endpoint outside the vertex set");
  }
}

std::optional<int> Quiver::vertex_index(const std::string& name) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<int>(it - vertices_.begin());
}

std::optional<int> Quiver::arrow_index(const std::string& name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

std::uint32_t Element::coeff(int b) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::make_pair(b, 0u),
                             [](const auto& x, const auto& y) { return x.first < y.first; });
  return (it != terms_.end() && it->first == b) ? it->second : 0;
}

void Element::add(int b, std::uint32_t c, const la::Field& k) {
  if (c == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::make_pair(b, 0u),
                             [](const auto& x, const auto& y) { return x.first < y.first; });
  if (it != terms_.end() && it->first == b) {
    it->second = k.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {b, c});
  }
}

void Element::add(const Element& o, std::uint32_t c, const la::Field& k) {
  for (const auto& [b, v] : o.terms_) add(b, k.mul(v, c), k);
}

namespace {

using IndexedTerm = std::pair<std::uint32_t, std::vector<int>>;
using IndexedRelation = std::vector<IndexedTerm>;

struct PathRef {
  int source;
  int target;
  std::vector<int> arrows;
};

// All paths of each length 0..maxlen (length 0 entries are the vertices).
class PathEnumerator {
 public:
  explicit PathEnumerator(const Quiver& q) : q_(q) {
    std::vector<PathRef> zero;
    for (int v = 0; v < static_cast<int>(q.num_vertices()); ++v) zero.push_back({v, v, {}});
    by_length_.push_back(std::move(zero));
  }

  const std::vector<PathRef>& of_length(std::size_t d, std::size_t limit = 2'000'000) {
    while (by_length_.size() <= d) {
      const auto& prev = by_length_.back();
      std::vector<PathRef> next;
      for (const auto& p : prev) {
        for (int a = 0; a < static_cast<int>(q_.num_arrows()); ++a) {
          if (q_.arrow(a).source != p.target) continue;
          PathRef np{p.source, q_.arrow(a).target, p.arrows};
          np.arrows.push_back(a);
          next.push_back(std::move(np));
          if (next.size() > limit) throw AlgebraError("path enumeration exceeded " + std::to_string(limit) + " paths");
        }
      }
      std::sort(next.begin(), next.end(), [](const PathRef& x, const PathRef& y) { return x.arrows < y.arrows; });
      by_length_.push_back(std::move(next));
    }
    return by_length_[d];
  }

 private:
  const Quiver& q_;
  std::vector<std::vector<PathRef>> by_length_;
};

IndexedRelation index_relation(const Quiver& q, const Relation& rel, const la::Field& k) {
  std::map<std::vector<int>, std::uint32_t> merged;
  for (const auto& t : rel.terms) {
    std::vector<int> arrows;
    for (const auto& name : t.path) {
      auto a = q.arrow_index(name);
      if (!a) throw AlgebraError("ill-formed relation: unknown arrow '" + name + "'");
      arrows.push_back(*a);
    }
    if (arrows.size() < 2) throw AlgebraError("ill-formed relation: path of length < 2 (not admissible)");
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
      if (q.arrow(arrows[i]).target != q.arrow(arrows[i + 1]).source)
        throw AlgebraError("ill-formed relation: arrows '" + q.arrow(arrows[i]).name + "' and '" +
                           q.arrow(arrows[i + 1]).name + "' do not compose");
    auto& c = merged[arrows];
    c = k.add(c, k.reduce(t.coeff));
  }
  IndexedRelation out;
  for (auto& [path, c] : merged)
    if (c != 0) out.emplace_back(c, path);
  if (out.empty()) return out;
  const auto& f = out.front().second;
  const int s = q.arrow(f.front()).source, t = q.arrow(f.back()).target;
  for (const auto& [c, p] : out) {
    if (q.arrow(p.front()).source != s || q.arrow(p.back()).target != t)
      throw AlgebraError("ill-formed relation: terms are not parallel");
    if (p.size() != f.size())
      throw AlgebraError("ill-formed relation: non-homogeneous relations are not supported");
  }
  return out;
}

// Spanning set of I_d: all u * rho * v with |u| + |rho| + |v| = d, as rows
// over the column index of the length-d paths.
la::Matrix ideal_component(const std::vector<IndexedRelation>& rels, PathEnumerator& paths, std::size_t d,
                           const std::map<std::vector<int>, std::size_t>& column, const la::Field& k,
                           const Quiver& q) {
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> rows;
  for (const auto& rel : rels) {
    if (rel.empty()) continue;
    const std::size_t r = rel.front().second.size();
    if (r > d) continue;
    const int rs = q.arrow(rel.front().second.front()).source;
    const int rt = q.arrow(rel.front().second.back()).target;
    for (std::size_t i = 0; i + r <= d; ++i) {
      const auto& us = paths.of_length(i);
      const auto& vs = paths.of_length(d - r - i);
      for (const auto& u : us) {
        if (u.target != rs) continue;
        for (const auto& v : vs) {
          if (v.source != rt) continue;
          std::vector<std::pair<std::size_t, std::uint32_t>> row;
          for (const auto& [c, p] : rel) {
            std::vector<int> full = u.arrows;
            full.insert(full.end(), p.begin(), p.end());
            full.insert(full.end(), v.arrows.begin(), v.arrows.end());
            row.emplace_back(column.at(full), c);
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  la::Matrix m(rows.size(), column.size(), k.prime());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : rows[i]) m.add_to(i, c, v);
  return m;
}

}  // namespace

AlgebraPtr Algebra::build(Quiver quiver, std::vector<Relation> relations, std::size_t max_path_length,
                          std::uint32_t prime, std::string name) {
  if (max_path_length < 1) throw AlgebraError("max_path_length must be at least 1");
  std::shared_ptr<Algebra> alg(new Algebra());
  alg->name_ = std::move(name);
  alg->field_ = la::Field(prime);
  alg->quiver_ = std::move(quiver);
  alg->relations_ = std::move(relations);
  alg->max_path_length_ = max_path_length;
  std::vector<IndexedRelation> rels;
  for (const auto& r : alg->relations_) rels.push_back(index_relation(alg->quiver_, r, alg->field_));
  alg->construct(rels);
  return alg;
}

void Algebra::construct(const std::vector<IndexedRelation>& rels) {
  const la::Field& k = field_;
  const int n = static_cast<int>(quiver_.num_vertices());
  PathEnumerator paths(quiver_);

  for (int v = 0; v < n; ++v) {
    idempotent_.push_back(static_cast<int>(basis_.size()));
    basis_.push_back(Path{v, v, {}});
  }
  for (int a = 0; a < static_cast<int>(quiver_.num_arrows()); ++a) {
    arrow_basis_.push_back(static_cast<int>(basis_.size()));
    basis_.push_back(Path{quiver_.arrow(a).source, quiver_.arrow(a).target, {a}});
    normal_forms_[{a}] = Element::basis(arrow_basis_.back());
  }
  top_degree_ = quiver_.num_arrows() ? 1 : 0;

  for (std::size_t d = 2; quiver_.num_arrows() > 0; ++d) {
    const auto& all = paths.of_length(d);
    if (all.empty()) break;
    // Columns ordered lex-descending so lex-largest paths become pivots and
    // the surviving basis consists of lex-smallest representatives.
    std::map<std::vector<int>, std::size_t> column;
    for (std::size_t i = 0; i < all.size(); ++i) column[all[all.size() - 1 - i].arrows] = i;
    la::Matrix gens = ideal_component(rels, paths, d, column, k, quiver_);
    la::Factorization f = la::factor(gens);
    std::vector<char> pivot(all.size(), 0);
    for (auto c : f.pivots) pivot[c] = 1;

    std::vector<int> col_to_basis(all.size(), -1);
    std::size_t survivors = 0;
    for (const auto& p : all) {
      const std::size_t c = column.at(p.arrows);
      if (pivot[c]) continue;
      col_to_basis[c] = static_cast<int>(basis_.size());
      basis_.push_back(Path{p.source, p.target, p.arrows});
      ++survivors;
    }
    for (std::size_t i = 0; i < f.rank; ++i) {
      Element e;
      for (std::size_t c = f.pivots[i] + 1; c < all.size(); ++c)
        if (!pivot[c] && f.rref(i, c) != 0) e.add(col_to_basis[c], k.neg(f.rref(i, c)), k);
      normal_forms_[all[all.size() - 1 - f.pivots[i]].arrows] = std::move(e);
    }
    for (std::size_t c = 0; c < all.size(); ++c)
      if (!pivot[c]) normal_forms_[all[all.size() - 1 - c].arrows] = Element::basis(col_to_basis[c]);

    if (survivors == 0) break;
    top_degree_ = d;
    if (d >= max_path_length_)
      throw AlgebraError("not finite-dimensional within bound: paths of length " + std::to_string(d) +
                         " survive reduction");
  }
  if (top_degree_ >= max_path_length_)
    throw AlgebraError("not finite-dimensional within bound: paths of length " + std::to_string(top_degree_) +
                       " survive reduction");

  between_.assign(n, std::vector<std::vector<int>>(n));
  for (int b = 0; b < static_cast<int>(basis_.size()); ++b)
    between_[basis_[b].source][basis_[b].target].push_back(b);

  times_arrow_.assign(basis_.size(), std::vector<Element>(quiver_.num_arrows()));
  for (int b = 0; b < static_cast<int>(basis_.size()); ++b)
    for (int a = 0; a < static_cast<int>(quiver_.num_arrows()); ++a)
      times_arrow_[b][a] = multiply_basis(b, arrow_basis_[a]);
}

const std::vector<int>& Algebra::basis_between(int i, int j) const {
  return between_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

Element Algebra::normal_form(const Path& p) const {
  if (p.arrows.empty()) return Element::basis(idempotent(p.source));
  for (std::size_t i = 0; i + 1 < p.arrows.size(); ++i)
    if (quiver_.arrow(p.arrows[i]).target != quiver_.arrow(p.arrows[i + 1]).source)
      throw AlgebraError("normal_form: path does not compose");
  if (p.arrows.size() > top_degree_) return {};
  auto it = normal_forms_.find(p.arrows);
  if (it == normal_forms_.end()) throw AlgebraError("normal_form: unknown path");
  return it->second;
}

Element Algebra::multiply_basis(int b1, int b2) const {
  const Path& x = basis_path(b1);
  const Path& y = basis_path(b2);
  if (x.target != y.source) return {};
  if (x.arrows.empty()) return Element::basis(b2);
  if (y.arrows.empty()) return Element::basis(b1);
  Path p{x.source, y.target, x.arrows};
  p.arrows.insert(p.arrows.end(), y.arrows.begin(), y.arrows.end());
  return normal_form(p);
}

Element Algebra::multiply(const Element& x, const Element& y) const {
  Element out;
  for (const auto& [b1, c1] : x.terms())
    for (const auto& [b2, c2] : y.terms()) out.add(multiply_basis(b1, b2), field_.mul(c1, c2), field_);
  return out;
}

const Element& Algebra::times_arrow(int b, int arrow) const {
  return times_arrow_.at(static_cast<std::size_t>(b)).at(static_cast<std::size_t>(arrow));
}

std::string Algebra::path_string(const Path& p) const {
  if (p.arrows.empty()) return "e" + quiver_.vertex_name(p.source);
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) s += (i ? "*" : "") + quiver_.arrow(p.arrows[i]).name;
  return s;
}

std::string Algebra::element_string(const Element& e) const {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : e.terms()) {
    const auto v = field_.signed_value(c);
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    const auto mag = v < 0 ? -v : v;
    if (mag != 1) os << mag << "*";
    os << path_string(basis_path(b));
    first = false;
  }
  return os.str();
}

AlgebraPtr Algebra::opposite() const {
  if (auto back = opposite_back_.lock()) return back;
  std::call_once(opposite_once_, [this] {
    std::vector<Arrow> arrows;
    for (const auto& a : quiver_.arrows()) arrows.push_back({a.name, a.target, a.source});
    std::vector<Relation> rels;
    for (const auto& r : relations_) {
      Relation o;
      for (const auto& t : r.terms) o.terms.push_back({t.coeff, {t.path.rbegin(), t.path.rend()}});
      rels.push_back(std::move(o));
    }
    auto op = Algebra::build(Quiver(quiver_.vertices(), std::move(arrows)), std::move(rels), max_path_length_,
                             prime(), name_.empty() ? "op" : name_ + "^op");
    op->opposite_back_ = weak_from_this();
    opposite_ = std::move(op);
  });
  return opposite_;
}

Element Algebra::to_opposite(const Element& e, const Algebra& op) const {
  Element out;
  for (const auto& [b, c] : e.terms()) {
    const Path& p = basis_path(b);
    Path r{p.target, p.source, {p.arrows.rbegin(), p.arrows.rend()}};
    out.add(op.normal_form(r), c, field_);
  }
  return out;
}

AlgebraPtr corner(const Algebra& alg, const std::vector<int>& vs_in) {
  std::vector<int> vs = vs_in;
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  const int n = static_cast<int>(alg.num_vertices());
  for (int v : vs)
    if (v < 0 || v >= n) throw AlgebraError("corner: vertex index out of range");
  std::vector<int> new_index(n, -1);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    new_index[vs[i]] = static_cast<int>(i);
    names.push_back(alg.quiver().vertex_name(vs[i]));
  }
  std::vector<Arrow> arrows;
  std::vector<int> old_arrow;
  for (int a = 0; a < static_cast<int>(alg.quiver().num_arrows()); ++a) {
    const auto& ar = alg.quiver().arrow(a);
    if (new_index[ar.source] < 0 || new_index[ar.target] < 0) continue;
    arrows.push_back({ar.name, new_index[ar.source], new_index[ar.target]});
    old_arrow.push_back(a);
  }
  Quiver sub(names, arrows);
  const la::Field& k = alg.field();

  std::size_t expected_dim = 0;
  for (int i : vs)
    for (int j : vs) expected_dim += alg.basis_between(i, j).size();

  // Induced relations: degree by degree, the kernel of (subquiver paths) ->
  // e A e, keeping only the vectors not already generated from lower degrees.
  PathEnumerator paths(sub);
  std::vector<Relation> rels;
  std::vector<IndexedRelation> indexed;
  for (std::size_t d = 1; d <= alg.top_degree() + 1; ++d) {
    const auto& all = paths.of_length(d);
    if (all.empty()) break;
    for (int s = 0; s < static_cast<int>(vs.size()); ++s) {
      for (int t = 0; t < static_cast<int>(vs.size()); ++t) {
        std::vector<const PathRef*> cell;
        for (const auto& p : all)
          if (p.source == s && p.target == t) cell.push_back(&p);
        std::vector<int> target_basis;
        for (int b : alg.basis_between(vs[s], vs[t]))
          if (alg.basis_path(b).length() == d) target_basis.push_back(b);
        if (cell.empty()) {
          if (!target_basis.empty()) throw AlgebraError("corner not a subquiver algebra");
          continue;
        }
        la::Matrix image(target_basis.size(), cell.size(), k.prime());
        for (std::size_t c = 0; c < cell.size(); ++c) {
          Path op{vs[s], vs[t], {}};
          for (int a : cell[c]->arrows) op.arrows.push_back(old_arrow[a]);
          Element e = alg.normal_form(op);
          for (const auto& [b, v] : e.terms()) {
            auto it = std::find(target_basis.begin(), target_basis.end(), b);
            if (it == target_basis.end()) throw AlgebraError("corner: normal form left the graded piece");
            image.set_raw(static_cast<std::size_t>(it - target_basis.begin()), c, v);
          }
        }
        if (la::rank(image) != target_basis.size()) throw AlgebraError("corner not a subquiver algebra");
        if (d < 2) continue;
        la::Matrix ker = la::kernel(image);
        if (ker.cols() == 0) continue;
        // Span already generated by the chosen relations, restricted to this cell.
        std::map<std::vector<int>, std::size_t> column;
        for (std::size_t i = 0; i < all.size(); ++i) column[all[i].arrows] = i;
        la::Matrix generated = ideal_component(indexed, paths, d, column, k, sub);
        std::vector<std::size_t> cell_cols;
        for (const auto* p : cell) cell_cols.push_back(column.at(p->arrows));
        la::Matrix span = generated.columns(cell_cols);
        for (std::size_t j = 0; j < ker.cols(); ++j) {
          la::Matrix candidate = ker.column(j).transpose();
          const std::size_t before = la::rank(span);
          la::Matrix grown = la::vstack(span, candidate);
          if (la::rank(grown) == before) continue;
          span = std::move(grown);
          Relation r;
          IndexedRelation ir;
          for (std::size_t c = 0; c < cell.size(); ++c) {
            if (candidate(0, c) == 0) continue;
            Term term{k.signed_value(candidate(0, c)), {}};
            for (int a : cell[c]->arrows) term.path.push_back(sub.arrow(a).name);
            r.terms.push_back(term);
            ir.emplace_back(candidate(0, c), cell[c]->arrows);
          }
          rels.push_back(std::move(r));
          indexed.push_back(std::move(ir));
        }
      }
    }
  }
  std::string name = alg.name().empty() ? "corner" : alg.name() + "[";
  if (!alg.name().empty()) {
    for (std::size_t i = 0; i < names.size(); ++i) name += (i ? "," : "") + names[i];
    name += "]";
  }
  auto result = Algebra::build(sub, rels, alg.max_path_length(), alg.prime(), name);
  if (result->dim() != expected_dim) throw AlgebraError("corner not a subquiver algebra");
  return result;
}

std::vector<int> TriSplit::m_between(int gamma_vertex, int lambda_vertex) const {
  std::vector<int> out;
  for (std::size_t m = 0; m < m_basis.size(); ++m)
    if (m_source[m] == gamma_vertex && m_target[m] == lambda_vertex) out.push_back(static_cast<int>(m));
  return out;
}

namespace {

Element map_corner_element(const Element& e, const Algebra& corner_alg, const Algebra& R,
                           const std::vector<int>& vertex_in_R, const std::vector<int>& arrow_in_R) {
  Element out;
  for (const auto& [b, c] : e.terms()) {
    const Path& p = corner_alg.basis_path(b);
    Path rp{vertex_in_R[p.source], vertex_in_R[p.target], {}};
    for (int a : p.arrows) rp.arrows.push_back(arrow_in_R[a]);
    out.add(R.normal_form(rp), c, R.field());
  }
  return out;
}

}  // namespace

Element TriSplit::gamma_to_R(const Element& g) const {
  return map_corner_element(g, *Gamma, *R, B, gamma_arrow_in_R);
}

Element TriSplit::lambda_to_R(const Element& l) const {
  return map_corner_element(l, *Lambda, *R, A, lambda_arrow_in_R);
}

TriSplit triangular_split(const AlgebraPtr& alg, const std::vector<int>& A_in, const std::vector<int>& B_in) {
  const int n = static_cast<int>(alg->num_vertices());
  TriSplit s;
  s.R = alg;
  s.A = A_in;
  s.B = B_in;
  std::sort(s.A.begin(), s.A.end());
  std::sort(s.B.begin(), s.B.end());
  std::vector<int> side(n, -1);
  for (int v : s.A) {
    if (v < 0 || v >= n || side[v] != -1) throw AlgebraError("not a partition of the vertex set");
    side[v] = 0;
  }
  for (int v : s.B) {
    if (v < 0 || v >= n || side[v] != -1) throw AlgebraError("not a partition of the vertex set");
    side[v] = 1;
  }
  if (std::count(side.begin(), side.end(), -1) != 0) throw AlgebraError("not a partition of the vertex set");
  for (const auto& a : alg->quiver().arrows())
    if (side[a.source] == 0 && side[a.target] == 1)
      throw AlgebraError("not triangular: arrow '" + a.name + "' runs from the A side to the B side");

  s.Lambda = corner(*alg, s.A);
  s.Gamma = corner(*alg, s.B);
  for (const auto& a : s.Lambda->quiver().arrows()) s.lambda_arrow_in_R.push_back(*alg->quiver().arrow_index(a.name));
  for (const auto& a : s.Gamma->quiver().arrows()) s.gamma_arrow_in_R.push_back(*alg->quiver().arrow_index(a.name));

  const auto single_basis = [&](const Element& e) {
    if (e.terms().size() != 1 || e.terms().front().second != 1)
      throw AlgebraError("corner basis does not map to an R basis path");
    return e.terms().front().first;
  };
  for (int b = 0; b < static_cast<int>(s.Lambda->dim()); ++b)
    s.lambda_basis_in_R.push_back(single_basis(s.lambda_to_R(Element::basis(b))));
  for (int b = 0; b < static_cast<int>(s.Gamma->dim()); ++b)
    s.gamma_basis_in_R.push_back(single_basis(s.gamma_to_R(Element::basis(b))));

  std::vector<int> a_pos(n, -1), b_pos(n, -1);
  for (std::size_t i = 0; i < s.A.size(); ++i) a_pos[s.A[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < s.B.size(); ++i) b_pos[s.B[i]] = static_cast<int>(i);
  std::vector<int> m_index(alg->dim(), -1);
  for (int b = 0; b < static_cast<int>(alg->dim()); ++b) {
    const Path& p = alg->basis_path(b);
    if (side[p.source] == 1 && side[p.target] == 0) {
      m_index[b] = static_cast<int>(s.m_basis.size());
      s.m_basis.push_back(b);
      s.m_source.push_back(b_pos[p.source]);
      s.m_target.push_back(a_pos[p.target]);
    }
  }
  const auto to_m = [&](const Element& e) {
    Element out;
    for (const auto& [b, c] : e.terms()) {
      if (m_index[b] < 0) throw AlgebraError("bimodule action left M");
      out.add(m_index[b], c, alg->field());
    }
    return out;
  };
  s.left_action.assign(s.Gamma->dim(), std::vector<Element>(s.m_basis.size()));
  for (int g = 0; g < static_cast<int>(s.Gamma->dim()); ++g)
    for (std::size_t m = 0; m < s.m_basis.size(); ++m)
      s.left_action[g][m] = to_m(alg->multiply_basis(s.gamma_basis_in_R[g], s.m_basis[m]));
  s.right_action.assign(s.m_basis.size(), std::vector<Element>(s.Lambda->dim()));
  for (std::size_t m = 0; m < s.m_basis.size(); ++m)
    for (int l = 0; l < static_cast<int>(s.Lambda->dim()); ++l)
      s.right_action[m][l] = to_m(alg->multiply_basis(s.m_basis[m], s.lambda_basis_in_R[l]));
  return s;
}

}  // namespace tautri
