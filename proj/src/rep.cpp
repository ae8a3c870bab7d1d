#include "tautri/rep.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tautri {

namespace {

la::Matrix empty_cols(std::size_t rows, std::uint32_t p) { return la::Matrix(rows, 0, p); }

// Independent columns spanning the column space of m.
la::Matrix span_basis(const la::Matrix& m) {
  if (m.cols() == 0 || m.rows() == 0) return la::Matrix(m.rows(), 0, m.prime());
  return la::factor(m).image_basis;
}

la::Matrix total_matrix(const Morphism& f) { return la::block_diagonal(f.maps, f.source.prime()); }

std::vector<int> positions_in_between(const Algebra& alg) {
  std::vector<int> pos(alg.dim(), -1);
  const int n = static_cast<int>(alg.num_vertices());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& b = alg.basis_between(i, j);
      for (std::size_t k = 0; k < b.size(); ++k) pos[b[k]] = static_cast<int>(k);
    }
  return pos;
}

}  // namespace

Representation::Representation(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<la::Matrix> maps)
    : alg_(std::move(alg)), dims_(std::move(dims)), maps_(std::move(maps)) {
  if (!alg_) throw ModuleError("representation without an algebra");
  const auto& q = alg_->quiver();
  if (dims_.size() != q.num_vertices()) throw ModuleError("dimension vector has the wrong length");
  if (maps_.size() != q.num_arrows()) throw ModuleError("wrong number of arrow matrices");
  for (std::size_t a = 0; a < maps_.size(); ++a) {
    const auto& ar = q.arrow(static_cast<int>(a));
    if (maps_[a].rows() != dims_[ar.target] || maps_[a].cols() != dims_[ar.source])
      throw ModuleError("matrix for arrow '" + ar.name + "' has the wrong shape");
    if (maps_[a].prime() != alg_->prime()) throw ModuleError("matrix over the wrong field");
  }
  for (const auto& r : alg_->relations()) {
    if (r.terms.empty()) continue;
    const int s = q.arrow(*q.arrow_index(r.terms.front().path.front())).source;
    const int t = q.arrow(*q.arrow_index(r.terms.front().path.back())).target;
    la::Matrix total(dims_[t], dims_[s], prime());
    for (const auto& term : r.terms) {
      la::Matrix m = la::Matrix::identity(dims_[s], prime());
      for (const auto& name : term.path) m = maps_[*q.arrow_index(name)] * m;
      total = total + la::scale(m, alg_->field().reduce(term.coeff));
    }
    if (!total.is_zero()) throw ModuleError("representation does not satisfy the relations");
  }
}

Representation Representation::zero(AlgebraPtr alg) {
  std::vector<la::Matrix> maps;
  for (std::size_t a = 0; a < alg->quiver().num_arrows(); ++a) maps.emplace_back(0, 0, alg->prime());
  std::vector<std::size_t> dims(alg->num_vertices(), 0);
  return Representation(std::move(alg), std::move(dims), std::move(maps));
}

std::size_t Representation::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }

la::Matrix Representation::path_action(int b) const {
  const Path& p = alg_->basis_path(b);
  la::Matrix m = la::Matrix::identity(dims_[p.source], prime());
  for (int a : p.arrows) m = maps_[a] * m;
  return m;
}

la::Matrix Representation::element_action(const Element& e, int i, int j) const {
  la::Matrix m(dims_.at(j), dims_.at(i), prime());
  for (const auto& [b, c] : e.terms()) {
    const Path& p = alg_->basis_path(b);
    if (p.source != i || p.target != j) throw ModuleError("element does not run between the given vertices");
    m = m + la::scale(path_action(b), c);
  }
  return m;
}

bool Morphism::is_valid() const {
  const auto& q = source.algebra().quiver();
  for (int a = 0; a < static_cast<int>(q.num_arrows()); ++a) {
    const auto& ar = q.arrow(a);
    if (target.arrow_map(a) * maps[ar.source] != maps[ar.target] * source.arrow_map(a)) return false;
  }
  return true;
}

bool Morphism::is_zero() const {
  return std::all_of(maps.begin(), maps.end(), [](const la::Matrix& m) { return m.is_zero(); });
}

bool Morphism::is_injective() const {
  for (std::size_t v = 0; v < maps.size(); ++v)
    if (la::rank(maps[v]) != source.dims()[v]) return false;
  return true;
}

bool Morphism::is_surjective() const {
  for (std::size_t v = 0; v < maps.size(); ++v)
    if (la::rank(maps[v]) != target.dims()[v]) return false;
  return true;
}

bool Morphism::is_iso() const { return source.dims() == target.dims() && is_injective(); }

void require_same_algebra(const Representation& x, const Representation& y) {
  if (x.algebra_ptr().get() != y.algebra_ptr().get()) throw ModuleError("modules over different algebras");
}

Morphism identity_morphism(const Representation& x) {
  Morphism f{x, x, {}};
  for (auto d : x.dims()) f.maps.push_back(la::Matrix::identity(d, x.prime()));
  return f;
}

Morphism zero_morphism(const Representation& x, const Representation& y) {
  require_same_algebra(x, y);
  Morphism f{x, y, {}};
  for (std::size_t v = 0; v < x.dims().size(); ++v) f.maps.emplace_back(y.dims()[v], x.dims()[v], x.prime());
  return f;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (g.source.dims() != f.target.dims()) throw ModuleError("compose: shapes do not match");
  Morphism h{f.source, g.target, {}};
  for (std::size_t v = 0; v < f.maps.size(); ++v) h.maps.push_back(g.maps[v] * f.maps[v]);
  return h;
}

Morphism add(const Morphism& f, const Morphism& g) {
  Morphism h{f.source, f.target, {}};
  for (std::size_t v = 0; v < f.maps.size(); ++v) h.maps.push_back(f.maps[v] + g.maps[v]);
  return h;
}

Morphism scale(const Morphism& f, std::uint32_t c) {
  Morphism h{f.source, f.target, {}};
  for (const auto& m : f.maps) h.maps.push_back(la::scale(m, c));
  return h;
}

std::vector<Morphism> hom_space(const Representation& x, const Representation& y) {
  require_same_algebra(x, y);
  const auto& q = x.algebra().quiver();
  const std::size_t n = q.num_vertices();
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offset[v + 1] = offset[v] + y.dims()[v] * x.dims()[v];
  const std::size_t unknowns = offset[n];
  const auto var = [&](std::size_t v, std::size_t r, std::size_t c) { return offset[v] + r * x.dims()[v] + c; };
  std::size_t equations = 0;
  for (const auto& ar : q.arrows()) equations += y.dims()[ar.target] * x.dims()[ar.source];
  const la::Field& k = x.algebra().field();
  la::Matrix sys(equations, unknowns, x.prime());
  std::size_t row = 0;
  for (int a = 0; a < static_cast<int>(q.num_arrows()); ++a) {
    const auto& ar = q.arrow(a);
    const std::size_t i = ar.source, j = ar.target;
    const la::Matrix& ya = y.arrow_map(a);
    const la::Matrix& xa = x.arrow_map(a);
    // (Y_a F_i - F_j X_a)[r][c] = 0
    for (std::size_t r = 0; r < y.dims()[j]; ++r)
      for (std::size_t c = 0; c < x.dims()[i]; ++c, ++row) {
        for (std::size_t t = 0; t < y.dims()[i]; ++t)
          if (ya(r, t)) sys.add_to(row, var(i, t, c), ya(r, t));
        for (std::size_t t = 0; t < x.dims()[j]; ++t)
          if (xa(t, c)) sys.add_to(row, var(j, r, t), k.neg(xa(t, c)));
      }
  }
  la::Matrix ker = la::kernel(sys);
  std::vector<Morphism> out;
  for (std::size_t col = 0; col < ker.cols(); ++col) {
    Morphism f{x, y, {}};
    for (std::size_t v = 0; v < n; ++v) {
      la::Matrix m(y.dims()[v], x.dims()[v], x.prime());
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m.set_raw(r, c, ker(var(v, r, c), col));
      f.maps.push_back(std::move(m));
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::size_t hom_dim(const Representation& x, const Representation& y) { return hom_space(x, y).size(); }

SubModule submodule(const Representation& x, const std::vector<la::Matrix>& spans) {
  const auto& q = x.algebra().quiver();
  std::vector<la::Matrix> bases;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < spans.size(); ++v) {
    bases.push_back(span_basis(spans[v]));
    dims.push_back(bases.back().cols());
  }
  std::vector<la::Matrix> maps;
  for (int a = 0; a < static_cast<int>(q.num_arrows()); ++a) {
    const auto& ar = q.arrow(a);
    auto m = la::solve(bases[ar.target], x.arrow_map(a) * bases[ar.source]);
    if (!m) throw ModuleError("subspaces are not closed under the arrow action");
    maps.push_back(std::move(*m));
  }
  Representation sub(x.algebra_ptr(), dims, std::move(maps));
  Morphism inc{sub, x, std::move(bases)};
  return {std::move(sub), std::move(inc)};
}

QuotientModule quotient(const Representation& x, const std::vector<la::Matrix>& spans) {
  const auto& q = x.algebra().quiver();
  std::vector<la::Matrix> sections, projections;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < spans.size(); ++v) {
    if (spans[v].rows() != x.dims()[v]) throw ModuleError("quotient: span has the wrong number of rows");
    la::Matrix basis = span_basis(spans[v]);
    la::Matrix comp = la::complement(basis);
    la::Matrix full = la::hstack(basis, comp);
    la::Matrix inv = full.rows() ? *la::inverse(full) : full;
    projections.push_back(inv.block(basis.cols(), 0, comp.cols(), x.dims()[v]));
    sections.push_back(std::move(comp));
    dims.push_back(sections.back().cols());
  }
  std::vector<la::Matrix> maps;
  for (int a = 0; a < static_cast<int>(q.num_arrows()); ++a) {
    const auto& ar = q.arrow(a);
    maps.push_back(projections[ar.target] * x.arrow_map(a) * sections[ar.source]);
  }
  Representation quo(x.algebra_ptr(), dims, std::move(maps));
  Morphism proj{x, quo, std::move(projections)};
  if (!proj.is_valid()) throw ModuleError("subspaces are not closed under the arrow action");
  return {std::move(quo), std::move(proj)};
}

SubModule kernel(const Morphism& f) {
  std::vector<la::Matrix> spans;
  for (const auto& m : f.maps) spans.push_back(la::kernel(m));
  return submodule(f.source, spans);
}

QuotientModule cokernel(const Morphism& f) { return quotient(f.target, f.maps); }

SubModule image(const Morphism& f) { return submodule(f.target, f.maps); }

Representation direct_sum(AlgebraPtr alg, const std::vector<Representation>& parts) {
  const auto& q = alg->quiver();
  std::vector<std::size_t> dims(q.num_vertices(), 0);
  for (const auto& p : parts) {
    if (p.algebra_ptr().get() != alg.get()) throw ModuleError("modules over different algebras");
    for (std::size_t v = 0; v < dims.size(); ++v) dims[v] += p.dims()[v];
  }
  std::vector<la::Matrix> maps;
  for (int a = 0; a < static_cast<int>(q.num_arrows()); ++a) {
    std::vector<la::Matrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.arrow_map(a));
    maps.push_back(la::block_diagonal(blocks, alg->prime()));
  }
  return Representation(std::move(alg), std::move(dims), std::move(maps));
}

Representation direct_sum(const std::vector<Representation>& parts) {
  if (parts.empty()) throw ModuleError("direct_sum of an empty list needs an algebra");
  return direct_sum(parts.front().algebra_ptr(), parts);
}

Morphism block_morphism(const std::vector<Representation>& sources, const std::vector<Representation>& targets,
                        const std::vector<std::vector<Morphism>>& blocks) {
  if (sources.empty() && targets.empty()) throw ModuleError("block_morphism needs at least one module");
  const AlgebraPtr& alg = sources.empty() ? targets.front().algebra_ptr() : sources.front().algebra_ptr();
  Representation src = direct_sum(alg, sources), tgt = direct_sum(alg, targets);
  Morphism f = zero_morphism(src, tgt);
  for (std::size_t v = 0; v < alg->num_vertices(); ++v) {
    std::size_t r0 = 0;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      std::size_t c0 = 0;
      for (std::size_t s = 0; s < sources.size(); ++s) {
        f.maps[v].set_block(r0, c0, blocks[t][s].maps[v]);
        c0 += sources[s].dims()[v];
      }
      r0 += targets[t].dims()[v];
    }
  }
  return f;
}

Representation projective(const AlgebraPtr& alg, int v) {
  const auto& q = alg->quiver();
  const int n = static_cast<int>(q.num_vertices());
  auto pos = positions_in_between(*alg);
  std::vector<std::size_t> dims(n);
  for (int j = 0; j < n; ++j) dims[j] = alg->basis_between(v, j).size();
  std::vector<la::Matrix> maps;
  for (int a = 0; a < static_cast<int>(q.num_arrows()); ++a) {
    const auto& ar = q.arrow(a);
    la::Matrix m(dims[ar.target], dims[ar.source], alg->prime());
    const auto& from = alg->basis_between(v, ar.source);
    for (std::size_t c = 0; c < from.size(); ++c)
      for (const auto& [b, coeff] : alg->times_arrow(from[c], a).terms()) m.set_raw(pos[b], c, coeff);
    maps.push_back(std::move(m));
  }
  return Representation(alg, std::move(dims), std::move(maps));
}

Representation simple(const AlgebraPtr& alg, int v) {
  const auto& q = alg->quiver();
  std::vector<std::size_t> dims(q.num_vertices(), 0);
  dims.at(v) = 1;
  std::vector<la::Matrix> maps;
  for (const auto& ar : q.arrows()) maps.emplace_back(dims[ar.target], dims[ar.source], alg->prime());
  return Representation(alg, std::move(dims), std::move(maps));
}

Representation injective(const AlgebraPtr& alg, int v) {
  const auto& q = alg->quiver();
  const int n = static_cast<int>(q.num_vertices());
  auto pos = positions_in_between(*alg);
  std::vector<std::size_t> dims(n);
  for (int j = 0; j < n; ++j) dims[j] = alg->basis_between(j, v).size();
  std::vector<la::Matrix> maps;
  for (int a = 0; a < static_cast<int>(q.num_arrows()); ++a) {
    const auto& ar = q.arrow(a);
    la::Matrix m(dims[ar.target], dims[ar.source], alg->prime());
    const auto& rows = alg->basis_between(ar.target, v);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Element prod = alg->multiply_basis(alg->arrow_basis(a), rows[r]);
      for (const auto& [b, coeff] : prod.terms()) m.set_raw(r, pos[b], coeff);
    }
    maps.push_back(std::move(m));
  }
  return Representation(alg, std::move(dims), std::move(maps));
}

Representation projective_sum(const AlgebraPtr& alg, const std::vector<int>& vertices) {
  std::vector<Representation> parts;
  for (int v : vertices) parts.push_back(projective(alg, v));
  return direct_sum(alg, parts);
}

Representation regular_module(const AlgebraPtr& alg) {
  std::vector<int> vs(alg->num_vertices());
  std::iota(vs.begin(), vs.end(), 0);
  return projective_sum(alg, vs);
}

Morphism from_projective(const Representation& x, int v, const la::Matrix& column) {
  const Algebra& alg = x.algebra();
  Representation p = projective(x.algebra_ptr(), v);
  Morphism f = zero_morphism(p, x);
  for (int j = 0; j < static_cast<int>(alg.num_vertices()); ++j) {
    const auto& paths = alg.basis_between(v, j);
    for (std::size_t c = 0; c < paths.size(); ++c) f.maps[j].set_block(0, c, x.path_action(paths[c]) * column);
  }
  return f;
}

RadicalTop radical_top(const Representation& x) {
  const auto& q = x.algebra().quiver();
  std::vector<la::Matrix> spans;
  for (std::size_t v = 0; v < q.num_vertices(); ++v) spans.push_back(empty_cols(x.dims()[v], x.prime()));
  for (int a = 0; a < static_cast<int>(q.num_arrows()); ++a) {
    const int t = q.arrow(a).target;
    spans[t] = la::hstack(spans[t], x.arrow_map(a));
  }
  return {submodule(x, spans), quotient(x, spans)};
}

std::vector<std::size_t> top_dims(const Representation& x) { return radical_top(x).top.module.dims(); }

Morphism to_morphism(const ProjMap& p) {
  const Algebra& alg = *p.alg;
  auto pos = positions_in_between(alg);
  std::vector<Representation> srcs, tgts;
  for (int v : p.source) srcs.push_back(projective(p.alg, v));
  for (int v : p.target) tgts.push_back(projective(p.alg, v));
  Representation src = direct_sum(p.alg, srcs), tgt = direct_sum(p.alg, tgts);
  Morphism f = zero_morphism(src, tgt);
  for (int j = 0; j < static_cast<int>(alg.num_vertices()); ++j) {
    std::size_t r0 = 0;
    for (std::size_t s = 0; s < p.target.size(); ++s) {
      std::size_t c0 = 0;
      for (std::size_t r = 0; r < p.source.size(); ++r) {
        const auto& paths = alg.basis_between(p.source[r], j);
        for (std::size_t c = 0; c < paths.size(); ++c) {
          const Element prod = alg.multiply(p.entries[s][r], Element::basis(paths[c]));
          for (const auto& [b, coeff] : prod.terms()) f.maps[j].add_to(r0 + pos[b], c0 + c, coeff);
        }
        c0 += paths.size();
      }
      r0 += alg.basis_between(p.target[s], j).size();
    }
  }
  return f;
}

std::pair<std::vector<int>, Morphism> projective_cover(const Representation& x) {
  auto rt = radical_top(x);
  std::vector<int> verts;
  std::vector<Representation> srcs;
  std::vector<std::vector<Morphism>> row(1);
  for (int v = 0; v < static_cast<int>(x.dims().size()); ++v) {
    la::Matrix gens = la::complement(rt.rad.inclusion.maps[v]);
    for (std::size_t g = 0; g < gens.cols(); ++g) {
      verts.push_back(v);
      Morphism f = from_projective(x, v, gens.column(g));
      srcs.push_back(f.source);
      row[0].push_back(std::move(f));
    }
  }
  if (verts.empty()) return {verts, zero_morphism(Representation::zero(x.algebra_ptr()), x)};
  Morphism cover = block_morphism(srcs, {x}, row);
  return {verts, cover};
}

std::size_t generator_column(const Algebra& alg, const std::vector<int>& vertices, std::size_t r) {
  const int u = vertices.at(r);
  std::size_t c = 0;
  for (std::size_t r2 = 0; r2 < r; ++r2) c += alg.basis_between(vertices[r2], u).size();
  const auto& own = alg.basis_between(u, u);
  return c + static_cast<std::size_t>(std::find(own.begin(), own.end(), alg.idempotent(u)) - own.begin());
}

Presentation min_proj_presentation(const Representation& x) {
  const AlgebraPtr& alg = x.algebra_ptr();
  auto [v0, cover] = projective_cover(x);
  SubModule k = kernel(cover);
  auto [v1, cover1] = projective_cover(k.module);
  Morphism p = compose(k.inclusion, cover1);
  ProjMap pm{alg, v1, v0, std::vector<std::vector<Element>>(v0.size(), std::vector<Element>(v1.size()))};
  for (std::size_t r = 0; r < v1.size(); ++r) {
    const int u = v1[r];
    la::Matrix img = p.maps[u].column(generator_column(*alg, v1, r));
    std::size_t r0 = 0;
    for (std::size_t s = 0; s < v0.size(); ++s) {
      const auto& paths = alg->basis_between(v0[s], u);
      for (std::size_t i = 0; i < paths.size(); ++i) pm.entries[s][r].add(paths[i], img(r0 + i, 0), alg->field());
      r0 += paths.size();
    }
  }
  Presentation out{pm, projective_sum(alg, v1), projective_sum(alg, v0), cover};
  out.cover.source = out.P0;
  return out;
}

bool gen_membership(const Representation& n, const Representation& x) {
  require_same_algebra(n, x);
  if (n.is_zero()) return true;
  auto homs = hom_space(x, n);
  for (std::size_t v = 0; v < n.dims().size(); ++v) {
    la::Matrix span = empty_cols(n.dims()[v], n.prime());
    for (const auto& f : homs) span = la::hstack(span, f.maps[v]);
    if (la::rank(span) != n.dims()[v]) return false;
  }
  return true;
}

bool is_projective(const Representation& x) {
  auto [verts, cover] = projective_cover(x);
  return cover.source.total_dim() == x.total_dim();
}

bool proj_dim_le_one(const Representation& x) {
  auto [verts, cover] = projective_cover(x);
  return is_projective(kernel(cover).module);
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

std::optional<Morphism> indecomposable_iso(const Representation& x, const Representation& y) {
  if (x.dims() != y.dims()) return std::nullopt;
  if (x.is_zero()) return identity_morphism(x);
  auto f = hom_space(x, y);
  for (const auto& m : f)
    if (m.is_iso()) return m;
  auto g = hom_space(y, x);
  for (const auto& m : f)
    for (const auto& h : g)
      if (compose(h, m).is_iso()) return m;
  return std::nullopt;
}

bool is_nilpotent(const la::Matrix& t) {
  return t.rows() == 0 || la::power(t, t.rows()).is_zero();
}

struct Split {
  SubModule first;
  SubModule second;
};

// Fitting decomposition of x along an endomorphism with at least two
// eigenvalues (or an eigenvalue of multiplicity below dim x).
std::optional<Split> fitting_split(const Representation& x, const Morphism& f) {
  const std::size_t n = x.total_dim();
  la::Matrix t = total_matrix(f);
  auto rts = la::roots(la::charpoly(t), x.algebra().field());
  if (rts.empty()) return std::nullopt;
  if (rts.size() == 1 && rts[0].second == n) return std::nullopt;
  const std::uint32_t lambda = rts[0].first;
  std::vector<la::Matrix> ker, img;
  for (std::size_t v = 0; v < f.maps.size(); ++v) {
    la::Matrix g = f.maps[v] - la::scale(la::Matrix::identity(f.maps[v].rows(), x.prime()), lambda);
    la::Matrix gn = la::power(g, n);
    ker.push_back(la::kernel(gn));
    img.push_back(gn);
  }
  Split s{submodule(x, ker), submodule(x, img)};
  if (s.first.module.is_zero() || s.second.module.is_zero()) return std::nullopt;
  return s;
}

// True when End(x) is local: every basis endomorphism has one eigenvalue and
// the shifted basis generates a nilpotent algebra. Otherwise returns a
// non-nilpotent element of that algebra through `witness`.
bool end_is_local(const Representation& x, const std::vector<Morphism>& ends, std::optional<Morphism>& witness) {
  const std::size_t n = x.total_dim();
  const la::Field& k = x.algebra().field();
  std::vector<Morphism> gens;
  for (const auto& f : ends) {
    auto rts = la::roots(la::charpoly(total_matrix(f)), k);
    if (rts.size() != 1 || rts[0].second != n) {
      witness = f;
      return false;
    }
    gens.push_back(add(f, scale(identity_morphism(x), k.neg(rts[0].first))));
  }
  // Closure under products, tracked by flattened total matrices.
  const auto flat = [&](const Morphism& f) {
    la::Matrix t = total_matrix(f);
    la::Matrix row(1, n * n, x.prime());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) row.set_raw(0, i * n + j, t(i, j));
    return row;
  };
  std::vector<Morphism> span;
  la::Matrix rows(0, n * n, x.prime());
  const auto try_add = [&](const Morphism& f) {
    la::Matrix grown = la::vstack(rows, flat(f));
    if (la::rank(grown) == span.size()) return false;
    rows = std::move(grown);
    span.push_back(f);
    return true;
  };
  for (const auto& g : gens) try_add(g);
  for (std::size_t i = 0; i < span.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      try_add(compose(span[i], span[j]));
      try_add(compose(span[j], span[i]));
    }
  for (const auto& s : span)
    if (!is_nilpotent(total_matrix(s))) {
      witness = s;
      return false;
    }
  return true;
}

std::vector<Summand> split_all(const Representation& x) {
  if (x.is_zero()) return {};
  auto ends = hom_space(x, x);
  std::optional<Split> split;
  for (const auto& f : ends)
    if ((split = fitting_split(x, f))) break;
  if (!split) {
    std::optional<Morphism> witness;
    if (end_is_local(x, ends, witness)) return {Summand{x, identity_morphism(x)}};
    split = fitting_split(x, *witness);
    const la::Field& k = x.algebra().field();
    const std::uint32_t cmax = std::min<std::uint32_t>(k.prime() - 1, 16);
    for (std::size_t i = 0; !split && i < ends.size(); ++i)
      for (std::size_t j = 0; !split && j < ends.size(); ++j)
        for (std::uint32_t c = 1; !split && c <= cmax; ++c) {
          if (i != j) split = fitting_split(x, add(ends[i], scale(ends[j], c)));
          if (!split) split = fitting_split(x, add(*witness, scale(ends[j], c)));
        }
    if (!split)
      throw ModuleError("decomposition failed: End is not local but no idempotent splits over F_" +
                        std::to_string(k.prime()) + " (extension of scalars needed)");
  }
  std::vector<Summand> out;
  for (const SubModule* part : {&split->first, &split->second})
    for (auto& s : split_all(part->module))
      out.push_back(Summand{std::move(s.module), compose(part->inclusion, s.inclusion)});
  return out;
}

}  // namespace

std::vector<Summand> decompose_full(const Representation& x) {
  auto pieces = split_all(x);
  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> keys;
  std::vector<std::size_t> order(pieces.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<std::size_t>> dims, tops;
  for (const auto& p : pieces) {
    dims.push_back(p.module.dims());
    tops.push_back(top_dims(p.module));
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(dims[a], tops[a]) < std::tie(dims[b], tops[b]);
  });
  std::vector<Summand> out;
  for (auto i : order) out.push_back(std::move(pieces[i]));
  return out;
}

std::vector<std::pair<Representation, std::size_t>> decompose(const Representation& x) {
  std::vector<std::pair<Representation, std::size_t>> groups;
  for (auto& s : decompose_full(x)) {
    bool found = false;
    for (auto& g : groups)
      if (indecomposable_iso(g.first, s.module)) {
        ++g.second;
        found = true;
        break;
      }
    if (!found) groups.emplace_back(std::move(s.module), 1);
  }
  return groups;
}

bool is_indecomposable(const Representation& x) { return !x.is_zero() && split_all(x).size() == 1; }

std::size_t count_summands(const Representation& x) { return decompose(x).size(); }

Representation basic_part(const Representation& x) {
  std::vector<Representation> parts;
  for (auto& [m, mult] : decompose(x)) parts.push_back(m);
  return direct_sum(x.algebra_ptr(), parts);
}

std::optional<Morphism> isomorphism(const Representation& x, const Representation& y) {
  require_same_algebra(x, y);
  if (x.dims() != y.dims()) return std::nullopt;
  if (x.is_zero()) return identity_morphism(x);
  auto homs = hom_space(x, y);
  for (const auto& f : homs)
    if (f.is_iso()) return f;
  auto px = decompose_full(x), py = decompose_full(y);
  if (px.size() != py.size()) return std::nullopt;
  if (px.size() == 1) return indecomposable_iso(x, y);
  // Match pieces and assemble V * Phi * U^{-1}.
  std::vector<char> used(py.size(), 0);
  std::vector<std::size_t> match(px.size());
  std::vector<Morphism> isos;
  for (std::size_t i = 0; i < px.size(); ++i) {
    bool ok = false;
    for (std::size_t j = 0; j < py.size() && !ok; ++j) {
      if (used[j]) continue;
      if (auto f = indecomposable_iso(px[i].module, py[j].module)) {
        used[j] = 1;
        match[i] = j;
        isos.push_back(std::move(*f));
        ok = true;
      }
    }
    if (!ok) return std::nullopt;
  }
  Morphism out = zero_morphism(x, y);
  for (std::size_t v = 0; v < x.dims().size(); ++v) {
    if (x.dims()[v] == 0) continue;
    la::Matrix u(x.dims()[v], 0, x.prime()), w(y.dims()[v], 0, x.prime());
    std::vector<la::Matrix> phi;
    for (std::size_t i = 0; i < px.size(); ++i) {
      u = la::hstack(u, px[i].inclusion.maps[v]);
      w = la::hstack(w, py[match[i]].inclusion.maps[v]);
      phi.push_back(isos[i].maps[v]);
    }
    out.maps[v] = w * la::block_diagonal(phi, x.prime()) * *la::inverse(u);
  }
  return out;
}

// ---------------------------------------------------------------------------

Labeler::Labeler(AlgebraPtr alg) : alg_(std::move(alg)) {
  const int n = static_cast<int>(alg_->num_vertices());
  const auto seed = [&](const std::string& prefix, int kind, auto make) {
    for (int v = 0; v < n; ++v) {
      Representation m = make(alg_, v);
      bool dup = false;
      for (const auto& e : registry_)
        if (indecomposable_iso(e.module, m)) dup = true;
      if (!dup) registry_.push_back({prefix + alg_->quiver().vertex_name(v), std::move(m), {v, kind}});
    }
  };
  seed("P", 0, projective);
  seed("S", 1, simple);
  seed("I", 2, injective);
}

std::string Labeler::label(const Representation& x) const {
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& e : registry_)
    if (indecomposable_iso(e.module, x)) return e.label;
  std::ostringstream os;
  os << "M(";
  for (std::size_t v = 0; v < x.dims().size(); ++v) os << (v ? "," : "") << x.dims()[v];
  os << ")";
  std::string base = os.str(), name = base;
  for (int k = 2;; ++k) {
    bool taken = std::any_of(registry_.begin(), registry_.end(), [&](const Entry& e) { return e.label == name; });
    if (!taken) break;
    name = base + "#" + std::to_string(k);
  }
  registry_.push_back({name, x, {static_cast<int>(alg_->num_vertices()) + next_other_++, 3}});
  return name;
}

std::pair<int, int> Labeler::key(const std::string& label) const {
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& e : registry_)
    if (e.label == label) return e.key;
  throw ModuleError("unknown label '" + label + "'");
}

void Labeler::sort_labels(std::vector<std::string>& labels) const {
  std::stable_sort(labels.begin(), labels.end(),
                   [&](const std::string& a, const std::string& b) { return key(a) < key(b); });
}

std::vector<std::string> Labeler::summand_labels(const Representation& x) const {
  std::vector<std::string> out;
  for (const auto& s : decompose_full(x)) out.push_back(label(s.module));
  sort_labels(out);
  return out;
}

std::string Labeler::module_label(const Representation& x) const {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& l : summand_labels(x)) s += l;
  return s;
}

std::optional<Representation> Labeler::resolve(const std::string& label) const {
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& e : registry_)
    if (e.label == label) return e.module;
  return std::nullopt;
}

}  // namespace tautri
