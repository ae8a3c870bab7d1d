#include "tautri/tri.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

namespace tautri {

namespace {

void require_alg(const Representation& x, const AlgebraPtr& alg, const char* what) {
  if (x.algebra_ptr().get() != alg.get()) throw ModuleError(std::string("module is not over ") + what);
}

// position of each M basis index inside its m_between(j, a) list
std::vector<std::size_t> m_positions(const TriSplit& s) {
  std::vector<std::size_t> pos(s.dim_M(), 0);
  for (int j = 0; j < static_cast<int>(s.B.size()); ++j)
    for (int a = 0; a < static_cast<int>(s.A.size()); ++a) {
      auto ms = s.m_between(j, a);
      for (std::size_t i = 0; i < ms.size(); ++i) pos[ms[i]] = i;
    }
  return pos;
}

struct TensorData {
  Presentation pres;
  Morphism qm;          // Q1 (x) M -> Q0 (x) M
  QuotientModule coker;  // Y (x) M with the projection from Q0 (x) M
};

TensorData tensor_data(const Representation& y, const TriSplit& s) {
  require_alg(y, s.Gamma, "Gamma");
  TensorData d{min_proj_presentation(y), {}, {}};
  d.qm = tensor_proj_map(d.pres.p, s);
  d.coker = cokernel(d.qm);
  return d;
}

ProjMap map_to_R(const ProjMap& p, const TriSplit& s, const std::vector<int>& vertex_in_R, bool gamma) {
  ProjMap out{s.R, {}, {}, {}};
  for (int u : p.source) out.source.push_back(vertex_in_R[u]);
  for (int t : p.target) out.target.push_back(vertex_in_R[t]);
  out.entries.assign(p.target.size(), std::vector<Element>(p.source.size()));
  for (std::size_t t = 0; t < p.target.size(); ++t)
    for (std::size_t r = 0; r < p.source.size(); ++r)
      out.entries[t][r] = gamma ? s.gamma_to_R(p.entries[t][r]) : s.lambda_to_R(p.entries[t][r]);
  return out;
}

std::vector<int> vertex_side(const TriSplit& s) {
  std::vector<int> side(s.R->num_vertices(), 0);
  for (int v : s.B) side[v] = 1;
  return side;
}

la::Matrix right_inverse(const la::Matrix& p) {
  auto sec = la::solve(p, la::Matrix::identity(p.rows(), p.prime()));
  if (!sec) throw std::logic_error("projection is not surjective");
  return *sec;
}

}  // namespace

Representation m_row_module(const TriSplit& s, int j) {
  const Algebra& lam = *s.Lambda;
  const auto pos = m_positions(s);
  std::vector<std::size_t> dims;
  for (int a = 0; a < static_cast<int>(s.A.size()); ++a) dims.push_back(s.m_between(j, a).size());
  std::vector<la::Matrix> maps;
  for (int l = 0; l < static_cast<int>(lam.quiver().num_arrows()); ++l) {
    const auto& arr = lam.quiver().arrow(l);
    la::Matrix m(dims[arr.target], dims[arr.source], lam.prime());
    auto src = s.m_between(j, arr.source);
    for (std::size_t c = 0; c < src.size(); ++c)
      for (const auto& [q, coeff] : s.right_action[src[c]][lam.arrow_basis(l)].terms()) m.set_raw(pos[q], c, coeff);
    maps.push_back(std::move(m));
  }
  return Representation(s.Lambda, std::move(dims), std::move(maps));
}

Representation right_M_module(const TriSplit& s) {
  std::vector<Representation> parts;
  for (int j = 0; j < static_cast<int>(s.B.size()); ++j) parts.push_back(m_row_module(s, j));
  return direct_sum(s.Lambda, parts);
}

Representation left_M_module(const TriSplit& s) {
  const Algebra& gam = *s.Gamma;
  AlgebraPtr op = gam.opposite();
  const int nb = static_cast<int>(s.B.size());
  std::vector<std::vector<int>> rows(nb);
  std::vector<std::size_t> pos(s.dim_M(), 0);
  for (std::size_t m = 0; m < s.dim_M(); ++m) {
    pos[m] = rows[s.m_source[m]].size();
    rows[s.m_source[m]].push_back(static_cast<int>(m));
  }
  std::vector<std::size_t> dims;
  for (const auto& r : rows) dims.push_back(r.size());
  std::vector<la::Matrix> maps(op->quiver().num_arrows());
  for (int a = 0; a < static_cast<int>(op->quiver().num_arrows()); ++a) {
    const auto& oa = op->quiver().arrow(a);
    const int g = gam.arrow_basis(*gam.quiver().arrow_index(oa.name));
    la::Matrix m(dims[oa.target], dims[oa.source], gam.prime());
    for (std::size_t c = 0; c < rows[oa.source].size(); ++c)
      for (const auto& [q, coeff] : s.left_action[g][rows[oa.source][c]].terms()) m.set_raw(pos[q], c, coeff);
    maps[a] = std::move(m);
  }
  return Representation(op, std::move(dims), std::move(maps));
}

Morphism tensor_proj_map(const ProjMap& q, const TriSplit& s) {
  if (q.alg.get() != s.Gamma.get()) throw ModuleError("map is not over Gamma");
  const auto pos = m_positions(s);
  std::vector<Representation> srcs, tgts;
  for (int u : q.source) srcs.push_back(m_row_module(s, u));
  for (int t : q.target) tgts.push_back(m_row_module(s, t));
  Morphism f = zero_morphism(direct_sum(s.Lambda, srcs), direct_sum(s.Lambda, tgts));
  for (int a = 0; a < static_cast<int>(s.A.size()); ++a) {
    std::size_t r0 = 0;
    for (std::size_t t = 0; t < q.target.size(); ++t) {
      std::size_t c0 = 0;
      for (std::size_t r = 0; r < q.source.size(); ++r) {
        auto src = s.m_between(q.source[r], a);
        for (std::size_t c = 0; c < src.size(); ++c)
          for (const auto& [g, gc] : q.entries[t][r].terms())
            for (const auto& [m, mc] : s.left_action[g][src[c]].terms())
              f.maps[a].add_to(r0 + pos[m], c0 + c, s.Lambda->field().mul(gc, mc));
        c0 += src.size();
      }
      r0 += s.m_between(q.target[t], a).size();
    }
  }
  return f;
}

Representation tensor_with_M(const Representation& y, const TriSplit& s) {
  require_alg(y, s.Gamma, "Gamma");
  if (y.is_zero()) return Representation::zero(s.Lambda);
  return tensor_data(y, s).coker.module;
}

Representation restrict_to_lambda(const Representation& z, const TriSplit& s) {
  require_alg(z, s.R, "R");
  std::vector<std::size_t> dims;
  for (int v : s.A) dims.push_back(z.dim(v));
  std::vector<la::Matrix> maps;
  for (int a : s.lambda_arrow_in_R) maps.push_back(z.arrow_map(a));
  return Representation(s.Lambda, std::move(dims), std::move(maps));
}

Representation restrict_to_gamma(const Representation& z, const TriSplit& s) {
  require_alg(z, s.R, "R");
  std::vector<std::size_t> dims;
  for (int v : s.B) dims.push_back(z.dim(v));
  std::vector<la::Matrix> maps;
  for (int a : s.gamma_arrow_in_R) maps.push_back(z.arrow_map(a));
  return Representation(s.Gamma, std::move(dims), std::move(maps));
}

Representation extend_by_zero(const Representation& x, const TriSplit& s) {
  require_alg(x, s.Lambda, "Lambda");
  const Algebra& R = *s.R;
  std::vector<std::size_t> dims(R.num_vertices(), 0);
  for (std::size_t k = 0; k < s.A.size(); ++k) dims[s.A[k]] = x.dim(static_cast<int>(k));
  std::vector<la::Matrix> maps;
  for (const auto& a : R.quiver().arrows()) maps.emplace_back(dims[a.target], dims[a.source], R.prime());
  for (std::size_t l = 0; l < s.lambda_arrow_in_R.size(); ++l) maps[s.lambda_arrow_in_R[l]] = x.arrow_map(static_cast<int>(l));
  return Representation(s.R, std::move(dims), std::move(maps));
}

ProjMap lambda_map_to_R(const ProjMap& p, const TriSplit& s) {
  if (p.alg.get() != s.Lambda.get()) throw ModuleError("map is not over Lambda");
  return map_to_R(p, s, s.A, false);
}

ProjMap gamma_map_to_R(const ProjMap& q, const TriSplit& s) {
  if (q.alg.get() != s.Gamma.get()) throw ModuleError("map is not over Gamma");
  return map_to_R(q, s, s.B, true);
}

ProjMap proj_map_sum(const ProjMap& a, const ProjMap& b) {
  if (a.alg.get() != b.alg.get()) throw ModuleError("maps over different algebras");
  ProjMap out{a.alg, a.source, a.target, {}};
  out.source.insert(out.source.end(), b.source.begin(), b.source.end());
  out.target.insert(out.target.end(), b.target.begin(), b.target.end());
  out.entries.assign(out.target.size(), std::vector<Element>(out.source.size()));
  for (std::size_t t = 0; t < a.target.size(); ++t)
    for (std::size_t r = 0; r < a.source.size(); ++r) out.entries[t][r] = a.entries[t][r];
  for (std::size_t t = 0; t < b.target.size(); ++t)
    for (std::size_t r = 0; r < b.source.size(); ++r)
      out.entries[a.target.size() + t][a.source.size() + r] = b.entries[t][r];
  return out;
}

ProjMap lift_presentation(const Representation& x, const Representation& y, const TriSplit& s) {
  require_alg(x, s.Lambda, "Lambda");
  require_alg(y, s.Gamma, "Gamma");
  return proj_map_sum(lambda_map_to_R(min_proj_presentation(x).p, s), gamma_map_to_R(min_proj_presentation(y).p, s));
}

Representation lift(const Representation& x, const Representation& y, const TriSplit& s) {
  require_alg(x, s.Lambda, "Lambda");
  require_alg(y, s.Gamma, "Gamma");
  Representation top = extend_by_zero(x, s);
  if (y.is_zero()) return top;
  Representation rest = cokernel(to_morphism(gamma_map_to_R(min_proj_presentation(y).p, s))).module;
  return direct_sum(s.R, {top, rest});
}

Triple rep_to_triple(const Representation& z, const TriSplit& s) {
  Triple t{restrict_to_lambda(z, s), restrict_to_gamma(z, s), {}};
  if (t.Y.is_zero()) {
    t.f = zero_morphism(Representation::zero(s.Lambda), t.X);
    return t;
  }
  TensorData d = tensor_data(t.Y, s);
  const auto& v0 = d.pres.p.target;
  t.f = zero_morphism(d.coker.module, t.X);
  for (int a = 0; a < static_cast<int>(s.A.size()); ++a) {
    const std::size_t rows = t.X.dim(a);
    la::Matrix phi(rows, d.qm.target.dim(a), z.prime());
    std::size_t c0 = 0;
    for (std::size_t r = 0; r < v0.size(); ++r) {
      la::Matrix y_r = d.pres.cover.maps[v0[r]].column(generator_column(*s.Gamma, v0, r));
      auto ms = s.m_between(v0[r], a);
      for (std::size_t i = 0; i < ms.size(); ++i) phi.set_block(0, c0 + i, z.path_action(s.m_basis[ms[i]]) * y_r);
      c0 += ms.size();
    }
    if (d.coker.module.dim(a) > 0 && rows > 0) t.f.maps[a] = phi * right_inverse(d.coker.projection.maps[a]);
  }
  return t;
}

Representation triple_to_rep(const Triple& t, const TriSplit& s) {
  require_alg(t.X, s.Lambda, "Lambda");
  require_alg(t.Y, s.Gamma, "Gamma");
  const Algebra& R = *s.R;
  const auto side = vertex_side(s);
  std::vector<int> local(R.num_vertices(), 0);
  for (std::size_t k = 0; k < s.A.size(); ++k) local[s.A[k]] = static_cast<int>(k);
  for (std::size_t k = 0; k < s.B.size(); ++k) local[s.B[k]] = static_cast<int>(k);
  std::vector<std::size_t> dims(R.num_vertices());
  for (std::size_t v = 0; v < dims.size(); ++v) dims[v] = side[v] ? t.Y.dim(local[v]) : t.X.dim(local[v]);
  std::vector<la::Matrix> maps;
  for (const auto& a : R.quiver().arrows()) maps.emplace_back(dims[a.target], dims[a.source], R.prime());
  for (std::size_t l = 0; l < s.lambda_arrow_in_R.size(); ++l) maps[s.lambda_arrow_in_R[l]] = t.X.arrow_map(static_cast<int>(l));
  for (std::size_t g = 0; g < s.gamma_arrow_in_R.size(); ++g) maps[s.gamma_arrow_in_R[g]] = t.Y.arrow_map(static_cast<int>(g));

  std::optional<TensorData> d;
  if (!t.Y.is_zero()) d = tensor_data(t.Y, s);
  for (int c = 0; c < static_cast<int>(R.quiver().num_arrows()); ++c) {
    const auto& arr = R.quiver().arrow(c);
    if (!(side[arr.source] == 1 && side[arr.target] == 0)) continue;
    if (!d || t.X.is_zero()) continue;
    const int j = local[arr.source], a = local[arr.target];
    if (t.Y.dim(j) == 0) continue;
    const int mc = static_cast<int>(std::find(s.m_basis.begin(), s.m_basis.end(), R.arrow_basis(c)) - s.m_basis.begin());
    const auto pos = m_positions(s);
    const auto& v0 = d->pres.p.target;
    // Q0 at j -> Q0 (x) M at a, z |-> z (x) c
    la::Matrix lc(d->qm.target.dim(a), d->pres.P0.dim(j), R.prime());
    std::size_t r0 = 0, c0 = 0;
    for (std::size_t r = 0; r < v0.size(); ++r) {
      const auto& paths = s.Gamma->basis_between(v0[r], j);
      for (std::size_t i = 0; i < paths.size(); ++i)
        for (const auto& [m, coeff] : s.left_action[paths[i]][mc].terms()) lc.add_to(r0 + pos[m], c0 + i, coeff);
      r0 += s.m_between(v0[r], a).size();
      c0 += paths.size();
    }
    la::Matrix lift_y = *la::solve(d->pres.cover.maps[j], la::Matrix::identity(t.Y.dim(j), R.prime()));
    maps[c] = t.f.maps[a] * d->coker.projection.maps[a] * lc * lift_y;
  }
  return Representation(s.R, std::move(dims), std::move(maps));
}

LiftCheck check_lift_stt(const Representation& x, const Representation& y, const TriSplit& s) {
  LiftCheck out;
  if (!is_support_tau_tilting(x)) out.failing.push_back(1);
  if (!is_support_tau_tilting(y)) out.failing.push_back(2);
  Representation ym = tensor_with_M(y, s);
  if (hom_dim(ym, tau(x)) != 0) out.failing.push_back(3);
  for (int v : max_annihilating_idempotent(x))
    if (ym.dim(v) != 0) {
      out.failing.push_back(4);
      break;
    }
  out.verdict = out.failing.empty();
  return out;
}

bool check_lift_tau_rigid(const Representation& x, const Representation& y, const TriSplit& s) {
  return is_tau_rigid(x) && is_tau_rigid(y) && hom_dim(tensor_with_M(y, s), tau(x)) == 0;
}

TiltingCheck check_lift_tilting(const Representation& x, const Representation& y, const TriSplit& s) {
  TiltingCheck out;
  Representation z = lift(x, y, s);
  out.verdict = is_tilting(z);
  out.components = is_tilting(x) && is_tilting(y) && gen_membership(tensor_with_M(y, s), x) && proj_dim_le_one(z);
  out.left_M_projective = is_projective(left_M_module(s));
  out.sigma_Y_tensor_monic = y.is_zero() || tensor_proj_map(min_proj_presentation(y).p, s).is_injective();
  if (out.left_M_projective && out.components != out.verdict)
    throw std::logic_error("tilting routes disagree although M is projective over Gamma");
  return out;
}

TripleLabeler::TripleLabeler(const TriSplit& s) : split_(s), lambda_(s.Lambda), gamma_(s.Gamma) {}

TripleLabeler::Key TripleLabeler::key(const Representation& z) const {
  Key k;
  for (const auto& l : gamma_.summand_labels(restrict_to_gamma(z, split_))) k.first.push_back(gamma_.key(l));
  for (const auto& l : lambda_.summand_labels(restrict_to_lambda(z, split_))) k.second.push_back(lambda_.key(l));
  return k;
}

std::string TripleLabeler::summand_label(const Representation& z) const {
  return "(" + lambda_.module_label(restrict_to_lambda(z, split_)) + "," +
         gamma_.module_label(restrict_to_gamma(z, split_)) + ")";
}

std::vector<std::string> TripleLabeler::summand_labels(const Representation& z) const {
  std::vector<std::pair<Key, std::string>> parts;
  for (const auto& p : decompose_full(z)) parts.emplace_back(key(p.module), summand_label(p.module));
  std::stable_sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  for (auto& p : parts) out.push_back(std::move(p.second));
  return out;
}

std::string TripleLabeler::label(const Representation& z) const {
  if (z.is_zero()) return "0";
  std::string out;
  for (const auto& l : summand_labels(z)) out += l;
  return out;
}

namespace {

struct SweepWork {
  LiftCheck check;
  Representation lifted;
  std::optional<bool> direct;
};

SweepWork sweep_one(const TriSplit& s, const SttNode& xn, const SttNode& yn, bool verify) {
  SweepWork w;
  w.check = check_lift_stt(xn.pair.module, yn.pair.module, s);
  if (w.check.verdict || verify) w.lifted = lift(xn.pair.module, yn.pair.module, s);
  if (verify) w.direct = is_support_tau_tilting(w.lifted).has_value();
  return w;
}

template <bool Parallel>
std::vector<SweepRow> sweep_impl(const TriSplit& s, const SttPoset& xp, const SttPoset& yp, const TripleLabeler& lab,
                                 bool verify) {
  const std::size_t nx = xp.nodes.size(), ny = yp.nodes.size();
  const long total = static_cast<long>(nx * ny);
  std::vector<SweepWork> work(nx * ny);
  if constexpr (Parallel) {
    std::exception_ptr err;
#ifdef TAUTRI_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < total; ++i) {
      try {
        work[i] = sweep_one(s, xp.nodes[i / ny], yp.nodes[i % ny], verify);
      } catch (...) {
#ifdef TAUTRI_HAVE_OPENMP
#pragma omp critical
#endif
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (long i = 0; i < total; ++i) work[i] = sweep_one(s, xp.nodes[i / ny], yp.nodes[i % ny], verify);
  }
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < work.size(); ++i) {
    SweepRow r{xp.nodes[i / ny].label, yp.nodes[i % ny].label, work[i].check, "", work[i].direct};
    if (r.check.verdict) r.lift_label = lab.label(work[i].lifted);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> sweep_lifts(const TriSplit& s, const SttPoset& lambda_poset, const SttPoset& gamma_poset,
                                  const TripleLabeler& lab, bool verify) {
  return sweep_impl<true>(s, lambda_poset, gamma_poset, lab, verify);
}

std::vector<SweepRow> sweep_lifts_serial(const TriSplit& s, const SttPoset& lambda_poset,
                                         const SttPoset& gamma_poset, const TripleLabeler& lab, bool verify) {
  return sweep_impl<false>(s, lambda_poset, gamma_poset, lab, verify);
}

}  // namespace tautri
