#include "tautri/tau.hpp"

#include <stdexcept>

namespace tautri {

Morphism nakayama(const ProjMap& p) {
  const Algebra& alg = *p.alg;
  const int n = static_cast<int>(alg.num_vertices());
  std::vector<int> pos(alg.dim(), -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& b = alg.basis_between(i, j);
      for (std::size_t k = 0; k < b.size(); ++k) pos[b[k]] = static_cast<int>(k);
    }
  std::vector<Representation> srcs, tgts;
  for (int u : p.source) srcs.push_back(injective(p.alg, u));
  for (int t : p.target) tgts.push_back(injective(p.alg, t));
  Morphism f = zero_morphism(direct_sum(p.alg, srcs), direct_sum(p.alg, tgts));
  for (int j = 0; j < n; ++j) {
    std::size_t r0 = 0;
    for (std::size_t s = 0; s < p.target.size(); ++s) {
      const auto& mus = alg.basis_between(j, p.target[s]);
      std::size_t c0 = 0;
      for (std::size_t r = 0; r < p.source.size(); ++r) {
        for (std::size_t m = 0; m < mus.size(); ++m) {
          const Element prod = alg.multiply(Element::basis(mus[m]), p.entries[s][r]);
          for (const auto& [q, c] : prod.terms()) f.maps[j].add_to(r0 + m, c0 + pos[q], c);
        }
        c0 += alg.basis_between(j, p.source[r]).size();
      }
      r0 += mus.size();
    }
  }
  return f;
}

Representation tau(const Representation& x) {
  if (x.is_zero()) return x;
  auto pres = min_proj_presentation(x);
  return kernel(nakayama(pres.p)).module;
}

bool is_tau_rigid(const Representation& x) { return hom_dim(x, tau(x)) == 0; }

std::vector<int> max_annihilating_idempotent(const Representation& x) {
  std::vector<int> out;
  for (std::size_t v = 0; v < x.dims().size(); ++v)
    if (x.dims()[v] == 0) out.push_back(static_cast<int>(v));
  return out;
}

bool is_sincere(const Representation& x) { return max_annihilating_idempotent(x).empty(); }

std::optional<SttPair> is_support_tau_tilting(const Representation& x) {
  if (!is_tau_rigid(x)) return std::nullopt;
  auto e = max_annihilating_idempotent(x);
  Representation basic = basic_part(x);
  const std::size_t m = count_summands(basic);
  const std::size_t n = x.algebra().num_vertices();
  if (m + e.size() > n) throw std::logic_error("tau-rigid module violates |M| + |eA| <= |A|");
  if (m + e.size() != n) return std::nullopt;
  return SttPair{std::move(basic), std::move(e)};
}

bool d_sigma_contains(const ProjMap& sigma, const Representation& a) {
  if (sigma.alg.get() != a.algebra_ptr().get()) throw ModuleError("modules over different algebras");
  std::size_t rows = 0, cols = 0;
  for (int u : sigma.source) rows += a.dim(u);
  for (int t : sigma.target) cols += a.dim(t);
  la::Matrix m(rows, cols, a.prime());
  std::size_t r0 = 0;
  for (std::size_t r = 0; r < sigma.source.size(); ++r) {
    std::size_t c0 = 0;
    for (std::size_t s = 0; s < sigma.target.size(); ++s) {
      m.set_block(r0, c0, a.element_action(sigma.entries[s][r], sigma.target[s], sigma.source[r]));
      c0 += a.dim(sigma.target[s]);
    }
    r0 += a.dim(sigma.source[r]);
  }
  return la::rank(m) == rows;
}

bool is_tilting(const Representation& x) {
  auto pair = is_support_tau_tilting(x);
  return pair && pair->support.empty() && proj_dim_le_one(x);
}

}  // namespace tautri
