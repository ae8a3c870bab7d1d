#include "tautri/stt.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <map>
#include <numeric>

namespace tautri {

namespace {

la::Matrix flatten(const Morphism& f) {
  std::size_t n = 0;
  for (const auto& m : f.maps) n += m.rows() * m.cols();
  la::Matrix row(1, n, f.source.prime());
  std::size_t k = 0;
  for (const auto& m : f.maps)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) row.set_raw(0, k++, m(r, c));
  return row;
}

std::size_t span_rank(const std::vector<Morphism>& fs, std::size_t width, std::uint32_t p) {
  la::Matrix rows(0, width, p);
  for (const auto& f : fs) rows = la::vstack(rows, flatten(f));
  return la::rank(rows);
}

int top_vertex(const Representation& indecomposable_projective) {
  auto top = top_dims(indecomposable_projective);
  for (std::size_t v = 0; v < top.size(); ++v)
    if (top[v]) return static_cast<int>(v);
  throw ModuleError("zero module has no top");
}

// Index of the summand of `parts` isomorphic to x.
std::optional<std::size_t> find_iso(const std::vector<Representation>& parts, const Representation& x) {
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].dims() == x.dims() && is_isomorphic(parts[i], x)) return i;
  return std::nullopt;
}

struct Exchange {
  SttPair pair;
  Representation summand;
};

}  // namespace

std::vector<Representation> summands(const SttPair& pair) {
  std::vector<Representation> out;
  for (auto& [m, mult] : decompose(pair.module)) out.push_back(m);
  return out;
}

Morphism left_approximation(const Representation& x, const std::vector<Representation>& u) {
  const std::uint32_t p = x.prime();
  std::vector<std::size_t> comp_target;
  std::vector<Morphism> comps;
  std::vector<std::size_t> hom_x_u(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto h = hom_space(x, u[i]);
    hom_x_u[i] = h.size();
    for (auto& f : h) {
      comp_target.push_back(i);
      comps.push_back(std::move(f));
    }
  }
  std::vector<std::vector<std::vector<Morphism>>> hom_uu(u.size(), std::vector<std::vector<Morphism>>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) hom_uu[i][j] = hom_space(u[i], u[j]);

  std::vector<char> keep(comps.size(), 1);
  const auto is_approx = [&]() {
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (hom_x_u[i] == 0) continue;
      std::vector<Morphism> images;
      for (std::size_t k = 0; k < comps.size(); ++k) {
        if (!keep[k]) continue;
        for (const auto& h : hom_uu[comp_target[k]][i]) images.push_back(compose(h, comps[k]));
      }
      if (images.empty()) return false;
      if (span_rank(images, flatten(images.front()).cols(), p) != hom_x_u[i]) return false;
    }
    return true;
  };
  for (std::size_t k = comps.size(); k-- > 0;) {
    keep[k] = 0;
    if (!is_approx()) keep[k] = 1;
  }
  std::vector<Representation> targets;
  std::vector<std::vector<Morphism>> blocks;
  for (std::size_t k = 0; k < comps.size(); ++k)
    if (keep[k]) {
      targets.push_back(u[comp_target[k]]);
      blocks.push_back({comps[k]});
    }
  if (targets.empty()) return zero_morphism(x, Representation::zero(x.algebra_ptr()));
  return block_morphism({x}, targets, blocks);
}

SttPair left_mutate(const SttPair& pair, const Representation& summand) {
  auto parts = summands(pair);
  auto idx = find_iso(parts, summand);
  if (!idx) throw std::invalid_argument("summand not a slot of the pair");
  std::vector<Representation> rest;
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (i != *idx) rest.push_back(parts[i]);
  const AlgebraPtr& alg = pair.module.algebra_ptr();
  Representation u = direct_sum(alg, rest);
  if (gen_membership(parts[*idx], u)) throw std::invalid_argument("summand lies in Gen of the other summands");
  Morphism g = left_approximation(parts[*idx], rest);
  Representation c = cokernel(g).module;
  std::vector<Representation> all = rest;
  all.push_back(c);
  Representation next = basic_part(direct_sum(alg, all));
  if (count_summands(next) == rest.size() + 1) return SttPair{next, pair.support};
  std::vector<int> candidates;
  for (int v = 0; v < static_cast<int>(alg->num_vertices()); ++v)
    if (u.dim(v) == 0 && !std::binary_search(pair.support.begin(), pair.support.end(), v)) candidates.push_back(v);
  if (candidates.size() != 1) throw std::logic_error("mutation: expected exactly one new support vertex");
  std::vector<int> support = pair.support;
  support.push_back(candidates.front());
  std::sort(support.begin(), support.end());
  return SttPair{basic_part(u), support};
}

Representation transpose(const Representation& x) {
  auto op = x.algebra().opposite();
  if (x.is_zero()) return Representation::zero(op);
  auto pres = min_proj_presentation(x);
  ProjMap q{op, pres.p.target, pres.p.source,
            std::vector<std::vector<Element>>(pres.p.source.size(), std::vector<Element>(pres.p.target.size()))};
  for (std::size_t s = 0; s < pres.p.target.size(); ++s)
    for (std::size_t r = 0; r < pres.p.source.size(); ++r)
      q.entries[r][s] = x.algebra().to_opposite(pres.p.entries[s][r], *op);
  return cokernel(to_morphism(q)).module;
}

SttPair dagger(const SttPair& pair) {
  auto op = pair.module.algebra().opposite();
  std::vector<Representation> mods;
  std::vector<int> support;
  for (const auto& x : summands(pair)) {
    if (is_projective(x))
      support.push_back(top_vertex(x));
    else
      mods.push_back(transpose(x));
  }
  for (int v : pair.support) mods.push_back(projective(op, v));
  std::sort(support.begin(), support.end());
  return SttPair{basic_part(direct_sum(op, mods)), support};
}

SttPair mutate(const SttPair& pair, const Slot& slot) {
  auto op = pair.module.algebra().opposite();
  Representation dual_slot;
  if (slot.summand) {
    auto parts = summands(pair);
    auto idx = find_iso(parts, *slot.summand);
    if (!idx) throw std::invalid_argument("summand not a slot of the pair");
    std::vector<Representation> rest;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (i != *idx) rest.push_back(parts[i]);
    if (!gen_membership(parts[*idx], direct_sum(pair.module.algebra_ptr(), rest))) return left_mutate(pair, parts[*idx]);
    dual_slot = transpose(parts[*idx]);
  } else {
    if (!std::binary_search(pair.support.begin(), pair.support.end(), slot.vertex))
      throw std::invalid_argument("vertex not a slot of the pair");
    dual_slot = projective(op, slot.vertex);
  }
  return dagger(left_mutate(dagger(pair), dual_slot));
}

bool gen_leq(const SttPair& p, const SttPair& q) { return gen_membership(p.module, q.module); }

std::string support_label(const Labeler& lab, const std::vector<int>& support) {
  if (support.empty()) return "0";
  std::string s;
  for (int v : support) s += "P" + lab.algebra()->quiver().vertex_name(v);
  return s;
}

std::string pair_label(const Labeler& lab, const SttPair& pair) {
  return "(" + lab.module_label(pair.module) + "|" + support_label(lab, pair.support) + ")";
}

std::optional<std::size_t> SttPoset::find(const std::string& label) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].label == label) return i;
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const std::vector<SttNode>& nodes) {
  const std::size_t n = nodes.size();
  std::vector<char> leq(n * n, 0);
  std::exception_ptr err;
#ifdef TAUTRI_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t k = 0; k < n * n; ++k) {
    try {
      const std::size_t i = k / n, j = k % n;
      leq[k] = i == j ? 1 : static_cast<char>(gen_leq(nodes[i].pair, nodes[j].pair));
    } catch (...) {
#ifdef TAUTRI_HAVE_OPENMP
#pragma omp critical
#endif
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  const auto lt = [&](std::size_t a, std::size_t b) { return a != b && leq[a * n + b]; };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t big = 0; big < n; ++big)
    for (std::size_t small = 0; small < n; ++small) {
      if (!lt(small, big)) continue;
      bool cover = true;
      for (std::size_t mid = 0; mid < n && cover; ++mid)
        if (lt(small, mid) && lt(mid, big)) cover = false;
      if (cover) edges.emplace_back(big, small);
    }
  return edges;
}

std::size_t node_budget_from_env() {
  if (const char* s = std::getenv("TAUTRI_NODE_BUDGET")) {
    try {
      return static_cast<std::size_t>(std::stoull(s));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("TAUTRI_NODE_BUDGET is not a number: ") + s);
    }
  }
  return kDefaultNodeBudget;
}

SttPoset enumerate_stt(const AlgebraPtr& alg, const Labeler& lab, std::size_t node_budget) {
  if (node_budget < 2) throw std::invalid_argument("node budget must be at least 2");
  SttPoset poset;
  poset.alg = alg;
  std::vector<SttNode> nodes;
  std::map<std::string, std::size_t> seen;
  struct RawEdge {
    std::size_t from, to;
    std::string exchanged;
  };
  std::vector<RawEdge> raw;

  const auto add_node = [&](SttPair pair) -> std::size_t {
    SttNode node{std::move(pair), "", {}};
    node.summand_labels = lab.summand_labels(node.pair.module);
    node.label = pair_label(lab, node.pair);
    auto it = seen.find(node.label);
    if (it != seen.end()) return it->second;
    if (nodes.size() >= node_budget)
      throw BudgetExceeded("node budget of " + std::to_string(node_budget) +
                           " exceeded; the algebra may be tau-tilting infinite");
    seen.emplace(node.label, nodes.size());
    nodes.push_back(std::move(node));
    return nodes.size() - 1;
  };

  std::vector<std::size_t> frontier{add_node(SttPair{basic_part(regular_module(alg)), {}})};
  while (!frontier.empty()) {
    std::vector<std::vector<Exchange>> kids(frontier.size());
    std::exception_ptr err;
#ifdef TAUTRI_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      try {
        const SttPair& pair = nodes[frontier[i]].pair;
        auto parts = summands(pair);
        for (std::size_t k = 0; k < parts.size(); ++k) {
          std::vector<Representation> rest;
          for (std::size_t j = 0; j < parts.size(); ++j)
            if (j != k) rest.push_back(parts[j]);
          if (gen_membership(parts[k], direct_sum(alg, rest))) continue;
          kids[i].push_back(Exchange{left_mutate(pair, parts[k]), parts[k]});
        }
      } catch (...) {
#ifdef TAUTRI_HAVE_OPENMP
#pragma omp critical
#endif
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (auto& kid : kids[i]) {
        const std::size_t before = nodes.size();
        const std::size_t to = add_node(std::move(kid.pair));
        if (to == before) next.push_back(to);
        raw.push_back({frontier[i], to, lab.label(kid.summand)});
      }
    frontier = std::move(next);
  }

  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nodes[a].label < nodes[b].label; });
  std::vector<std::size_t> new_index(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_index[order[i]] = i;
    poset.nodes.push_back(std::move(nodes[order[i]]));
  }
  for (auto& e : raw) poset.mutation_edges.push_back({new_index[e.from], new_index[e.to], e.exchanged});
  std::sort(poset.mutation_edges.begin(), poset.mutation_edges.end(),
            [](const MutationEdge& a, const MutationEdge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
  poset.edges = hasse_edges(poset.nodes);
  return poset;
}

// ---------------------------------------------------------------------------
// Oracles

namespace {

bool satisfies_relations(const Algebra& alg, const std::vector<std::size_t>& dims, const std::vector<la::Matrix>& maps) {
  const auto& q = alg.quiver();
  for (const auto& r : alg.relations()) {
    if (r.terms.empty()) continue;
    const int s = q.arrow(*q.arrow_index(r.terms.front().path.front())).source;
    const int t = q.arrow(*q.arrow_index(r.terms.front().path.back())).target;
    la::Matrix total(dims[t], dims[s], alg.prime());
    for (const auto& term : r.terms) {
      la::Matrix m = la::Matrix::identity(dims[s], alg.prime());
      for (const auto& name : term.path) m = maps[*q.arrow_index(name)] * m;
      total = total + la::scale(m, alg.field().reduce(term.coeff));
    }
    if (!total.is_zero()) return false;
  }
  return true;
}

std::vector<la::Matrix> decode(const Algebra& alg, const std::vector<std::size_t>& dims, std::uint64_t code) {
  std::vector<la::Matrix> maps;
  for (const auto& ar : alg.quiver().arrows()) {
    la::Matrix m(dims[ar.target], dims[ar.source], alg.prime());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) {
        m.set_raw(r, c, static_cast<std::uint32_t>(code & 1));
        code >>= 1;
      }
    maps.push_back(std::move(m));
  }
  return maps;
}

template <bool Parallel>
std::vector<Representation> oracle_impl(const AlgebraPtr& alg, const std::vector<std::size_t>& cap,
                                        std::size_t limit) {
  const std::size_t n = alg->num_vertices();
  if (cap.size() != n) throw std::invalid_argument("dimension cap has the wrong length");
  std::vector<std::vector<std::size_t>> dim_vectors;
  std::vector<std::size_t> d(n, 0);
  std::size_t total = 0;
  while (true) {
    std::size_t v = 0;
    while (v < n && d[v] == cap[v]) d[v++] = 0;
    if (v == n) break;
    ++d[v];
    std::size_t entries = 0;
    for (const auto& ar : alg->quiver().arrows()) entries += d[ar.target] * d[ar.source];
    if (entries >= 63 || (total += std::size_t{1} << entries) > limit)
      throw SearchTooLarge("search space too large");
    dim_vectors.push_back(d);
  }
  std::sort(dim_vectors.begin(), dim_vectors.end());

  std::vector<Representation> found;
  for (const auto& dims : dim_vectors) {
    std::size_t entries = 0;
    for (const auto& ar : alg->quiver().arrows()) entries += dims[ar.target] * dims[ar.source];
    const std::uint64_t count = std::uint64_t{1} << entries;
    std::vector<char> keep(count, 0);
    std::exception_ptr err;
#ifdef TAUTRI_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (Parallel)
#endif
    for (std::uint64_t code = 0; code < count; ++code) {
      try {
        auto maps = decode(*alg, dims, code);
        if (!satisfies_relations(*alg, dims, maps)) continue;
        keep[code] = static_cast<char>(is_indecomposable(Representation(alg, dims, std::move(maps))));
      } catch (...) {
#ifdef TAUTRI_HAVE_OPENMP
#pragma omp critical
#endif
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    const std::size_t first = found.size();
    for (std::uint64_t code = 0; code < count; ++code) {
      if (!keep[code]) continue;
      Representation m(alg, dims, decode(*alg, dims, code));
      bool dup = false;
      for (std::size_t i = first; i < found.size() && !dup; ++i) dup = is_isomorphic(found[i], m);
      if (!dup) found.push_back(std::move(m));
    }
  }
  return found;
}

}  // namespace

std::vector<Representation> oracle_indecomposables(const AlgebraPtr& alg, const std::vector<std::size_t>& cap,
                                                   std::size_t search_limit) {
  return oracle_impl<true>(alg, cap, search_limit);
}

std::vector<Representation> oracle_indecomposables_serial(const AlgebraPtr& alg, const std::vector<std::size_t>& cap,
                                                          std::size_t search_limit) {
  return oracle_impl<false>(alg, cap, search_limit);
}

std::vector<SttPair> oracle_stt(const AlgebraPtr& alg, const std::vector<std::size_t>& cap, std::size_t search_limit) {
  auto ind = oracle_indecomposables(alg, cap, search_limit);
  const std::size_t m = ind.size();
  const std::size_t n = alg->num_vertices();
  std::vector<Representation> taus(m);
  std::vector<char> rigid(m, 0), compat(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    taus[i] = tau(ind[i]);
    rigid[i] = hom_dim(ind[i], taus[i]) == 0;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      compat[i * m + j] = rigid[i] && rigid[j] && hom_dim(ind[i], taus[j]) == 0 && hom_dim(ind[j], taus[i]) == 0;

  std::vector<SttPair> out;
  std::vector<std::size_t> chosen;
  const auto emit = [&]() {
    std::vector<int> zero_vertices;
    for (std::size_t v = 0; v < n; ++v) {
      bool all_zero = true;
      for (auto i : chosen) all_zero = all_zero && ind[i].dim(static_cast<int>(v)) == 0;
      if (all_zero) zero_vertices.push_back(static_cast<int>(v));
    }
    if (chosen.size() + zero_vertices.size() != n) return;
    std::vector<Representation> parts;
    for (auto i : chosen) parts.push_back(ind[i]);
    Representation mod = direct_sum(alg, parts);
    auto confirmed = is_support_tau_tilting(mod);
    if (!confirmed || confirmed->support != zero_vertices)
      throw std::logic_error("oracle: pairwise-compatible set failed the definition check");
    out.push_back(SttPair{mod, zero_vertices});
  };
  const auto extend = [&](auto&& self, std::size_t start) -> void {
    emit();
    if (chosen.size() == n) return;
    for (std::size_t i = start; i < m; ++i) {
      if (!rigid[i]) continue;
      bool ok = true;
      for (auto j : chosen) ok = ok && compat[i * m + j];
      if (!ok) continue;
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  extend(extend, 0);
  return out;
}

}  // namespace tautri
