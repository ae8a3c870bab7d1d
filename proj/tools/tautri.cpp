// tautri: command-line front end.
//
// exit codes: 0 ok, 1 unexpected error, 2 bad input, 3 budget exceeded,
// 4 split not triangular, 5 sweep verification mismatch, 6 oracle mismatch.

#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "tautri/io.hpp"

using namespace tautri;

namespace {

struct Exit {
  int code;
  std::string message;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Exit{2, "cannot write '" + path + "'"};
  out << text;
}

std::optional<std::uint32_t> field_opt(long field) {
  if (field <= 0) return std::nullopt;
  return static_cast<std::uint32_t>(field);
}

void algebra_info(const AlgebraPtr& alg) {
  const auto& q = alg->quiver();
  std::cout << "algebra " << (alg->name().empty() ? "(unnamed)" : alg->name()) << "\n";
  std::cout << "field F_" << alg->prime() << "\n";
  std::cout << "vertices";
  for (const auto& v : q.vertices()) std::cout << ' ' << v;
  std::cout << "\narrows";
  for (const auto& a : q.arrows()) std::cout << ' ' << a.name << ':' << q.vertex_name(a.source) << "->" << q.vertex_name(a.target);
  std::cout << "\ndim " << alg->dim() << "\n";
  std::map<std::size_t, std::vector<std::string>> by_degree;
  for (const auto& p : alg->basis()) by_degree[p.length()].push_back(alg->path_string(p));
  for (const auto& [d, paths] : by_degree) {
    std::cout << "degree " << d << ":";
    for (const auto& p : paths) std::cout << ' ' << p;
    std::cout << "\n";
  }
  std::cout << "idempotents";
  for (std::size_t v = 0; v < alg->num_vertices(); ++v) std::cout << ' ' << alg->path_string(alg->basis_path(alg->idempotent(static_cast<int>(v))));
  std::cout << "\n";
}

int stt_enumerate(const AlgebraPtr& alg, const std::string& dot, const std::string& json_out, bool oracle, std::size_t cap) {
  Labeler lab(alg);
  SttPoset poset = enumerate_stt(alg, lab, node_budget_from_env());
  std::cout << "nodes " << poset.nodes.size() << "\n";
  for (const auto& n : poset.nodes) std::cout << "  " << n.label << "\n";
  std::cout << "edges " << poset.edges.size() << "\n";
  for (auto [a, b] : poset.edges) std::cout << "  " << poset.nodes[a].label << " -> " << poset.nodes[b].label << "\n";
  if (!dot.empty()) write_file(dot, io::poset_to_dot(poset));
  if (!json_out.empty()) write_file(json_out, io::poset_to_json(poset).dump(2) + "\n");
  if (oracle) {
    std::set<std::string> want, got;
    for (const auto& n : poset.nodes) want.insert(n.label);
    for (const auto& p : oracle_stt(alg, std::vector<std::size_t>(alg->num_vertices(), cap))) got.insert(pair_label(lab, p));
    if (want != got) {
      std::cout << "oracle mismatch: enumeration " << want.size() << ", oracle " << got.size() << "\n";
      for (const auto& l : want)
        if (!got.count(l)) std::cout << "  only enumerated " << l << "\n";
      for (const auto& l : got)
        if (!want.count(l)) std::cout << "  only oracle " << l << "\n";
      return 6;
    }
    std::cout << "oracle agrees (" << got.size() << " pairs)\n";
  }
  return 0;
}

int tri_sweep(const AlgebraPtr& alg, const std::string& split, const std::string& json_out, bool verify) {
  auto [a, b] = io::parse_split(split, *alg);
  TriSplit s;
  try {
    s = triangular_split(alg, a, b);
  } catch (const AlgebraError& e) {
    const std::string msg = e.what();
    throw Exit{msg.rfind("not triangular", 0) == 0 ? 4 : 2, msg};
  }
  TripleLabeler tl(s);
  const std::size_t budget = node_budget_from_env();
  SttPoset lp = enumerate_stt(s.Lambda, tl.lambda_labeler(), budget);
  SttPoset gp = enumerate_stt(s.Gamma, tl.gamma_labeler(), budget);
  auto rows = sweep_lifts(s, lp, gp, tl, verify);

  std::size_t passing = 0;
  std::vector<const SweepRow*> mismatches;
  std::string last_x;
  for (const auto& r : rows) {
    if (r.x_label != last_x) {
      std::cout << "X " << r.x_label << "\n";
      last_x = r.x_label;
    }
    std::cout << "  Y " << r.y_label;
    if (r.check.verdict) {
      ++passing;
      std::cout << "  pass  " << r.lift_label << "\n";
    } else {
      std::cout << "  fail";
      for (std::size_t i = 0; i < r.check.failing.size(); ++i) std::cout << (i ? "," : " ") << r.check.failing[i];
      std::cout << "\n";
    }
    if (r.direct && *r.direct != r.check.verdict) mismatches.push_back(&r);
  }
  std::cout << "passing " << passing << " of " << rows.size() << "\n";
  if (!json_out.empty()) write_file(json_out, io::sweep_to_json(rows).dump(2) + "\n");
  if (verify) {
    if (!mismatches.empty()) {
      for (const auto* r : mismatches)
        std::cout << "mismatch " << r->x_label << " " << r->y_label << ": check " << r->check.verdict << ", direct "
                  << *r->direct << "\n";
      return 5;
    }
    std::cout << "verified " << rows.size() << " pairs over " << (alg->name().empty() ? "R" : alg->name()) << "\n";
  }
  return 0;
}

int module_cmd(const AlgebraPtr& alg, const std::string& spec, const std::string& predicate) {
  Labeler lab(alg);
  Representation m = io::parse_module(spec, lab);
  if (predicate.empty()) {
    std::cout << "tau = " << lab.module_label(tau(m)) << "\n";
    return 0;
  }
  bool verdict = false;
  if (predicate == "tau-rigid") {
    verdict = is_tau_rigid(m);
  } else if (predicate == "stt") {
    auto pair = is_support_tau_tilting(m);
    verdict = pair.has_value();
    if (pair) std::cout << "pair " << pair_label(lab, *pair) << "\n";
  } else {
    verdict = is_tilting(m);
  }
  std::cout << predicate << ": " << (verdict ? "yes" : "no") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tau-tilting workbench for triangular matrix algebras"};
  app.require_subcommand(1);
  long field = 0;
  app.add_option("--field", field, "override the field characteristic (a prime)");

  auto* algebra = app.add_subcommand("algebra", "inspect an algebra file");
  algebra->require_subcommand(1);
  std::string file;
  auto* info = algebra->add_subcommand("info", "dimension, basis paths by degree, idempotents");
  info->add_option("file", file)->required();
  auto* dump = algebra->add_subcommand("dump", "print the file in normalized form");
  dump->add_option("file", file)->required();

  auto* stt = app.add_subcommand("stt", "support tau-tilting pairs");
  stt->require_subcommand(1);
  auto* enumerate = stt->add_subcommand("enumerate", "all pairs and the Hasse quiver");
  enumerate->add_option("file", file)->required();
  std::string dot, json_out;
  bool oracle = false;
  std::size_t cap = 1;
  enumerate->add_option("--dot", dot, "write the Hasse quiver as DOT");
  enumerate->add_option("--json", json_out, "write the poset as JSON");
  enumerate->add_flag("--oracle", oracle, "cross-check against brute force");
  enumerate->add_option("--cap", cap, "oracle dimension bound per vertex")->check(CLI::PositiveNumber);

  auto* tri = app.add_subcommand("tri", "triangular splits");
  tri->require_subcommand(1);
  auto* sweep = tri->add_subcommand("sweep", "lift every pair of corner pairs");
  sweep->add_option("file", file)->required();
  std::string split;
  bool verify = false;
  sweep->add_option("--split", split, "A=<vertices>;B=<vertices>")->required();
  sweep->add_option("--json", json_out, "write the table as JSON");
  sweep->add_flag("--verify", verify, "recheck every pair directly over R");

  auto* module = app.add_subcommand("module", "single modules");
  module->require_subcommand(1);
  std::string spec, predicate;
  auto* tau_cmd = module->add_subcommand("tau", "the AR translate");
  tau_cmd->add_option("file", file)->required();
  tau_cmd->add_option("--module", spec, "P1+S1 or a JSON literal")->required();
  auto* check = module->add_subcommand("check", "evaluate a predicate");
  check->add_option("file", file)->required();
  check->add_option("--module", spec, "P1+S1 or a JSON literal")->required();
  check->add_option("--predicate", predicate)->required()->check(CLI::IsMember({"tau-rigid", "stt", "tilting"}));

  app.fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    AlgebraPtr alg = io::load_algebra(file, field_opt(field));
    if (info->parsed()) {
      algebra_info(alg);
      return 0;
    }
    if (dump->parsed()) {
      std::cout << io::algebra_to_json(*alg).dump(2) << "\n";
      return 0;
    }
    if (enumerate->parsed()) return stt_enumerate(alg, dot, json_out, oracle, cap);
    if (sweep->parsed()) return tri_sweep(alg, split, json_out, verify);
    if (tau_cmd->parsed()) return module_cmd(alg, spec, "");
    if (check->parsed()) return module_cmd(alg, spec, predicate);
  } catch (const Exit& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const io::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const AlgebraError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ModuleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SearchTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
