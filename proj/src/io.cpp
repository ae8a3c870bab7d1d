#include "tautri/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace tautri::io {

using nlohmann::json;

namespace {

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw FormatError(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw FormatError("unknown key '" + k + "' in " + where);
}

const json& need(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw FormatError("missing key '" + key + "' in " + where);
  return obj.at(key);
}

std::string need_string(const json& v, const std::string& what) {
  if (!v.is_string()) throw FormatError(what + " must be a string");
  return v.get<std::string>();
}

std::int64_t need_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw FormatError(what + " must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

AlgebraPtr algebra_from_json(const json& doc, std::optional<std::uint32_t> field) {
  only_keys(doc, {"name", "field", "vertices", "arrows", "relations", "max_path_length"}, "algebra");
  std::string name = doc.contains("name") ? need_string(doc.at("name"), "name") : "";
  std::int64_t p = doc.contains("field") ? need_int(doc.at("field"), "field") : la::kDefaultPrime;
  if (field) p = *field;
  if (p < 2 || p >= (std::int64_t{1} << 31) || !la::is_prime(static_cast<std::uint32_t>(p)))
    throw FormatError("field characteristic " + std::to_string(p) + " is not a prime below 2^31");
  std::int64_t maxlen = doc.contains("max_path_length") ? need_int(doc.at("max_path_length"), "max_path_length")
                                                         : static_cast<std::int64_t>(Algebra::kDefaultMaxPathLength);
  if (maxlen < 1) throw FormatError("max_path_length must be positive");

  const json& vs = need(doc, "vertices", "algebra");
  if (!vs.is_array() || vs.empty()) throw FormatError("vertices must be a non-empty array");
  std::vector<std::string> vertices;
  for (const auto& v : vs) vertices.push_back(need_string(v, "vertex name"));
  const auto vertex = [&](const json& v) {
    std::string n = need_string(v, "arrow endpoint");
    auto it = std::find(vertices.begin(), vertices.end(), n);
    if (it == vertices.end()) throw FormatError("unknown vertex '" + n + "'");
    return static_cast<int>(it - vertices.begin());
  };

  std::vector<Arrow> arrows;
  if (doc.contains("arrows")) {
    if (!doc.at("arrows").is_array()) throw FormatError("arrows must be an array");
    for (const auto& a : doc.at("arrows")) {
      only_keys(a, {"name", "from", "to"}, "arrow");
      arrows.push_back({need_string(need(a, "name", "arrow"), "arrow name"), vertex(need(a, "from", "arrow")),
                        vertex(need(a, "to", "arrow"))});
    }
  }
  std::vector<Relation> rels;
  if (doc.contains("relations")) {
    if (!doc.at("relations").is_array()) throw FormatError("relations must be an array");
    for (const auto& r : doc.at("relations")) {
      if (!r.is_array() || r.empty()) throw FormatError("a relation must be a non-empty array of terms");
      Relation rel;
      for (const auto& t : r) {
        only_keys(t, {"coeff", "path"}, "relation term");
        Term term;
        term.coeff = need_int(need(t, "coeff", "relation term"), "coeff");
        const json& path = need(t, "path", "relation term");
        if (!path.is_array()) throw FormatError("path must be an array of arrow names");
        for (const auto& a : path) term.path.push_back(need_string(a, "arrow name"));
        rel.terms.push_back(std::move(term));
      }
      rels.push_back(std::move(rel));
    }
  }
  return Algebra::build(Quiver(std::move(vertices), std::move(arrows)), std::move(rels), static_cast<std::size_t>(maxlen),
                        static_cast<std::uint32_t>(p), std::move(name));
}

AlgebraPtr load_algebra(const std::string& path, std::optional<std::uint32_t> field) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
  return algebra_from_json(doc, field);
}

json algebra_to_json(const Algebra& alg) {
  const Quiver& q = alg.quiver();
  json doc;
  doc["name"] = alg.name();
  doc["field"] = alg.prime();
  doc["max_path_length"] = alg.max_path_length();
  doc["vertices"] = q.vertices();
  doc["arrows"] = json::array();
  for (const auto& a : q.arrows())
    doc["arrows"].push_back({{"name", a.name}, {"from", q.vertex_name(a.source)}, {"to", q.vertex_name(a.target)}});
  doc["relations"] = json::array();
  for (const auto& r : alg.relations()) {
    json terms = json::array();
    for (const auto& t : r.terms) terms.push_back({{"coeff", t.coeff}, {"path", t.path}});
    doc["relations"].push_back(std::move(terms));
  }
  return doc;
}

Representation parse_module(const std::string& spec, const Labeler& lab) {
  const AlgebraPtr& alg = lab.algebra();
  const std::size_t first = spec.find_first_not_of(" \t");
  if (first != std::string::npos && spec[first] == '{') {
    json doc;
    try {
      doc = json::parse(spec);
    } catch (const json::parse_error& e) {
      throw FormatError(std::string("module literal: ") + e.what());
    }
    only_keys(doc, {"dims", "arrows"}, "module literal");
    const json& d = need(doc, "dims", "module literal");
    if (!d.is_array() || d.size() != alg->num_vertices()) throw FormatError("dims must list one entry per vertex");
    std::vector<std::size_t> dims;
    for (const auto& v : d) {
      auto n = need_int(v, "dimension");
      if (n < 0) throw FormatError("negative dimension");
      dims.push_back(static_cast<std::size_t>(n));
    }
    const json arrows = doc.contains("arrows") ? doc.at("arrows") : json::object();
    if (!arrows.is_object()) throw FormatError("arrows must map arrow names to matrices");
    std::vector<la::Matrix> maps;
    for (const auto& a : alg->quiver().arrows()) maps.emplace_back(dims[a.target], dims[a.source], alg->prime());
    for (const auto& [name, m] : arrows.items()) {
      auto idx = alg->quiver().arrow_index(name);
      if (!idx) throw FormatError("unknown arrow '" + name + "'");
      la::Matrix& mat = maps[*idx];
      if (!m.is_array() || m.size() != mat.rows()) throw FormatError("matrix of '" + name + "' has the wrong shape");
      for (std::size_t r = 0; r < mat.rows(); ++r) {
        if (!m[r].is_array() || m[r].size() != mat.cols())
          throw FormatError("matrix of '" + name + "' has the wrong shape");
        for (std::size_t c = 0; c < mat.cols(); ++c) mat.set(r, c, need_int(m[r][c], "matrix entry"));
      }
    }
    try {
      return Representation(alg, std::move(dims), std::move(maps));
    } catch (const ModuleError& e) {
      throw FormatError(e.what());
    }
  }

  if (spec.find_last_not_of(" \t") != std::string::npos && spec[spec.find_last_not_of(" \t")] == '+')
    throw FormatError("empty summand in '" + spec + "'");
  std::vector<Representation> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, '+')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw FormatError("empty summand in '" + spec + "'");
    item = item.substr(b, e - b + 1);
    if (item == "0") continue;
    auto m = lab.resolve(item);
    if (!m) throw FormatError("unknown label '" + item + "'");
    parts.push_back(*m);
  }
  return direct_sum(alg, parts);
}

std::pair<std::vector<int>, std::vector<int>> parse_split(const std::string& spec, const Algebra& alg) {
  std::vector<int> a, b;
  bool seen_a = false, seen_b = false;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw FormatError("split must look like A=1,2;B=3");
    std::string side = part.substr(0, eq);
    side.erase(0, side.find_first_not_of(" \t"));
    side.erase(side.find_last_not_of(" \t") + 1);
    std::vector<int>* out = nullptr;
    if (side == "A" && !seen_a) {
      out = &a;
      seen_a = true;
    } else if (side == "B" && !seen_b) {
      out = &b;
      seen_b = true;
    } else {
      throw FormatError("split must name A and B once each");
    }
    std::stringstream vs(part.substr(eq + 1));
    std::string v;
    while (std::getline(vs, v, ',')) {
      v.erase(0, v.find_first_not_of(" \t"));
      v.erase(v.find_last_not_of(" \t") + 1);
      auto idx = alg.quiver().vertex_index(v);
      if (!idx) throw FormatError("unknown vertex '" + v + "' in split");
      out->push_back(*idx);
    }
  }
  if (!seen_a || !seen_b) throw FormatError("split must name A and B once each");
  return {a, b};
}

std::string poset_to_dot(const SttPoset& poset) {
  std::ostringstream os;
  os << "digraph stt {\n";
  for (std::size_t i = 0; i < poset.nodes.size(); ++i) os << "  n" << i << " [label=\"" << poset.nodes[i].label << "\"];\n";
  for (auto [a, b] : poset.edges) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

json poset_to_json(const SttPoset& poset) {
  json doc;
  doc["kind"] = "stt_poset";
  doc["algebra"] = poset.alg->name();
  doc["nodes"] = json::array();
  for (const auto& n : poset.nodes) doc["nodes"].push_back(n.label);
  doc["edges"] = json::array();
  for (auto [a, b] : poset.edges) doc["edges"].push_back({poset.nodes[a].label, poset.nodes[b].label});
  doc["mutations"] = json::array();
  for (const auto& m : poset.mutation_edges)
    doc["mutations"].push_back(
        {{"from", poset.nodes[m.from].label}, {"to", poset.nodes[m.to].label}, {"at", m.exchanged}});
  return doc;
}

json sweep_to_json(const std::vector<SweepRow>& rows) {
  json doc;
  doc["kind"] = "lift_sweep";
  doc["rows"] = json::array();
  std::size_t passing = 0;
  for (const auto& r : rows) {
    json row = {{"X", r.x_label}, {"Y", r.y_label}, {"verdict", r.check.verdict}, {"failing", r.check.failing}};
    if (r.check.verdict) {
      row["lift"] = r.lift_label;
      ++passing;
    }
    if (r.direct) row["direct"] = *r.direct;
    doc["rows"].push_back(std::move(row));
  }
  doc["pairs"] = rows.size();
  doc["passing"] = passing;
  return doc;
}

}  // namespace tautri::io
