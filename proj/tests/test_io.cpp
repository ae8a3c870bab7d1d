#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "algebras.hpp"
#include "tautri/io.hpp"

using namespace tautri;
using nlohmann::json;

namespace {

std::string data(const std::string& f) { return std::string(TAUTRI_DATA_DIR) + "/" + f; }

bool same_presentation(const Algebra& a, const Algebra& b) {
  if (a.name() != b.name() || a.prime() != b.prime() || a.max_path_length() != b.max_path_length()) return false;
  if (a.quiver().vertices() != b.quiver().vertices()) return false;
  for (std::size_t i = 0; i < a.quiver().num_arrows(); ++i) {
    const auto &x = a.quiver().arrow(static_cast<int>(i)), &y = b.quiver().arrow(static_cast<int>(i));
    if (x.name != y.name || x.source != y.source || x.target != y.target) return false;
  }
  if (a.relations().size() != b.relations().size()) return false;
  for (std::size_t r = 0; r < a.relations().size(); ++r) {
    const auto &x = a.relations()[r].terms, &y = b.relations()[r].terms;
    if (x.size() != y.size()) return false;
    for (std::size_t t = 0; t < x.size(); ++t)
      if (x[t].coeff != y[t].coeff || x[t].path != y[t].path) return false;
  }
  return a.quiver().num_arrows() == b.quiver().num_arrows();
}

json r_doc() {
  return json::parse(R"({"name": "R", "vertices": ["1", "2", "3", "4", "5"],
    "arrows": [{"name": "delta", "from": "1", "to": "2"}, {"name": "eps", "from": "3", "to": "1"},
               {"name": "alpha", "from": "3", "to": "4"}, {"name": "gamma", "from": "4", "to": "2"},
               {"name": "beta", "from": "4", "to": "5"}],
    "relations": [[{"coeff": 1, "path": ["alpha", "gamma"]}, {"coeff": -1, "path": ["eps", "delta"]}],
                  [{"coeff": 1, "path": ["alpha", "beta"]}]]})");
}

}  // namespace

TEST_CASE("shipped files load") {
  std::map<std::string, std::size_t> dims = {
      {"R.json", 11}, {"lambda.json", 3}, {"gamma.json", 5}, {"k.json", 1}, {"a2_doubled.json", 9}};
  for (const auto& [f, d] : dims) CHECK_MESSAGE(io::load_algebra(data(f))->dim() == d, f);
  auto r = io::load_algebra(data("R.json"));
  auto fixture = fixtures::R();
  CHECK(r->basis().size() == fixture->basis().size());
  for (std::size_t b = 0; b < r->dim(); ++b) CHECK(r->basis()[b] == fixture->basis()[b]);
}

TEST_CASE("shipped files round-trip") {
  for (const auto& entry : std::filesystem::directory_iterator(TAUTRI_DATA_DIR)) {
    if (entry.path().extension() != ".json") continue;
    auto a = io::load_algebra(entry.path().string());
    json out = io::algebra_to_json(*a);
    auto b = io::algebra_from_json(out);
    CHECK_MESSAGE(same_presentation(*a, *b), entry.path().string());
    CHECK(io::algebra_to_json(*b) == out);
  }
}

TEST_CASE("field override") {
  auto a = io::algebra_from_json(r_doc(), 7);
  CHECK(a->prime() == 7);
  CHECK(a->dim() == 11);
  CHECK(io::algebra_from_json(r_doc())->prime() == 1009);
  CHECK_THROWS_AS(io::algebra_from_json(r_doc(), 8), io::FormatError);
}

TEST_CASE("malformed files") {
  json d = r_doc();
  d["colour"] = "red";
  CHECK_THROWS_WITH_AS(io::algebra_from_json(d), doctest::Contains("unknown key 'colour'"), io::FormatError);

  d = r_doc();
  d["arrows"][0]["to"] = "9";
  CHECK_THROWS_WITH_AS(io::algebra_from_json(d), doctest::Contains("unknown vertex"), io::FormatError);

  d = r_doc();
  d["relations"][1][0]["path"] = json::array({"beta", "alpha"});
  CHECK_THROWS_WITH_AS(io::algebra_from_json(d), doctest::Contains("ill-formed relation"), AlgebraError);

  d = r_doc();
  d.erase("vertices");
  CHECK_THROWS_AS(io::algebra_from_json(d), io::FormatError);

  d = r_doc();
  d["relations"][0][0]["coeff"] = "one";
  CHECK_THROWS_AS(io::algebra_from_json(d), io::FormatError);

  CHECK_THROWS_AS(io::load_algebra(data("missing.json")), io::FormatError);
}

TEST_CASE("cyclic quiver without relations is rejected") {
  json d = json::parse(R"({"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}], "max_path_length": 5})");
  CHECK_THROWS_WITH_AS(io::algebra_from_json(d), doctest::Contains("not finite-dimensional"), AlgebraError);
}

TEST_CASE("module literals") {
  auto lam = io::load_algebra(data("lambda.json"));
  Labeler lab(lam);
  CHECK(lab.module_label(io::parse_module("P1+S1", lab)) == "P1S1");
  CHECK(lab.module_label(io::parse_module(" P2 ", lab)) == "P2");
  CHECK(io::parse_module("0", lab).is_zero());
  auto m = io::parse_module(R"({"dims": [1, 1], "arrows": {"delta": [[1]]}})", lab);
  CHECK(lab.module_label(m) == "P1");
  auto n = io::parse_module(R"({"dims": [1, 1]})", lab);
  CHECK(lab.module_label(n) == "S1P2");
  CHECK_THROWS_WITH_AS(io::parse_module("P7", lab), doctest::Contains("unknown label"), io::FormatError);
  CHECK_THROWS_AS(io::parse_module("P1+", lab), io::FormatError);
  CHECK_THROWS_AS(io::parse_module(R"({"dims": [1, 1], "arrows": {"delta": [[1, 0]]}})", lab), io::FormatError);
  CHECK_THROWS_AS(io::parse_module(R"({"dims": [1]})", lab), io::FormatError);

  auto gam = io::load_algebra(data("gamma.json"));
  Labeler gl(gam);
  CHECK_THROWS_WITH_AS(io::parse_module(R"({"dims": [1, 1, 1], "arrows": {"alpha": [[1]], "beta": [[1]]}})", gl),
                       doctest::Contains("relation"), io::FormatError);
}

TEST_CASE("split specs") {
  auto r = io::load_algebra(data("R.json"));
  auto [a, b] = io::parse_split("A=1,2;B=3,4,5", *r);
  CHECK(a == std::vector<int>{0, 1});
  CHECK(b == std::vector<int>{2, 3, 4});
  CHECK_THROWS_AS(io::parse_split("A=1,2", *r), io::FormatError);
  CHECK_THROWS_AS(io::parse_split("A=1,2;B=3,9", *r), io::FormatError);
  CHECK_THROWS_AS(io::parse_split("A=1;A=2", *r), io::FormatError);
}

TEST_CASE("emitters") {
  auto lam = io::load_algebra(data("lambda.json"));
  Labeler lab(lam);
  auto p = enumerate_stt(lam, lab);
  std::string dot = io::poset_to_dot(p);
  CHECK(dot.rfind("digraph stt {", 0) == 0);
  CHECK(dot.find("label=\"(P1P2|0)\"") != std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '>') == 5);
  json j = io::poset_to_json(p);
  CHECK(j["nodes"].size() == 5);
  CHECK(j["edges"].size() == 5);
  CHECK(j["kind"] == "stt_poset");
}
