#pragma once

// Algebra files, module literals and the structured / DOT emitters.
//
// An algebra file is a JSON object:
//   {"name": "R", "field": 1009, "max_path_length": 20,
//    "vertices": ["1", "2"],
//    "arrows": [{"name": "delta", "from": "1", "to": "2"}],
//    "relations": [[{"coeff": 1, "path": ["a", "b"]}, {"coeff": -1, "path": ["c", "d"]}]]}
// "field" and "max_path_length" are optional; any other key is an error.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "tautri/bqa.hpp"
#include "tautri/rep.hpp"
#include "tautri/stt.hpp"
#include "tautri/tri.hpp"

namespace tautri::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws FormatError on a malformed document; AlgebraError from the build.
AlgebraPtr algebra_from_json(const nlohmann::json& doc, std::optional<std::uint32_t> field = std::nullopt);
AlgebraPtr load_algebra(const std::string& path, std::optional<std::uint32_t> field = std::nullopt);
nlohmann::json algebra_to_json(const Algebra& alg);

/// "P1+S1", "0", or a literal {"dims": [...], "arrows": {"name": [[...]], ...}}.
Representation parse_module(const std::string& spec, const Labeler& lab);

/// "A=1,2;B=3,4,5" with vertex names.
std::pair<std::vector<int>, std::vector<int>> parse_split(const std::string& spec, const Algebra& alg);

std::string poset_to_dot(const SttPoset& poset);
nlohmann::json poset_to_json(const SttPoset& poset);
nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows);

}  // namespace tautri::io
