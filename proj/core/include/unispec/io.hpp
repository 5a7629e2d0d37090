#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "unispec/character.hpp"
#include "unispec/linalg.hpp"
#include "unispec/monoid.hpp"
#include "unispec/representation.hpp"
#include "unispec/tolerance.hpp"

namespace unispec {

using Json = nlohmann::json;

/// Parses JSON text. Syntax errors throw ParseError with 1-based line/column.
Json parse_json(std::string_view text, const std::string& source = "<input>");
Json load_json_file(const std::filesystem::path& path);

/// Compact dump; object keys come out sorted, so equal values give equal bytes.
std::string canonical_dump(const Json& j);
/// FNV-1a 64 of the canonical dump, as 16 hex digits.
std::string digest(const Json& j);

// {"type":"cayley","size":m,"neutral":e,"table":[[..]]} or {"type":"free_commutative","rank":k}
Semigroup semigroup_from_json(const Json& j);
Json to_json(const Semigroup& S);

// {"rows":r,"cols":c,"re":[[..]],"im":[[..]]}; "im" may be omitted
CMatrix matrix_from_json(const Json& j, const std::string& where = "matrix");
Json to_json(const CMatrix& A);

Element element_from_json(const Json& j, const Semigroup& S);
Json to_json(const Element& s);

// {"angles":[[p,q],..]} (Cayley monoids) or {"generator_values":[{"re":..,"im":..},..]} (N^k)
UnitaryCharacter character_from_json(const Json& j, const Semigroup& S);
Json to_json(const UnitaryCharacter& chi);

/// {"semigroup":..,"dim":n,"matrices":[..]} with one matrix per element (Cayley)
/// or per generator (N^k); a Cayley monoid may instead list "generators" with
/// one matrix each. Validated, not certified.
Representation representation_from_json(const Json& j, const ToleranceConfig& tol);
Json to_json(const Representation& T);

Json to_json(const ToleranceConfig& tol);
ToleranceConfig tolerance_from_json(const Json& j);

}  // namespace unispec
