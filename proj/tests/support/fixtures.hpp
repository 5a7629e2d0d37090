#pragma once

#include <string>

#include "unispec/io.hpp"
#include "unispec/representation.hpp"

namespace testing_support {

inline std::string fixture_path(const std::string& name) { return std::string(UNISPEC_FIXTURE_DIR) + "/" + name + ".json"; }

inline unispec::Json fixture_json(const std::string& name) { return unispec::load_json_file(fixture_path(name)); }

/// Validated and certified.
inline unispec::Representation fixture(const std::string& name, const unispec::ToleranceConfig& tol = {}) {
  return unispec::certified(unispec::representation_from_json(fixture_json(name), tol), tol);
}

inline unispec::UnitaryCharacter fixture_character(const std::string& name, const std::string& chi,
                                                   const unispec::Semigroup& S) {
  return unispec::character_from_json(fixture_json(name)["characters"][chi], S);
}

}  // namespace testing_support
