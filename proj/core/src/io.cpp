#include "unispec/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "unispec/error.hpp"

namespace unispec {
namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what, {{"path", where}});
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t as_index(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    schema_error(where, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

double as_number(const Json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

std::vector<std::vector<double>> as_grid(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array() || j.size() != rows) schema_error(where, "expected " + std::to_string(rows) + " rows");
  std::vector<std::vector<double>> out(rows, std::vector<double>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rw = where + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) schema_error(rw, "expected " + std::to_string(cols) + " columns");
    for (std::size_t c = 0; c < cols; ++c) out[r][c] = as_number(j[r][c], rw + "/" + std::to_string(c));
  }
  return out;
}

}  // namespace

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError,
                source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON",
                {{"source", source}, {"line", line}, {"column", col}, {"reason", e.what()}});
  }
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path.string(), {{"path", path.string()}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

std::string canonical_dump(const Json& j) { return j.dump(); }

std::string digest(const Json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_dump(j)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

Semigroup semigroup_from_json(const Json& j) {
  const std::string where = "semigroup";
  const Json& type = field(j, "type", where);
  if (type == "free_commutative") return FreeMonoid(as_index(field(j, "rank", where), where + "/rank"));
  if (type != "cayley") schema_error(where + "/type", "expected \"cayley\" or \"free_commutative\"");
  const Json& t = field(j, "table", where);
  if (!t.is_array()) schema_error(where + "/table", "expected an array of rows");
  const std::size_t size = as_index(field(j, "size", where), where + "/size");
  if (t.size() != size) schema_error(where + "/size", "size does not match the number of table rows");
  std::vector<std::vector<std::size_t>> table;
  for (std::size_t r = 0; r < t.size(); ++r) {
    const std::string rw = where + "/table/" + std::to_string(r);
    if (!t[r].is_array()) schema_error(rw, "expected a row");
    std::vector<std::size_t> row;
    for (std::size_t c = 0; c < t[r].size(); ++c) row.push_back(as_index(t[r][c], rw + "/" + std::to_string(c)));
    table.push_back(std::move(row));
  }
  return FiniteMonoid::validate(table, as_index(field(j, "neutral", where), where + "/neutral"));
}

Json to_json(const Semigroup& S) {
  if (!S.is_finite()) return {{"type", "free_commutative"}, {"rank", S.free().rank()}};
  const auto& M = S.finite();
  return {{"type", "cayley"}, {"size", M.size()}, {"neutral", M.neutral()}, {"table", M.table()}};
}

CMatrix matrix_from_json(const Json& j, const std::string& where) {
  const std::size_t rows = as_index(field(j, "rows", where), where + "/rows");
  const std::size_t cols = as_index(field(j, "cols", where), where + "/cols");
  if (rows > static_cast<std::size_t>(kMaxDimension) || cols > static_cast<std::size_t>(kMaxDimension))
    throw Error(ErrorKind::SizeLimit, where + ": matrix too large", {{"rows", rows}, {"cols", cols}});
  const auto re = as_grid(field(j, "re", where), rows, cols, where + "/re");
  std::vector<std::vector<double>> im;
  if (j.contains("im")) im = as_grid(j["im"], rows, cols, where + "/im");
  CMatrix A(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) A(r, c) = Complex(re[r][c], im.empty() ? 0.0 : im[r][c]);
  check_matrix(A);
  return A;
}

Json to_json(const CMatrix& A) {
  Json re = Json::array(), im = Json::array();
  bool complex = false;
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    Json rr = Json::array(), ir = Json::array();
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      rr.push_back(A(r, c).real());
      ir.push_back(A(r, c).imag());
      complex = complex || A(r, c).imag() != 0.0;
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  Json j = {{"rows", A.rows()}, {"cols", A.cols()}, {"re", std::move(re)}};
  if (complex) j["im"] = std::move(im);
  return j;
}

Element element_from_json(const Json& j, const Semigroup& S) {
  Element s;
  if (j.is_array()) {
    Exponents e;
    for (std::size_t i = 0; i < j.size(); ++i) e.push_back(as_index(j[i], "element/" + std::to_string(i)));
    s = std::move(e);
  } else {
    s = static_cast<std::size_t>(as_index(j, "element"));
  }
  check_element(s, S);
  return s;
}

Json to_json(const Element& s) {
  if (const auto* i = std::get_if<std::size_t>(&s)) return *i;
  return std::get<Exponents>(s);
}

UnitaryCharacter character_from_json(const Json& j, const Semigroup& S) {
  const std::string where = "character";
  if (S.is_finite()) {
    const Json& a = field(j, "angles", where);
    if (!a.is_array()) schema_error(where + "/angles", "expected an array of [num, den]");
    std::vector<Angle> angles;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string w = where + "/angles/" + std::to_string(i);
      if (!a[i].is_array() || a[i].size() != 2 || !a[i][0].is_number_integer() || !a[i][1].is_number_integer())
        schema_error(w, "expected [num, den]");
      const auto den = a[i][1].get<std::int64_t>();
      if (den <= 0) schema_error(w, "denominator must be positive");
      angles.push_back(Angle::make(a[i][0].get<std::int64_t>(), den));
    }
    return UnitaryCharacter::from_angles(S, std::move(angles));
  }
  const Json& v = field(j, "generator_values", where);
  if (!v.is_array()) schema_error(where + "/generator_values", "expected an array");
  std::vector<Complex> values;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string w = where + "/generator_values/" + std::to_string(i);
    values.emplace_back(as_number(field(v[i], "re", w), w + "/re"), v[i].contains("im") ? as_number(v[i]["im"], w + "/im") : 0.0);
  }
  return UnitaryCharacter::from_generator_values(S, std::move(values));
}

Json to_json(const UnitaryCharacter& chi) {
  if (chi.is_exact()) {
    Json a = Json::array();
    for (const auto& x : chi.angles()) a.push_back({x.num, x.den});
    return {{"angles", std::move(a)}};
  }
  Json v = Json::array();
  for (const auto& z : chi.generator_values()) v.push_back({{"re", z.real()}, {"im", z.imag()}});
  return {{"generator_values", std::move(v)}};
}

Representation representation_from_json(const Json& j, const ToleranceConfig& tol) {
  const std::string where = "representation";
  const Semigroup S = semigroup_from_json(field(j, "semigroup", where));
  const std::size_t n = as_index(field(j, "dim", where), where + "/dim");
  const Json& m = field(j, "matrices", where);
  if (!m.is_array()) schema_error(where + "/matrices", "expected an array");
  std::vector<CMatrix> mats;
  for (std::size_t i = 0; i < m.size(); ++i) {
    CMatrix A = matrix_from_json(m[i], where + "/matrices/" + std::to_string(i));
    if (static_cast<std::size_t>(A.rows()) != n || static_cast<std::size_t>(A.cols()) != n)
      throw Error(ErrorKind::DimensionMismatch, "matrix shape differs from dim",
                  {{"index", i}, {"rows", A.rows()}, {"cols", A.cols()}, {"dim", n}});
    mats.push_back(std::move(A));
  }
  if (S.is_finite() && j.contains("generators")) {
    const Json& g = j["generators"];
    if (!g.is_array()) schema_error(where + "/generators", "expected an array");
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < g.size(); ++i) gens.push_back(as_index(g[i], where + "/generators/" + std::to_string(i)));
    return Representation::from_generators(S.finite(), gens, mats, tol);
  }
  return Representation::validate(S, std::move(mats), tol);
}

Json to_json(const Representation& T) {
  Json m = Json::array();
  for (const auto& A : T.matrices()) m.push_back(to_json(A));
  return {{"semigroup", to_json(T.semigroup())}, {"dim", T.dim()}, {"matrices", std::move(m)}};
}

Json to_json(const ToleranceConfig& tol) {
  return {{"tol_rank", tol.tol_rank},       {"tol_char", tol.tol_char},       {"tol_cluster", tol.tol_cluster},
          {"tol_orth", tol.tol_orth},       {"tol_hom", tol.tol_hom},         {"tol_commute", tol.tol_commute},
          {"cesaro_max_side", tol.cesaro_max_side}, {"cesaro_target", tol.cesaro_target}};
}

ToleranceConfig tolerance_from_json(const Json& j) {
  ToleranceConfig tol;
  const auto num = [&](const char* key, double& out) {
    if (j.contains(key)) out = as_number(j[key], std::string("tolerance/") + key);
  };
  num("tol_rank", tol.tol_rank);
  num("tol_char", tol.tol_char);
  num("tol_cluster", tol.tol_cluster);
  num("tol_orth", tol.tol_orth);
  num("tol_hom", tol.tol_hom);
  num("tol_commute", tol.tol_commute);
  num("cesaro_target", tol.cesaro_target);
  if (j.contains("cesaro_max_side")) tol.cesaro_max_side = as_index(j["cesaro_max_side"], "tolerance/cesaro_max_side");
  tol.validate();
  return tol;
}

}  // namespace unispec
