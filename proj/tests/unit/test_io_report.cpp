#include <gtest/gtest.h>

#include "../support/fixtures.hpp"
#include "unispec/ensemble.hpp"
#include "unispec/error.hpp"
#include "unispec/io.hpp"
#include "unispec/report.hpp"

using namespace unispec;
using testing_support::fixture;
using testing_support::fixture_json;

TEST(Io, ParseErrorsCarryLineAndColumn) {
  try {
    parse_json("{\n  \"a\": 1,\n  \"b\": ]\n}", "x.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_EQ(e.details()["line"], 3);
    EXPECT_EQ(e.details()["column"], 8);
  }
}

TEST(Io, SchemaErrorsNameThePath) {
  try {
    representation_from_json(parse_json(R"({"semigroup":{"type":"free_commutative","rank":1},"dim":1,"matrices":[{"rows":1}]})"), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_EQ(e.details()["path"], "representation/matrices/0");
  }
}

TEST(Io, MonoidErrorsSurface) {
  try {
    semigroup_from_json(parse_json(R"({"type":"cayley","size":3,"table":[[0,1,2],[1,1,2],[2,1,2]],"neutral":0})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCommutative);
  }
}

TEST(Io, RepresentationRoundTrip) {
  for (const char* name : {"klein_four", "circle_discretization_8", "jordan_half"}) {
    const auto T = representation_from_json(fixture_json(name), {});
    const Json j = to_json(T);
    const auto U = representation_from_json(parse_json(j.dump()), {});
    ASSERT_EQ(T.matrices().size(), U.matrices().size());
    for (std::size_t i = 0; i < T.matrices().size(); ++i) EXPECT_EQ((T.matrices()[i] - U.matrices()[i]).norm(), 0.0);
    EXPECT_EQ(canonical_dump(to_json(U)), canonical_dump(j));
  }
}

TEST(Io, CharacterRoundTrip) {
  const auto T = fixture("klein_four");
  for (const auto& chi : enumerate_unitary_dual(T.semigroup().finite()))
    EXPECT_EQ(character_distance(character_from_json(to_json(chi), T.semigroup()), chi), 0.0);
}

TEST(Io, ToleranceRoundTrip) {
  ToleranceConfig t;
  t.tol_rank = 1e-9;
  t.cesaro_max_side = 1024;
  const auto u = tolerance_from_json(to_json(t));
  EXPECT_EQ(u.tol_rank, 1e-9);
  EXPECT_EQ(u.cesaro_max_side, 1024u);
  ToleranceConfig bad;
  bad.tol_orth = 1e-3;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Report, KleinSections) {
  const auto T = representation_from_json(fixture_json("klein_four"), {});
  const Json r = analyze(T, {});
  EXPECT_EQ(r["spectrum"]["characters"].size(), 3u);
  EXPECT_EQ(r["peripheral"]["stable_dim"], 0);
  EXPECT_TRUE(r["all_checks_pass"].get<bool>());
  for (const char* s : {"boundedness", "spectrum", "ergodic", "poles", "peripheral", "stability", "quasi_compactness",
                        "semigroup_at_infinity", "positivity", "nisa", "domination", "seeds", "tolerance"})
    EXPECT_TRUE(r.contains(s)) << s;
}

TEST(Report, SkippedSectionsCarryReasons) {
  const auto J = representation_from_json(fixture_json("jordan_half"), {});
  const Json r = analyze(J, {});
  EXPECT_TRUE(r["stability"]["stable"].get<bool>());
  EXPECT_EQ(r["spectrum"]["characters"].size(), 0u);
  EXPECT_EQ(r["ergodic"]["mean_projection"]["re"], Json::parse("[[0.0,0.0],[0.0,0.0]]"));
  EXPECT_TRUE(r["semigroup_at_infinity"].contains("skipped"));

  const auto U = representation_from_json(fixture_json("unbounded_jordan"), {});
  const Json u = analyze(U, {});
  EXPECT_EQ(u["boundedness"]["status"], "Unbounded");
  EXPECT_TRUE(u["spectrum"].contains("skipped"));
  EXPECT_FALSE(u["all_checks_pass"].get<bool>());
}

TEST(Report, DeterministicAndRoundTrips) {
  for (const char* name : {"klein_four", "identity_3", "circulant_stochastic_2x6", "threshold"}) {
    const auto T = representation_from_json(fixture_json(name), {});
    const std::string a = canonical_dump(analyze(T, {}));
    const std::string b = canonical_dump(analyze(T, {}));
    EXPECT_EQ(a, b);
    EXPECT_EQ(canonical_dump(parse_json(a)), a);
  }
}

TEST(Report, CesaroCsv) {
  const auto T = representation_from_json(fixture_json("identity_3"), {});
  const std::string csv = cesaro_csv(analyze(T, {}));
  EXPECT_EQ(csv.rfind("side,distance\n", 0), 0u);
  EXPECT_NE(csv.find("1,0"), std::string::npos);
}

TEST(Ensemble, InstancesAreDeterministicAndIndependentOfWorkers) {
  const ToleranceConfig tol;
  EnsembleConfig c;
  c.kind = "circulant";
  c.count = 6;
  c.seed = 4;
  for (std::size_t i = 0; i < c.count; ++i) {
    const auto a = ensemble_instance(c, i, tol), b = ensemble_instance(c, i, tol);
    EXPECT_EQ((a.matrices()[0] - b.matrices()[0]).norm(), 0.0);
  }
  c.workers = 1;
  const auto s1 = run_ensemble(c, tol);
  c.workers = 3;
  const auto s3 = run_ensemble(c, tol);
  EXPECT_EQ(s1.to_json().dump(), s3.to_json().dump());
  EXPECT_EQ(s1.passed, c.count);
}

TEST(Ensemble, ConfigValidation) {
  EXPECT_THROW(EnsembleConfig::from_json(Json::parse(R"({"ensemble":"nope"})")), Error);
  EXPECT_THROW(EnsembleConfig::from_json(Json::parse(R"({"ensemble":"generic","n":100})")), Error);
  const auto c = EnsembleConfig::from_json(Json::parse(R"({"ensemble":"polynomial","n":5,"k":2,"count":3,"seed":9})"));
  EXPECT_EQ(c.kind, "polynomial");
  EXPECT_EQ(c.n, 5u);
  EXPECT_EQ(c.k, 2u);
}
