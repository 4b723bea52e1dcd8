#include "doctest.h"
#include "lman/docs.hpp"

#include <fstream>
#include <sstream>

using namespace lman;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(LMAN_DATA_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("bundled gl(1,1) document verifies") {
  auto text = slurp("gl11.json");
  CHECK(document_kind(text) == DocKind::Algebra);
  auto doc = parse_algebra(text);
  auto l = to_structure(doc);
  CHECK(validate_structure(l).ok());
  CHECK(check_all_jacobi(l).ok());
}

TEST_CASE("bundled perturbed document fails Jacobi") {
  auto l = to_structure(parse_algebra(slurp("gl11-perturbed.json")));
  CHECK_FALSE(check_all_jacobi(l).ok());
}

TEST_CASE("bundled flat potential document has zero residual") {
  auto text = slurp("flatq.json");
  CHECK(document_kind(text) == DocKind::Potential);
  auto m = to_manifold(parse_potential(text));
  CHECK(lie_condition_residual(m).ok);
  // linear potential: the induced structure is curvature only
  auto l = potential_to_operations(m, 2);
  for (const auto& [inputs, out] : l.raw(0)) {
    bool nonzero = false;
    for (const auto& c : out) nonzero |= (c != 0);
    CHECK(nonzero);
  }
  for (int arity = 1; arity <= 2; ++arity)
    for (const auto& [inputs, out] : l.raw(arity))
      for (const auto& c : out) CHECK(c == 0);
}

TEST_CASE("documents round-trip through parse and serialize") {
  for (const char* name : {"gl11.json", "gl11-perturbed.json"}) {
    auto text = slurp(name);
    auto once = serialize(parse_algebra(text));
    CHECK(once == text);
    CHECK(serialize(parse_algebra(once)) == once);
  }
  auto text = slurp("flatq.json");
  auto once = serialize(parse_potential(text));
  CHECK(once == text);
  CHECK(serialize(parse_potential(once)) == once);
}

TEST_CASE("structure and document converge") {
  auto doc = parse_algebra(slurp("gl11.json"));
  auto again = algebra_document(doc.name, to_structure(doc));
  CHECK(serialize(again) == serialize(doc));
}

TEST_CASE("empty operations document is the zero structure") {
  std::string text = R"({
    "format": 1, "kind": "algebra", "name": "zero",
    "basis": ["x", "y"], "parities": [1, 1],
    "pairing": [["0", "1"], ["-1", "0"]],
    "max_arity": 2, "operations": {}
  })";
  auto l = to_structure(parse_algebra(text));
  CHECK(l.is_zero());
  CHECK(check_all_jacobi(l).ok());
}

TEST_CASE("malformed documents report the defect") {
  CHECK_THROWS_AS(parse_algebra("not json"), ParseError);
  CHECK_THROWS_AS(parse_algebra("[1,2]"), ParseError);
  CHECK_THROWS_AS(document_kind(R"({"kind": "poem"})"), ParseError);

  std::string base = R"({
    "format": 1, "kind": "algebra", "name": "t",
    "basis": ["x"], "parities": [1],
    "pairing": [["1"]], "max_arity": 1,
    "operations": {"1": [[[0], 0, "1/2"]]}
  })";
  CHECK(parse_algebra(base).entries.size() == 1);
  CHECK(parse_algebra(base).entries[0].coeff == Scalar(1, 2));

  auto mutate = [&](const std::string& from, const std::string& to) {
    std::string s = base;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  // wrong format version
  CHECK_THROWS_AS(parse_algebra(mutate("\"format\": 1", "\"format\": 2")),
                  ParseError);
  // rational with a zero denominator
  CHECK_THROWS_AS(parse_algebra(mutate("\"1/2\"", "\"1/0\"")), ParseError);
  // index out of range
  CHECK_THROWS_AS(parse_algebra(mutate("[[0], 0,", "[[7], 0,")), ParseError);
  // arity beyond max_arity
  CHECK_THROWS_AS(parse_algebra(mutate("\"1\": [[[0], 0, \"1/2\"]]",
                                       "\"3\": [[[0,0,0], 0, \"1/2\"]]")),
                  ParseError);

  std::string pot = R"({
    "format": 1, "kind": "potential", "name": "t",
    "variables": ["xi"], "parities": [1],
    "omega": [["1"]], "truncation": 3,
    "terms": [[[1], "1"]]
  })";
  CHECK(parse_potential(pot).terms.size() == 1);
  // squared odd variable
  std::string bad = pot;
  bad.replace(bad.find("[[[1]"), 5, "[[[2]");
  CHECK_THROWS_AS(parse_potential(bad), ParseError);
}
