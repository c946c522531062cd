#include <gtest/gtest.h>

#include "flatorbit/io.hpp"

using namespace flatorbit;

TEST(AlgebraSpec, RoundTripsBundledFiles) {
  for (const char* name : {"ex57", "ex58", "heisenberg_m1", "abelian", "semidirect_m1"}) {
    std::string text = read_text_file(std::string(FLATORBIT_DATA_DIR "/") + name + ".json");
    auto spec = parse_algebra_spec(text);
    auto again = algebra_spec_from_json(algebra_spec_to_json(spec));
    EXPECT_EQ(algebra_spec_to_json(again).dump(), algebra_spec_to_json(spec).dump()) << name;
    EXPECT_EQ(again.algebra.entries().size(), spec.algebra.entries().size()) << name;
  }
}

TEST(AlgebraSpec, MalformedInputIsParseError) {
  EXPECT_THROW(parse_algebra_spec("{ \"dim\": 3, "), ParseError);
  EXPECT_THROW(parse_algebra_spec("[]"), ParseError);
  EXPECT_THROW(parse_algebra_spec(R"({"dim": 2, "labels": ["A"], "brackets": []})"), ParseError);
  EXPECT_THROW(parse_algebra_spec(R"({"dim": 2, "labels": ["A","B"], "brackets": [{"i": 0, "j": 5, "value": {}}]})"),
               ParseError);
  EXPECT_THROW(parse_algebra_spec(R"({"dim": 2, "labels": ["A","B"], "brackets": [{"i": 1, "j": 0, "value": {"0": "1/0"}}]})"),
               ParseError);
  EXPECT_THROW(read_text_file("/nonexistent/file.json"), ParseError);
}

TEST(AlgebraSpec, OptionalFields) {
  auto spec = parse_algebra_spec(R"({"dim": 3, "labels": ["Z","Y","X"],
      "brackets": [{"i": 2, "j": 1, "value": {"0": "2/4"}}], "xi0": ["1", 0, "0"]})");
  EXPECT_EQ(spec.algebra.basis_bracket(2, 1)[0], Rational(1, 2));
  EXPECT_EQ(spec.algebra.basis_bracket(1, 2)[0], Rational(-1, 2));
  ASSERT_TRUE(spec.xi0.has_value());
  EXPECT_FALSE(spec.expected_invariant_ops.has_value());
  EXPECT_TRUE(spec.eta_names.empty());
}

TEST(Digest, StableAndSensitive) {
  EXPECT_EQ(fnv1a_digest(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_digest("a"), "af63dc4c8601ec8c");
  EXPECT_NE(fnv1a_digest("ab"), fnv1a_digest("ba"));
}
