#include <doctest.h>

#include "fixtures.hpp"

using namespace pho;

namespace {

const char* kHeader =
    "feature a b\n"           // 1
    "segment x [+a,+b]\n"     // 2
    "segment y [+a,-b]\n"     // 3
    "segment z [-a,-b]\n"     // 4
    "class A [+a]\n";         // 5

// Parses kHeader plus `rest` and returns the reported line, or 0 on success.
std::size_t error_line(const std::string& rest, std::string* message = nullptr) {
  try {
    parse_config(std::string(kHeader) + rest);
  } catch (const ConfigError& e) {
    if (message) *message = e.what();
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("shipped configs load") {
  for (const char* name : {"turkish", "yoruba", "stress", "world", "paradigm10"}) {
    INFO(name);
    CHECK_NOTHROW(fixture::load(std::string(name) + ".pho"));
  }
  const auto& t = fixture::turkish();
  CHECK(t.features.feature_count() == 11);
  CHECK(t.features.segment_count() == 17);
  CHECK(t.theories.size() == 4);
  CHECK(t.find_lexicon("kVtV") != nullptr);
  CHECK(t.allomorphs.at("possessive").size() == 4);
  CHECK(fixture::paradigm10().paradigms.at("P10").rows() == 2);
}

TEST_CASE("a minimal config") {
  auto cfg = parse_config(std::string(kHeader) +
                          "define Pre = left head A\n"
                          "constraint NoZ = !head 'z' @ Pre\n"
                          "default Bee = head [+b]\n"
                          "theory t ut\n"
                          "  strict NoZ\n"
                          "  rank Bee\n"
                          "end\n"
                          "lexicon w = x []\n");
  CHECK(cfg.definitions.contains("Pre"));
  CHECK(cfg.find_default("Bee")->scheme.kind == OrderingScheme::Kind::ByFeature);
  auto d = derive_with(*cfg.find_theory("t"), *cfg.find_lexicon("w"), cfg.features, cfg.definitions);
  REQUIRE(d.result.size() == 1);
  CHECK(cfg.features.format_word(d.result.words()[0]) == "xx");
}

TEST_CASE("comments and blank lines") {
  CHECK(error_line("\n# nothing here\n   \nconstraint C = head A  # trailing\n") == 0);
}

TEST_CASE("errors report their line") {
  std::string msg;
  CHECK(error_line("define X = !X\n", &msg) == 6);
  CHECK(msg.find("X") != std::string::npos);

  const auto cycle = error_line("define P = A\ndefine Q = !R\ndefine R = left Q\n");
  CHECK((cycle == 7 || cycle == 8));
  CHECK(error_line("constraint C = head [+c]\n", &msg) == 6);
  CHECK(msg.find("c") != std::string::npos);
  CHECK(error_line("segment w [+q]\n") == 6);
  CHECK(error_line("\nconstraint C = head A &\n") == 7);
  CHECK(error_line("define D = head head A\n") == 6);
  CHECK(error_line("define A = head 'x'\n") == 6);
  CHECK(error_line("frobnicate\n") == 6);
  CHECK(error_line("default D by sideways = head A\n") == 6);
}

TEST_CASE("duplicates") {
  CHECK(error_line("segment x [-a,+b]\n") == 6);
  CHECK(error_line("define P = head A\ndefine P = head A\n") == 7);
  CHECK(error_line("constraint C = head A\nconstraint C = head A\n") == 7);
  CHECK(error_line("theory t et\nend\ntheory t et\nend\n") == 8);
}

TEST_CASE("segment system must be well formed") {
  // y and w share a specification.
  CHECK(error_line("segment w [+a,-b]\n") > 0);
}

TEST_CASE("theory blocks") {
  CHECK(error_line("constraint C = head A\n"
                   "theory t ut\n"
                   "  exceptions C\n"
                   "end\n") == 7);  // theory errors point at the header
  CHECK(error_line("constraint C = head A\n"
                   "theory t et\n"
                   "  exceptions C\n"
                   "end\n") == 0);
  CHECK(error_line("theory t ut\n  strict Missing\nend\n") == 6);
  CHECK(error_line("theory t xt\nend\n") == 6);
  CHECK(error_line("theory t et\n") > 0);
  CHECK(error_line("theory t ot\n  lexical a\n  rank\nend\n") > 0);

  // OT ranks may name constraints; they count failures.
  auto cfg = parse_config(std::string(kHeader) +
                          "constraint C = head A\n"
                          "default D by failures = head [+b]\n"
                          "theory t ot\n"
                          "  rank C D\n"
                          "end\n");
  const auto& ot = std::get<OtTheory>(*cfg.find_theory("t"));
  REQUIRE(ot.ranked().size() == 2);
  CHECK(ot.ranked()[0].name == "C");
  CHECK(ot.ranked()[0].scheme.kind == OrderingScheme::Kind::ByFailureCount);
}

TEST_CASE("lexicon and tables") {
  CHECK(error_line("lexicon w = x q\n") == 6);
  CHECK(error_line("allomorphs s = x yy\n") == 6);
  CHECK(error_line("paradigm P\n  x y\n  z\nend\n") > 0);
  auto cfg = parse_config(std::string(kHeader) + "allomorphs s = xy zy\nparadigm P\n  x y\n  z [+a,+b]\nend\n");
  CHECK(cfg.allomorphs.at("s").size() == 2);
  CHECK(cfg.paradigms.at("P").cell(1, 1).size() == 1);
}

TEST_CASE("unreadable file") {
  try {
    load_config("/nonexistent/grammar.pho");
    FAIL("loaded");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 0);
  }
}

TEST_CASE("predicates parsed against a config") {
  const auto& t = fixture::turkish();
  CHECK_NOTHROW(t.parse_predicate("head F & Left"));
  CHECK_THROWS_AS(t.parse_predicate("head Q"), NameError);
  CHECK_THROWS_AS(t.parse_predicate("head [+nope]"), NameError);
  CHECK_THROWS_AS(t.parse_predicate("'m'"), NameError);
}
