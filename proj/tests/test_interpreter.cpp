#include <doctest.h>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace pho;

namespace {

FeatureSystem abc() {
  return FeatureSystem({"p", "q"}, {{"a", {3, 0}}, {"b", {3, 1}}, {"c", {3, 2}}});
}

std::vector<std::size_t> positions_of(const FeatureSystem& fs, const std::string& word, const std::string& pred,
                                      const Definitions& defs = {}) {
  Pred p = parse(pred);
  return denotation(fs, fs.parse_word(word), as_position(typecheck(p, defs)), defs).positions;
}

std::vector<std::string> segment_names(const EngineConfig& cfg, const std::string& pred) {
  Pred p = cfg.parse_predicate(pred);
  Denotation d = denotation(cfg.features, Word{}, typecheck(p, cfg.definitions), cfg.definitions);
  std::vector<std::string> out;
  for (auto s : d.segments) out.push_back(cfg.features.segment(s).name);
  return out;
}

}  // namespace

TEST_CASE("three-object world") {
  const auto& w = fixture::world();
  CHECK(segment_names(w, "big & animate & slow").empty());
  CHECK(segment_names(w, "big | slow") == std::vector<std::string>{"club", "diamond", "heart"});
  CHECK(segment_names(w, "human").empty());
  CHECK(segment_names(w, "!human").size() == 3);
  CHECK(segment_names(w, "animate & !slow") == std::vector<std::string>{"club"});
}

TEST_CASE("right chain picks out the start of cab") {
  const auto fs = abc();
  CHECK(positions_of(fs, "cab", "head 'c' & right(head 'a' & right(head 'b' & right null))") ==
        std::vector<std::size_t>{0});
  CHECK(positions_of(fs, "cabcab", "head 'c' & right(head 'a' & right(head 'b' & right null))") ==
        std::vector<std::size_t>{3});
  CHECK(positions_of(fs, "cab", "left head 'c' & right head 'b'") == std::vector<std::size_t>{1});
}

TEST_CASE("null point") {
  const auto fs = abc();
  const Definitions none;
  auto d = denotation(fs, fs.parse_word("ab"), typecheck(parse("null"), none), none);
  CHECK(d.positions.empty());
  CHECK(d.null_point);

  // Functors fall off both ends onto null.
  CHECK(positions_of(fs, "abc", "left null") == std::vector<std::size_t>{0});
  CHECK(positions_of(fs, "abc", "right null") == std::vector<std::size_t>{2});

  // Complement of a position predicate stays in bounds; of a string
  // predicate it includes null.
  d = denotation(fs, fs.parse_word("ab"), typecheck(parse("!left null"), none), none);
  CHECK(d.positions == std::vector<std::size_t>{1});
  CHECK_FALSE(d.null_point);
  d = denotation(fs, fs.parse_word("ab"), typecheck(parse("!null"), none), none);
  CHECK(d.positions == std::vector<std::size_t>{0, 1});
  CHECK_FALSE(d.null_point);

  // The empty word has only the null point.
  d = denotation(fs, Word{}, typecheck(parse("null | left null"), none), none);
  CHECK(d.positions.empty());
  CHECK(d.null_point);
}

TEST_CASE("path equations") {
  const auto fs = abc();
  for (const char* w : {"a", "ab", "abcab", "ccc"}) {
    CHECK(positions_of(fs, w, "right left 'b' & !right null") == positions_of(fs, w, "head 'b' & !right null"));
    CHECK(positions_of(fs, w, "left right 'b' & !left null") == positions_of(fs, w, "head 'b' & !left null"));
  }
}

TEST_CASE("recursive Left on evle") {
  const auto& t = fixture::turkish();
  Pred p = t.parse_predicate("Left");
  auto d = denotation(t.features, fixture::word(t, "evle"), typecheck(p, t.definitions), t.definitions);
  CHECK(d.positions == std::vector<std::size_t>{1, 2, 3});
  // Hand-unrolled to depth two.
  Pred unrolled = t.parse_predicate("left head F | left head C & left left head F | left head C & left left head C & left left left head F");
  auto u = denotation(t.features, fixture::word(t, "evle"), typecheck(unrolled, t.definitions), t.definitions);
  CHECK(u.positions == d.positions);
}

TEST_CASE("harmony constraint") {
  const auto& t = fixture::turkish();
  const Constraint& h = *t.find_constraint("Harmony");
  CHECK(satisfies(t.features, fixture::word(t, "evler"), h, t.definitions).ok());
  auto r = satisfies(t.features, fixture::word(t, "evlar"), h, t.definitions);
  CHECK(r.positions == std::vector<std::size_t>{3});
  CHECK(count_violations(t.features, fixture::word(t, "evlarlar"), h, t.definitions) == 1);
  CHECK(count_violations(t.features, fixture::word(t, "gözleriniz"), h, t.definitions) == 0);

  // Empty site: vacuously satisfied.
  Constraint never = make_constraint("Never", parse("[-vowel]"), parse("[+vowel] & [-vowel]"), t.definitions);
  CHECK(satisfies(t.features, fixture::word(t, "evler"), never, t.definitions).ok());
}

TEST_CASE("clash counting") {
  const auto& s = fixture::stress();
  const Constraint& c = *s.find_constraint("NoClash");
  CHECK(count_violations(s.features, fixture::word(s, "++-"), c, s.definitions) == 1);
  CHECK(count_violations(s.features, fixture::word(s, "+++"), c, s.definitions) == 2);
  CHECK(count_violations(s.features, fixture::word(s, "+-+"), c, s.definitions) == 0);
}

TEST_CASE("compiled constraint agrees with satisfies") {
  const auto& t = fixture::turkish();
  for (const auto& c : t.constraints) {
    CompiledConstraint cc(t.features, c, t.definitions);
    CompiledPredicate::Scratch scratch;
    for (const char* w : {"evler", "evlar", "gözlar", "kolünüz", "ı", "tkt"}) {
      Word word = fixture::word(t, w);
      auto expect = satisfies(t.features, word, c, t.definitions).positions;
      std::vector<std::size_t> got;
      auto mask = cc.violations(word, scratch);
      for (std::size_t i = 0; i < word.size(); ++i)
        if (mask[i]) got.push_back(i);
      CHECK(got == expect);
    }
  }
}

TEST_CASE("Turkish definitions agree with the naive evaluator on short words") {
  const auto& t = fixture::turkish();
  oracle::Evaluator naive(t.features, t.definitions);
  for (const auto& [name, body] : t.definitions.all()) {
    Pred p = ref(name);
    CompiledPredicate cp(t.features, typecheck(p, t.definitions), t.definitions);
    for (std::size_t n = 0; n <= 3; ++n)
      for (const auto& w : oracle::all_words(t.features.segment_count(), n)) {
        auto mask = cp.evaluate(w);
        auto expect = naive.positions(p, w);
        bool same = true;
        for (std::size_t i = 0; i <= n; ++i) same = same && mask[i] == expect[i];
        if (!same) FAIL_CHECK(name << " on " << t.features.format_word(w));
      }
  }
}

TEST_CASE("mutual recursion and stratified negation") {
  const auto fs = abc();
  Definitions d;
  // Even/odd distance to the right edge.
  d.add("Even", parse("right null | right Odd"));
  d.add("Odd", parse("right Even"));
  d.add("NotEvenB", parse("!Even & 'b'"));
  oracle::Evaluator naive(fs, d);
  for (const char* name : {"Even", "Odd", "NotEvenB"}) {
    CompiledPredicate cp(fs, typecheck(ref(name), d), d);
    for (std::size_t n = 0; n <= 5; ++n)
      for (const auto& w : oracle::all_words(3, n)) {
        auto mask = cp.evaluate(w);
        auto expect = naive.positions(ref(name), w);
        for (std::size_t i = 0; i <= n; ++i) CHECK(mask[i] == expect[i]);
      }
  }
  CHECK(positions_of(fs, "aaaa", "Even", d) == std::vector<std::size_t>{1, 3});
  CHECK(positions_of(fs, "abab", "NotEvenB", d).empty());
  CHECK(positions_of(fs, "bbbb", "NotEvenB", d) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("alphabet definitions") {
  const auto fs = abc();
  Definitions d;
  d.add("AB", parse("'a' | 'b' | AB"));
  CompiledPredicate cp(fs, typecheck(ref("AB"), d), d);
  CHECK(cp.world() == World::Alphabet);
  CHECK(cp.segments() == std::vector<bool>{true, true, false});
  CHECK(positions_of(fs, "cab", "AB", d) == std::vector<std::size_t>{1, 2});
}
