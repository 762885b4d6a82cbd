#include <doctest.h>

#include <functional>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace pho;

namespace {

std::vector<std::string> spelled(const CandidateSet& s, const FeatureSystem& fs) {
  std::vector<std::string> out;
  for (const auto& w : sorted_by_name(s.words(), fs)) out.push_back(fs.format_word(w));
  return out;
}

std::vector<Constraint> strict_of(const EngineConfig& cfg, std::initializer_list<const char*> names) {
  std::vector<Constraint> out;
  for (const char* n : names) out.push_back(*cfg.find_constraint(n));
  return out;
}

CandidateSet clash_free(std::size_t n, const std::string& fixed = {}) {
  const auto& s = fixture::stress();
  std::string text;
  for (std::size_t i = 0; i < n; ++i) {
    char c = fixed.empty() ? '.' : fixed[i];
    text += c == '.' ? "[] " : std::string(1, c) + " ";
  }
  auto strict = strict_of(s, {"NoClash"});
  return apply_strict(enumerate_candidates(parse_form(text, s.features), s.features), strict, s.features,
                      s.definitions);
}

}  // namespace

TEST_CASE("impose is consistent-or-skip") {
  const auto& s = fixture::stress();
  const auto& fs = s.features;
  const TypedPredicate stressed = s.find_default("Stress")->value;
  auto all = enumerate_candidates(parse_form("[] []", fs), fs);

  auto r = impose(all, stressed, 0, fs, s.definitions);
  CHECK(r.applied);
  CHECK(spelled(r.set, fs) == std::vector<std::string>{"++", "+-"});

  // Everyone already satisfies: applied, unchanged.
  auto again = impose(r.set, stressed, 0, fs, s.definitions);
  CHECK(again.applied);
  CHECK(again.set == r.set);

  // A singleton that fails is left alone.
  auto single = enumerate_candidates(parse_form("- -", fs), fs);
  auto skipped = impose(single, stressed, 1, fs, s.definitions);
  CHECK_FALSE(skipped.applied);
  CHECK(skipped.set == single);
}

TEST_CASE("round after front is skipped in kVtV") {
  const auto& t = fixture::turkish();
  const auto& fs = t.features;
  auto strict = strict_of(t, {"NoFrontAfterRound"});
  auto s = apply_strict(enumerate_candidates(parse_form("k [+vowel] t [+vowel]", fs), fs), strict, fs, t.definitions);
  const Default& front = *t.find_default("Front");
  const Default& round = *t.find_default("Round");
  std::vector<std::size_t> all{0, 1, 2, 3};
  s = impose_at(s, front, all, fs, t.definitions);
  DerivationTrace trace;
  std::vector<std::size_t> v1{1};
  auto after = impose_at(s, round, v1, fs, t.definitions, &trace);
  CHECK(after == s);
  REQUIRE(trace.steps().size() == 1);
  CHECK_FALSE(trace.steps()[0].applied);
}

TEST_CASE("by-feature schedule") {
  const auto& t = fixture::turkish();
  std::vector<Default> ds{*t.find_default("Front"), *t.find_default("Round")};
  std::vector<std::string> rank{"Round", "Front"};
  auto sched = schedule_by_feature(ds, rank, 3);
  REQUIRE(sched.size() == 6);
  CHECK(sched[0].def->name == "Round");
  CHECK(sched[2].position == 2);
  CHECK(sched[3].def->name == "Front");
  CHECK(sched[3].position == 0);

  std::vector<std::string> partial{"Front"};
  CHECK_THROWS_AS(schedule_by_feature(ds, partial, 3), RankError);

  std::vector<Default> one{*t.find_default("Front")};
  std::vector<std::string> just{"Front"};
  sched = schedule_by_feature(one, just, 2);
  CHECK(sched.size() == 2);
  CHECK(sched[1].position == 1);
}

TEST_CASE("kVtV depends on default order") {
  const auto& t = fixture::turkish();
  const auto& fs = t.features;
  const auto form = parse_form("k [+vowel] t [+vowel]", fs);
  auto strict = strict_of(t, {"NoFrontAfterRound"});
  const Default& front = *t.find_default("Front");
  const Default& round = *t.find_default("Round");

  // Independent replay on the 8x8 vowel grid.
  auto spec = [&](const std::string& v) { return fs.segment(*fs.find_segment(v)).spec; };
  auto is = [&](const std::string& v, const char* f) { return spec(v).value(*fs.find_feature(f)); };
  const std::vector<std::string> vowels{"a", "e", "ı", "i", "o", "ö", "u", "ü"};
  auto replay = [&](std::vector<const char*> order) {
    std::vector<std::pair<std::string, std::string>> s;
    for (const auto& a : vowels)
      for (const auto& b : vowels)
        if (!(is(a, "round") && is(b, "front"))) s.emplace_back(a, b);
    for (const char* f : order)
      for (int slot : {0, 1}) {
        std::vector<std::pair<std::string, std::string>> kept;
        for (const auto& p : s)
          if (is(slot == 0 ? p.first : p.second, f)) kept.push_back(p);
        if (!kept.empty()) s = kept;
      }
    std::vector<std::string> out;
    for (const auto& [a, b] : s) out.push_back("k" + a + "t" + b);
    std::sort(out.begin(), out.end());
    return out;
  };

  std::vector<Default> fr{front, round};
  auto d = derive(form, strict, fr, fs, t.definitions);
  CHECK(spelled(d.result, fs) == std::vector<std::string>{"ketö", "ketü", "kitö", "kitü"});
  CHECK(spelled(d.result, fs) == replay({"front", "round"}));

  std::vector<Default> rf{round, front};
  d = derive(form, strict, rf, fs, t.definitions);
  CHECK(spelled(d.result, fs) == std::vector<std::string>{"köto", "kötu", "küto", "kütu"});
  CHECK(spelled(d.result, fs) == replay({"round", "front"}));
}

TEST_CASE("failure count on stress grids") {
  const auto& s = fixture::stress();
  const Default& stress = *s.find_default("Stress");
  auto r = minimize_failures(clash_free(9), stress, s.features, s.definitions);
  CHECK(spelled(r, s.features) == std::vector<std::string>{"+-+-+-+-+"});

  r = minimize_failures(clash_free(8), stress, s.features, s.definitions);
  CHECK(r.size() == 5);
  for (const auto& w : spelled(r, s.features)) CHECK(std::count(w.begin(), w.end(), '+') == 4);
  CHECK(spelled(r, s.features) == oracle::stress_argmax("........"));

  r = minimize_failures(clash_free(9, "........-"), stress, s.features, s.definitions);
  CHECK(r.size() == 5);
  CHECK(spelled(r, s.features).front() == "+-+-+-+--");
  CHECK(spelled(r, s.features) == oracle::stress_argmax("........-"));
}

TEST_CASE("failure count ties are kept and traced globally") {
  const auto& s = fixture::stress();
  DerivationTrace trace;
  auto r = minimize_failures(clash_free(2), *s.find_default("Stress"), s.features, s.definitions, &trace);
  CHECK(spelled(r, s.features) == std::vector<std::string>{"+-", "-+"});
  REQUIRE(trace.steps().size() == 1);
  CHECK_FALSE(trace.steps()[0].position.has_value());
  CHECK(trace.steps()[0].before == 3);
  CHECK(trace.steps()[0].after == 2);
}

TEST_CASE("directional sweep") {
  const auto& s = fixture::stress();
  const Default& d = *s.find_default("Stress");
  auto r = directional_sweep(clash_free(8), d, Edge::Left, Direction::Near, s.features, s.definitions);
  CHECK(spelled(r, s.features) == std::vector<std::string>{"+-+-+-+-"});
  r = directional_sweep(clash_free(9), d, Edge::Left, Direction::Near, s.features, s.definitions);
  CHECK(spelled(r, s.features) == std::vector<std::string>{"+-+-+-+-+"});
  r = directional_sweep(clash_free(8), d, Edge::Right, Direction::Near, s.features, s.definitions);
  CHECK(spelled(r, s.features) == std::vector<std::string>{"-+-+-+-+"});
  // Far from the left edge is near the right one.
  auto far = directional_sweep(clash_free(8), d, Edge::Left, Direction::Far, s.features, s.definitions);
  CHECK(far == r);

  auto one = enumerate_candidates(parse_form("- + -", s.features), s.features);
  CHECK(directional_sweep(one, d, Edge::Left, Direction::Near, s.features, s.definitions) == one);

  for (std::size_t n = 1; n <= 10; ++n) {
    r = directional_sweep(clash_free(n), d, Edge::Left, Direction::Near, s.features, s.definitions);
    CHECK(spelled(r, s.features) == oracle::stress_leftmost(std::string(n, '.')));
  }
}

TEST_CASE("derive") {
  const auto& t = fixture::turkish();
  const auto& fs = t.features;
  auto strict = strict_of(t, {"Harmony"});
  auto d = derive(parse_form("e v l [+vowel] r", fs), strict, {}, fs, t.definitions);
  CHECK(spelled(d.result, fs) == std::vector<std::string>{"evler", "evlir", "evlör", "evlür"});
  d = derive(parse_form("e v l [+vowel,-round,-high] r", fs), strict, {}, fs, t.definitions);
  CHECK(spelled(d.result, fs) == std::vector<std::string>{"evler"});

  // No strict constraints, no defaults: plain enumeration.
  const auto form = parse_form("[+vowel] t", fs);
  CHECK(derive(form, {}, {}, fs, t.definitions).result == enumerate_candidates(form, fs));

  CHECK_THROWS_AS(derive(parse_form("e v l a r", fs), strict, {}, fs, t.definitions), StrictContradiction);
  CHECK_THROWS_AS(derive(parse_form("[+vowel] [+vowel] [+vowel]", fs), strict, {}, fs, t.definitions, 100),
                  CapExceeded);
}

TEST_CASE("trace text") {
  const auto& s = fixture::stress();
  std::vector<Constraint> strict = strict_of(s, {"NoClash"});
  std::vector<Default> ds{*s.find_default("StressLR")};
  auto d = derive(parse_form("[] []", s.features), strict, ds, s.features, s.definitions);
  CHECK(d.trace.to_text() ==
        "step 1: default StressLR at 0: applied, |S| 3→1\n"
        "step 2: default StressLR at 1: skipped, |S| 1→1\n");
  for (const auto& step : d.trace.steps()) {
    CHECK(step.after <= step.before);
    if (!step.applied) CHECK(step.after == step.before);
  }
  CHECK(to_string(OrderingScheme::by_position(Edge::Right, Direction::Far)) == "position right far");
}
