#pragma once

// Seeded random generators shared by the property tests and the acceptance
// binary.

#include <random>

#include "fixtures.hpp"

namespace gen {

using namespace pho;

constexpr std::size_t kCases = 1000;

inline std::mt19937& rng() {
  static std::mt19937 engine(20261016);
  return engine;
}

inline std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng()); }

inline PartialSpec random_spec(std::size_t features) {
  const std::uint64_t all = (std::uint64_t{1} << features) - 1;
  std::uniform_int_distribution<std::uint64_t> bits(0, all);
  const std::uint64_t mask = bits(rng()) & bits(rng());  // sparser than uniform
  return {mask, bits(rng()) & mask};
}

// A spec with at least one compatible segment.
inline PartialSpec random_live_spec(const FeatureSystem& fs) {
  for (;;) {
    auto s = random_spec(fs.feature_count());
    if (!fs.compatible_segments(s).empty()) return s;
  }
}

inline Word random_word(std::size_t segments, std::size_t length) {
  Word w(length);
  for (auto& s : w) s = static_cast<SegmentId>(pick(segments));
  return w;
}

inline FeatureSystem abc() { return FeatureSystem({"p", "q"}, {{"a", {3, 0}}, {"b", {3, 1}}, {"c", {3, 2}}}); }

inline Definitions abc_defs() {
  Definitions d;
  d.add("Even", parse("right null | right Odd"));
  d.add("Odd", parse("right Even"));
  d.add("AB", parse("'a' | 'b' | AB"));
  d.add("AfterA", parse("left head 'a' | left AfterA"));
  d.add("NotAfterA", parse("!AfterA & !null"));
  return d;
}

inline Pred random_alphabet(int depth) {
  switch (depth <= 0 ? pick(3) : pick(6)) {
    case 0: return seg(std::string(1, static_cast<char>('a' + pick(3))));
    case 1: return feat(pick(2) ? "p" : "q", pick(2));
    case 2: return ref("AB");
    case 3: return neg(random_alphabet(depth - 1));
    case 4: return conj(random_alphabet(depth - 1), random_alphabet(depth - 1));
    default: return disj(random_alphabet(depth - 1), random_alphabet(depth - 1));
  }
}

inline Pred random_pred(int depth) {
  static const char* names[] = {"Even", "Odd", "AfterA", "NotAfterA"};
  switch (depth <= 0 ? pick(3) : pick(9)) {
    case 0: return random_alphabet(0);
    case 1: return null_pred();
    case 2: return ref(names[pick(4)]);
    case 3: return neg(random_pred(depth - 1));
    case 4: return conj(random_pred(depth - 1), random_pred(depth - 1));
    case 5: return disj(random_pred(depth - 1), random_pred(depth - 1));
    case 6: return left(random_pred(depth - 1));
    case 7: return right(random_pred(depth - 1));
    default: return head(random_alphabet(depth - 1));
  }
}

inline std::vector<bool> mask_of(const CompiledPredicate& cp, const Word& w) {
  auto m = cp.evaluate(w);
  std::vector<bool> out(w.size() + 1);
  for (std::size_t i = 0; i <= w.size(); ++i) out[i] = m[i];
  return out;
}

// Position-level truth of p on w: alphabet predicates are read at each
// segment.
inline std::vector<bool> truth(const FeatureSystem& fs, const Definitions& defs, const Pred& p, const Word& w) {
  return mask_of(CompiledPredicate(fs, as_position(typecheck(p, defs)), defs), w);
}

}  // namespace gen
