#pragma once

// Binary feature systems, partial specifications, lexical forms and their
// candidate sets.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pho/error.hpp"

namespace pho {

using SegmentId = std::uint16_t;
using Word = std::vector<SegmentId>;

inline constexpr std::size_t kMaxFeatures = 64;
inline constexpr std::size_t kMaxWordLength = 127;
inline constexpr std::size_t kDefaultCap = 1'000'000;

// Partial map feature -> {+,-}. Bit k of `mask` set means feature k is
// valued; bit k of `values` then holds the value (1 = +).
struct PartialSpec {
  std::uint64_t mask = 0;
  std::uint64_t values = 0;

  bool specifies(std::size_t f) const { return (mask >> f) & 1u; }
  bool value(std::size_t f) const { return (values >> f) & 1u; }
  std::size_t size() const;  // number of feature tokens
  PartialSpec with(std::size_t f, bool plus) const;
  PartialSpec without(std::size_t f) const;
  // True when every value in `this` also appears in `other`.
  bool subsumes(const PartialSpec& other) const;

  friend bool operator==(const PartialSpec&, const PartialSpec&) = default;
};

struct Clash {
  std::size_t feature;
};

// Conjunction of two specifications; Clash names the lowest-indexed
// feature on which they disagree.
std::variant<PartialSpec, Clash> unify(const PartialSpec& a, const PartialSpec& b);

// Slot-wise generalization: the values shared by both specs.
PartialSpec intersect(const PartialSpec& a, const PartialSpec& b);

class FeatureSystem {
 public:
  struct Segment {
    std::string name;
    PartialSpec spec;  // total
  };

  FeatureSystem() = default;
  // Validates totality, distinctness and that classes use declared features.
  FeatureSystem(std::vector<std::string> features, std::vector<Segment> segments,
                std::vector<std::pair<std::string, PartialSpec>> classes = {});

  std::size_t feature_count() const { return features_.size(); }
  std::size_t segment_count() const { return segments_.size(); }
  const std::vector<std::string>& features() const { return features_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::string& feature_name(std::size_t f) const { return features_.at(f); }
  const Segment& segment(SegmentId s) const { return segments_.at(s); }
  const std::map<std::string, PartialSpec>& classes() const { return classes_; }

  std::optional<std::size_t> find_feature(std::string_view name) const;
  std::optional<SegmentId> find_segment(std::string_view name) const;
  const PartialSpec* find_class(std::string_view name) const;

  std::uint64_t full_mask() const;
  bool is_total(const PartialSpec& s) const { return s.mask == full_mask(); }

  // Segments whose total assignment extends `s`, in declaration order.
  std::vector<SegmentId> compatible_segments(const PartialSpec& s) const;

  // Largest t >= s with the same compatible segments. Throws SpecError when
  // no segment is compatible.
  PartialSpec redundancy_closure(const PartialSpec& s) const;

  // "[+a,-b]" (also "[]"), features in declaration order.
  PartialSpec parse_spec(std::string_view text) const;
  std::string format_spec(const PartialSpec& s) const;

  // Greedy longest-match segmentation of a word written without spaces;
  // whitespace between segments is ignored.
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w, std::string_view separator = "") const;
  std::vector<std::string> segment_names(const Word& w) const;

 private:
  std::vector<std::string> features_;
  std::vector<Segment> segments_;
  std::map<std::string, PartialSpec> classes_;
};

// A fixed-length sequence of partial specifications.
class LexicalForm {
 public:
  LexicalForm() = default;
  explicit LexicalForm(std::vector<PartialSpec> slots);

  std::size_t length() const { return slots_.size(); }
  const std::vector<PartialSpec>& slots() const { return slots_; }
  const PartialSpec& operator[](std::size_t i) const { return slots_[i]; }

  static LexicalForm from_word(const Word& w, const FeatureSystem& fs);
  LexicalForm concat(const LexicalForm& other) const;

  friend bool operator==(const LexicalForm&, const LexicalForm&) = default;

 private:
  std::vector<PartialSpec> slots_;
};

// Parses "e v l [+vowel] r" or "evl[+vowel]r": bracketed specs or segment
// names (longest match); whitespace is ignored.
LexicalForm parse_form(std::string_view text, const FeatureSystem& fs);

enum class SpecDisplay { Full, Relative };

// Segment names for total slots, bracketed specs otherwise. Relative display
// drops values constant across the largest declared proper class containing
// the slot's compatible segments.
std::string format_spec_display(const PartialSpec& s, const FeatureSystem& fs,
                                SpecDisplay mode = SpecDisplay::Relative);
std::string format_form(const LexicalForm& f, const FeatureSystem& fs,
                        SpecDisplay mode = SpecDisplay::Relative);

// Total number of feature tokens in a form.
std::size_t spec_size(const LexicalForm& f);

// The denotation of a lexical form: every fully specified word compatible
// with it, slot by slot.
class CandidateSet {
 public:
  CandidateSet() = default;
  CandidateSet(LexicalForm form, std::vector<Word> words);

  const LexicalForm& form() const { return form_; }
  const std::vector<Word>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  bool contains(const Word& w) const;

  // Members satisfying `keep`, generating form unchanged.
  template <typename Pred>
  CandidateSet filter(Pred keep) const {
    std::vector<Word> out;
    for (const auto& w : words_)
      if (keep(w)) out.push_back(w);
    return CandidateSet(form_, std::move(out), Sorted{});
  }

  friend bool operator==(const CandidateSet& a, const CandidateSet& b) {
    return a.words_ == b.words_;
  }

 private:
  struct Sorted {};
  CandidateSet(LexicalForm form, std::vector<Word> words, Sorted)
      : form_(std::move(form)), words_(std::move(words)) {}
  LexicalForm form_;
  std::vector<Word> words_;  // sorted by segment id sequence, distinct
};

// Cartesian product of the per-slot compatible segments. Throws EmptySlot or
// CapExceeded.
CandidateSet enumerate_candidates(const LexicalForm& form, const FeatureSystem& fs,
                                  std::size_t cap = kDefaultCap);

// Orders words by their segment-name sequences (used for printed output).
std::vector<Word> sorted_by_name(std::vector<Word> words, const FeatureSystem& fs);

}  // namespace pho
