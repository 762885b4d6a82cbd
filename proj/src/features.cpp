#include "pho/features.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace pho {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

}  // namespace

std::size_t PartialSpec::size() const { return static_cast<std::size_t>(std::popcount(mask)); }

PartialSpec PartialSpec::with(std::size_t f, bool plus) const {
  PartialSpec s = *this;
  s.mask |= std::uint64_t{1} << f;
  if (plus)
    s.values |= std::uint64_t{1} << f;
  else
    s.values &= ~(std::uint64_t{1} << f);
  return s;
}

PartialSpec PartialSpec::without(std::size_t f) const {
  PartialSpec s = *this;
  s.mask &= ~(std::uint64_t{1} << f);
  s.values &= ~(std::uint64_t{1} << f);
  return s;
}

bool PartialSpec::subsumes(const PartialSpec& other) const {
  return (mask & ~other.mask) == 0 && ((values ^ other.values) & mask) == 0;
}

std::variant<PartialSpec, Clash> unify(const PartialSpec& a, const PartialSpec& b) {
  const std::uint64_t conflict = a.mask & b.mask & (a.values ^ b.values);
  if (conflict) return Clash{static_cast<std::size_t>(std::countr_zero(conflict))};
  return PartialSpec{a.mask | b.mask, (a.values & a.mask) | (b.values & b.mask)};
}

PartialSpec intersect(const PartialSpec& a, const PartialSpec& b) {
  const std::uint64_t shared = a.mask & b.mask & ~(a.values ^ b.values);
  return PartialSpec{shared, a.values & shared};
}

FeatureSystem::FeatureSystem(std::vector<std::string> features, std::vector<Segment> segments,
                             std::vector<std::pair<std::string, PartialSpec>> classes)
    : features_(std::move(features)), segments_(std::move(segments)) {
  if (features_.size() > kMaxFeatures)
    throw SpecError("at most " + std::to_string(kMaxFeatures) + " features are supported");
  std::set<std::string> seen;
  for (const auto& f : features_) {
    if (f.empty()) throw SpecError("empty feature name");
    if (!seen.insert(f).second) throw SpecError("feature '" + f + "' declared twice");
  }
  if (segments_.empty()) throw SpecError("feature system has no segments");
  if (segments_.size() > 0xFFFF) throw SpecError("too many segments");
  const std::uint64_t full = full_mask();
  std::set<std::string> names;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!names.insert(s.name).second) throw SpecError("segment '" + s.name + "' declared twice");
    if (s.spec.mask & ~full) throw SpecError("segment '" + s.name + "' uses an undeclared feature");
    if (s.spec.mask != full) {
      for (std::size_t f = 0; f < features_.size(); ++f)
        if (!s.spec.specifies(f))
          throw SpecError("segment '" + s.name + "' leaves feature '" + features_[f] +
                          "' unvalued");
    }
    for (std::size_t j = 0; j < i; ++j)
      if ((segments_[j].spec.values & full) == (s.spec.values & full))
        throw SpecError("segments '" + segments_[j].name + "' and '" + s.name +
                        "' have identical feature values");
  }
  for (auto& [name, spec] : classes) {
    if (spec.mask & ~full) throw SpecError("class '" + name + "' uses an undeclared feature");
    if (!classes_.emplace(name, spec).second)
      throw SpecError("class '" + name + "' declared twice");
  }
}

std::uint64_t FeatureSystem::full_mask() const {
  return features_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << features_.size()) - 1;
}

std::optional<std::size_t> FeatureSystem::find_feature(std::string_view name) const {
  for (std::size_t i = 0; i < features_.size(); ++i)
    if (features_[i] == name) return i;
  return std::nullopt;
}

std::optional<SegmentId> FeatureSystem::find_segment(std::string_view name) const {
  for (std::size_t i = 0; i < segments_.size(); ++i)
    if (segments_[i].name == name) return static_cast<SegmentId>(i);
  return std::nullopt;
}

const PartialSpec* FeatureSystem::find_class(std::string_view name) const {
  auto it = classes_.find(std::string(name));
  return it == classes_.end() ? nullptr : &it->second;
}

std::vector<SegmentId> FeatureSystem::compatible_segments(const PartialSpec& s) const {
  std::vector<SegmentId> out;
  for (std::size_t i = 0; i < segments_.size(); ++i)
    if (s.subsumes(segments_[i].spec)) out.push_back(static_cast<SegmentId>(i));
  return out;
}

PartialSpec FeatureSystem::redundancy_closure(const PartialSpec& s) const {
  const auto segs = compatible_segments(s);
  if (segs.empty()) throw SpecError("redundancy closure of " + format_spec(s) + " is undefined");
  PartialSpec closed = segments_[segs.front()].spec;
  for (SegmentId id : segs) closed = intersect(closed, segments_[id].spec);
  return closed;
}

PartialSpec FeatureSystem::parse_spec(std::string_view text) const {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && is_space(text[i])) ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '[')
    throw SpecError("expected '[' in specification '" + std::string(text) + "'");
  ++i;
  PartialSpec spec;
  skip();
  if (i < text.size() && text[i] == ']') {
    ++i;
  } else {
    for (;;) {
      skip();
      if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
        throw SpecError("expected '+' or '-' in specification '" + std::string(text) + "'");
      const bool plus = text[i] == '+';
      ++i;
      skip();
      const std::size_t start = i;
      while (i < text.size() && is_ident_char(text[i])) ++i;
      const auto name = text.substr(start, i - start);
      auto f = find_feature(name);
      if (!f) throw SpecError("undeclared feature '" + std::string(name) + "'");
      if (spec.specifies(*f) && spec.value(*f) != plus)
        throw SpecError("feature '" + std::string(name) + "' valued twice");
      spec = spec.with(*f, plus);
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ']') {
        ++i;
        break;
      }
      throw SpecError("expected ',' or ']' in specification '" + std::string(text) + "'");
    }
  }
  skip();
  if (i != text.size()) throw SpecError("trailing text after specification '" + std::string(text) + "'");
  return spec;
}

std::string FeatureSystem::format_spec(const PartialSpec& s) const {
  std::string out = "[";
  bool first = true;
  for (std::size_t f = 0; f < features_.size(); ++f) {
    if (!s.specifies(f)) continue;
    if (!first) out += ',';
    first = false;
    out += s.value(f) ? '+' : '-';
    out += features_[f];
  }
  return out + "]";
}

Word FeatureSystem::parse_word(std::string_view text) const {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t best_len = 0;
    SegmentId best = 0;
    for (std::size_t s = 0; s < segments_.size(); ++s) {
      const auto& n = segments_[s].name;
      if (n.size() > best_len && text.substr(i, n.size()) == n) {
        best_len = n.size();
        best = static_cast<SegmentId>(s);
      }
    }
    if (best_len == 0)
      throw SpecError("unknown segment at byte " + std::to_string(i) + " of '" + std::string(text) + "'");
    w.push_back(best);
    i += best_len;
  }
  return w;
}

std::string FeatureSystem::format_word(const Word& w, std::string_view separator) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += separator;
    out += segments_.at(w[i]).name;
  }
  return out;
}

std::vector<std::string> FeatureSystem::segment_names(const Word& w) const {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (SegmentId s : w) out.push_back(segments_.at(s).name);
  return out;
}

LexicalForm::LexicalForm(std::vector<PartialSpec> slots) : slots_(std::move(slots)) {
  if (slots_.empty()) throw SpecError("lexical form must have at least one slot");
  if (slots_.size() > kMaxWordLength)
    throw SpecError("lexical form longer than " + std::to_string(kMaxWordLength) + " slots");
}

LexicalForm LexicalForm::from_word(const Word& w, const FeatureSystem& fs) {
  std::vector<PartialSpec> slots;
  slots.reserve(w.size());
  for (SegmentId s : w) slots.push_back(fs.segment(s).spec);
  return LexicalForm(std::move(slots));
}

LexicalForm LexicalForm::concat(const LexicalForm& other) const {
  std::vector<PartialSpec> slots = slots_;
  slots.insert(slots.end(), other.slots_.begin(), other.slots_.end());
  return LexicalForm(std::move(slots));
}

LexicalForm parse_form(std::string_view text, const FeatureSystem& fs) {
  std::vector<PartialSpec> slots;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    if (text[i] == '[') {
      const auto close = text.find(']', i);
      if (close == std::string_view::npos) throw SpecError("unterminated '[' in form '" + std::string(text) + "'");
      slots.push_back(fs.parse_spec(text.substr(i, close - i + 1)));
      i = close + 1;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && !is_space(text[end]) && text[end] != '[') ++end;
    for (SegmentId s : fs.parse_word(text.substr(i, end - i))) slots.push_back(fs.segment(s).spec);
    i = end;
  }
  return LexicalForm(std::move(slots));
}

std::string format_spec_display(const PartialSpec& s, const FeatureSystem& fs, SpecDisplay mode) {
  if (fs.is_total(s)) {
    auto segs = fs.compatible_segments(s);
    if (segs.size() == 1) return fs.segment(segs.front()).name;
  }
  if (mode == SpecDisplay::Full) return fs.format_spec(s);

  const auto compatible = fs.compatible_segments(s);
  std::vector<SegmentId> context;  // all segments when no class fits
  for (SegmentId i = 0; i < fs.segment_count(); ++i) context.push_back(i);
  std::size_t best = 0;
  for (const auto& [name, cls] : fs.classes()) {
    auto members = fs.compatible_segments(cls);
    if (members.size() == fs.segment_count() || members.size() <= best) continue;
    if (!std::includes(members.begin(), members.end(), compatible.begin(), compatible.end())) continue;
    best = members.size();
    context = std::move(members);
  }
  PartialSpec shown = s;
  if (!context.empty()) {
    PartialSpec constant = fs.segment(context.front()).spec;
    for (SegmentId id : context) constant = intersect(constant, fs.segment(id).spec);
    for (std::size_t f = 0; f < fs.feature_count(); ++f)
      if (constant.specifies(f) && s.specifies(f) && constant.value(f) == s.value(f))
        shown = shown.without(f);
  }
  return fs.format_spec(shown);
}

std::string format_form(const LexicalForm& f, const FeatureSystem& fs, SpecDisplay mode) {
  std::string out;
  for (std::size_t i = 0; i < f.length(); ++i) {
    if (i) out += ' ';
    out += format_spec_display(f[i], fs, mode);
  }
  return out;
}

std::size_t spec_size(const LexicalForm& f) {
  std::size_t n = 0;
  for (const auto& s : f.slots()) n += s.size();
  return n;
}

CandidateSet::CandidateSet(LexicalForm form, std::vector<Word> words)
    : form_(std::move(form)), words_(std::move(words)) {
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

bool CandidateSet::contains(const Word& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

CandidateSet enumerate_candidates(const LexicalForm& form, const FeatureSystem& fs, std::size_t cap) {
  std::vector<std::vector<SegmentId>> domains;
  domains.reserve(form.length());
  double product = 1;
  for (std::size_t i = 0; i < form.length(); ++i) {
    domains.push_back(fs.compatible_segments(form[i]));
    if (domains.back().empty()) throw EmptySlot(i);
    product *= static_cast<double>(domains.back().size());
  }
  if (product > static_cast<double>(cap)) throw CapExceeded(product, cap);

  std::vector<Word> words;
  words.reserve(static_cast<std::size_t>(product));
  std::vector<std::size_t> odometer(form.length(), 0);
  Word current(form.length());
  for (std::size_t i = 0; i < form.length(); ++i) current[i] = domains[i][0];
  for (;;) {
    words.push_back(current);
    std::size_t k = form.length();
    while (k > 0) {
      --k;
      if (++odometer[k] < domains[k].size()) {
        current[k] = domains[k][odometer[k]];
        break;
      }
      odometer[k] = 0;
      current[k] = domains[k][0];
      if (k == 0) return CandidateSet(form, std::move(words));
    }
  }
}

std::vector<Word> sorted_by_name(std::vector<Word> words, const FeatureSystem& fs) {
  std::sort(words.begin(), words.end(), [&](const Word& a, const Word& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](SegmentId x, SegmentId y) {
                                          return fs.segment(x).name < fs.segment(y).name;
                                        });
  });
  return words;
}

}  // namespace pho
