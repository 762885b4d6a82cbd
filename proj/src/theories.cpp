#include "pho/theories.hpp"

#include <algorithm>

namespace pho {

UtTheory::UtTheory(std::vector<std::string> lexical_features, std::vector<Constraint> strict,
                   std::vector<Default> defaults)
    : lexical_(std::move(lexical_features)), strict_(std::move(strict)), defaults_(std::move(defaults)) {
  for (const auto& d : defaults_)
    if (d.scheme.kind == OrderingScheme::Kind::ByFailureCount)
      throw TheoryError("UT orders defaults by feature and position; '" + d.name + "' is ordered by failure count");
}

OtTheory::OtTheory(std::vector<Constraint> strict, std::vector<Default> ranked)
    : strict_(std::move(strict)), ranked_(std::move(ranked)) {
  if (ranked_.empty()) throw TheoryError("OT needs at least one ranked constraint");
  for (const auto& d : ranked_)
    if (d.scheme.kind != OrderingScheme::Kind::ByFailureCount)
      throw TheoryError("OT orders each constraint by failure count; '" + d.name + "' is ordered by " +
                        to_string(d.scheme));
}

EtTheory::EtTheory(std::vector<Constraint> strict, std::span<const Default> defaults,
                   std::vector<Constraint> exception_features)
    : strict_(std::move(strict)), exception_features_(std::move(exception_features)) {
  if (!defaults.empty()) throw TheoryError("ET uses no defaults; '" + defaults.front().name + "' given");
}

std::string_view theory_kind(const TheoryConfig& t) {
  static constexpr std::string_view kinds[] = {"ut", "ot", "et"};
  return kinds[t.index()];
}

const std::vector<Constraint>& strict_constraints(const TheoryConfig& t) {
  return std::visit([](const auto& x) -> const std::vector<Constraint>& { return x.strict(); }, t);
}

ExceptionFeatureSystem::ExceptionFeatureSystem(const FeatureSystem& base, std::vector<Constraint> constraints,
                                               const Definitions& defs)
    : base_(&base), constraints_(std::move(constraints)) {
  for (const auto& c : constraints_) bodies_.emplace_back(base, c.body, defs);
}

std::optional<std::size_t> ExceptionFeatureSystem::find(std::string_view name) const {
  for (std::size_t i = 0; i < constraints_.size(); ++i)
    if (constraints_[i].name == name) return i;
  return std::nullopt;
}

bool ExceptionFeatureSystem::value(const Word& w, std::size_t position, std::size_t constraint) const {
  return bodies_.at(constraint).evaluate(w).test(position);
}

AnnotatedForm parse_annotated_form(std::string_view text, const FeatureSystem& fs,
                                   std::span<const std::string> exception_names) {
  // Strip exception values out of each bracket, then parse the remainder.
  std::string plain;
  std::vector<ExceptionLiteral> exceptions;
  std::size_t slot = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '[') {
      const std::size_t next = text.find('[', i);
      const auto chunk = text.substr(i, next == std::string_view::npos ? std::string_view::npos : next - i);
      bool blank = std::all_of(chunk.begin(), chunk.end(), [](char c) { return c == ' ' || c == '\t'; });
      if (!blank) slot += fs.parse_word(chunk).size();
      plain += chunk;
      if (next == std::string_view::npos) break;
      i = next;
      continue;
    }
    const std::size_t close = text.find(']', i);
    if (close == std::string_view::npos) throw SpecError("unterminated '[' in form '" + std::string(text) + "'");
    std::string kept;
    std::size_t start = i + 1;
    while (start < close) {
      std::size_t comma = text.find(',', start);
      if (comma == std::string_view::npos || comma > close) comma = close;
      std::string tok(text.substr(start, comma - start));
      tok.erase(std::remove_if(tok.begin(), tok.end(), [](char c) { return c == ' ' || c == '\t'; }), tok.end());
      if (!tok.empty()) {
        const std::string name = tok.substr(1);
        if ((tok[0] == '+' || tok[0] == '-') &&
            std::find(exception_names.begin(), exception_names.end(), name) != exception_names.end() &&
            !fs.find_feature(name)) {
          exceptions.push_back({slot, name, tok[0] == '+'});
        } else {
          if (!kept.empty()) kept += ',';
          kept += tok;
        }
      }
      start = comma + 1;
    }
    plain += "[" + kept + "]";
    ++slot;
    i = close + 1;
  }
  return AnnotatedForm{parse_form(plain, fs), std::move(exceptions)};
}

Derivation ut_derive(const LexicalForm& form, const UtTheory& cfg, const FeatureSystem& fs, const Definitions& defs,
                     std::size_t cap) {
  if (!cfg.lexical_features().empty()) {
    std::uint64_t lexical = 0;
    for (const auto& name : cfg.lexical_features()) {
      auto f = fs.find_feature(name);
      if (!f) throw TheoryError("unknown lexical feature '" + name + "'");
      lexical |= std::uint64_t{1} << *f;
    }
    for (std::size_t i = 0; i < form.length(); ++i)
      if (!fs.is_total(form[i]) && (form[i].mask & ~lexical))
        throw TheoryError("slot " + std::to_string(i) + " is specified outside the lexical features");
  }
  std::vector<PartialSpec> closed;
  for (std::size_t i = 0; i < form.length(); ++i) {
    if (fs.compatible_segments(form[i]).empty()) throw EmptySlot(i);
    closed.push_back(fs.redundancy_closure(form[i]));
  }
  return derive(LexicalForm(std::move(closed)), cfg.strict(), cfg.defaults(), fs, defs, cap);
}

Derivation ot_derive(const LexicalForm& form, const OtTheory& cfg, const FeatureSystem& fs, const Definitions& defs,
                     std::size_t cap) {
  return derive(form, cfg.strict(), cfg.ranked(), fs, defs, cap);
}

CandidateSet et_interpret(const AnnotatedForm& form, const EtTheory& cfg, const FeatureSystem& fs,
                          const Definitions& defs, std::size_t cap) {
  CandidateSet s = apply_strict(enumerate_candidates(form.form, fs, cap), cfg.strict(), fs, defs);
  if (s.empty()) {
    std::vector<std::string> names;
    for (const auto& c : cfg.strict()) names.push_back(c.name);
    throw StrictContradiction(std::move(names));
  }
  if (form.exceptions.empty()) return s;
  std::vector<Constraint> features = cfg.strict();
  features.insert(features.end(), cfg.exception_features().begin(), cfg.exception_features().end());
  ExceptionFeatureSystem efs(fs, std::move(features), defs);
  std::vector<std::pair<std::size_t, const ExceptionLiteral*>> lits;
  for (const auto& e : form.exceptions) {
    auto idx = efs.find(e.constraint);
    if (!idx) throw NameError("'" + e.constraint + "' is not a constraint of this theory");
    if (e.slot >= form.form.length()) throw SpecError("exception literal outside the form");
    lits.emplace_back(*idx, &e);
  }
  return s.filter([&](const Word& w) {
    return std::all_of(lits.begin(), lits.end(),
                       [&](const auto& l) { return efs.value(w, l.second->slot, l.first) == l.second->plus; });
  });
}

MinimizedForm et_minimize(const Word& w, const EtTheory& cfg, const FeatureSystem& fs, const Definitions& defs,
                          std::size_t first_slot, std::size_t cap) {
  LexicalForm form = LexicalForm::from_word(w, fs);
  auto singleton = [&](const LexicalForm& f) {
    CandidateSet s = et_interpret(AnnotatedForm{f, {}}, cfg, fs, defs, cap);
    return s.size() == 1 && s.words().front() == w;
  };
  et_interpret(AnnotatedForm{form, {}}, cfg, fs, defs, cap);  // throws when w itself violates
  for (std::size_t slot = w.size(); slot-- > first_slot;) {
    for (std::size_t f = 0; f < fs.feature_count(); ++f) {
      if (!form[slot].specifies(f)) continue;
      std::vector<PartialSpec> slots = form.slots();
      slots[slot] = slots[slot].without(f);
      LexicalForm candidate(std::move(slots));
      if (singleton(candidate)) form = std::move(candidate);
    }
  }
  return MinimizedForm{form, spec_size(form)};
}

Derivation derive_with(const TheoryConfig& theory, const AnnotatedForm& form, const FeatureSystem& fs,
                       const Definitions& defs, std::size_t cap) {
  if (!form.exceptions.empty() && !std::holds_alternative<EtTheory>(theory))
    throw TheoryError("exception features are only interpreted by ET");
  return std::visit(
      [&](const auto& t) -> Derivation {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, UtTheory>) {
          return ut_derive(form.form, t, fs, defs, cap);
        } else if constexpr (std::is_same_v<T, OtTheory>) {
          return ot_derive(form.form, t, fs, defs, cap);
        } else {
          CandidateSet s = et_interpret(form, t, fs, defs, cap);
          if (s.empty()) {
            std::vector<std::string> names;
            for (const auto& c : t.strict()) names.push_back(c.name);
            throw StrictContradiction(std::move(names));
          }
          return Derivation{std::move(s), {}};
        }
      },
      theory);
}

}  // namespace pho
