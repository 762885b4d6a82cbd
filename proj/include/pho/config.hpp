#pragma once

// Engine configuration files (.pho).
//
// UTF-8, one declaration per line, `#` starts a comment:
//
//   feature vowel front round high
//   segment e [+vowel,+front,-round,-high]
//   class F [+vowel,+front]
//   define Left = (left head C & left Left) | left head F
//   constraint Harmony = head F | !Left @ V
//   default Stress by failures = head [+stress]
//   default Spread by position right near = head [-ATR] @ right head [-ATR]
//   theory turkish et
//     strict Harmony
//   end
//   lexicon evlVr = ev l [+vowel] r
//   allomorphs plural = lar ler
//   paradigm P10
//     - -
//     - +
//   end
//
// Inside a theory block: `lexical` (UT a-priori features), `strict`
// (constraint names), `rank` (default names highest first; OT also accepts
// constraint names, resolved by failure count) and `exceptions` (ET only:
// constraints usable as exception features without being imposed).

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pho/morphology.hpp"

namespace pho {

struct EngineConfig {
  FeatureSystem features;
  Definitions definitions;
  std::vector<Constraint> constraints;
  std::vector<Default> defaults;
  std::map<std::string, TheoryConfig> theories;
  std::vector<std::pair<std::string, AnnotatedForm>> lexicon;
  std::map<std::string, std::vector<Word>> allomorphs;
  std::map<std::string, ParadigmTable> paradigms;

  const Constraint* find_constraint(std::string_view name) const;
  const Default* find_default(std::string_view name) const;
  const AnnotatedForm* find_lexicon(std::string_view name) const;
  const TheoryConfig* find_theory(std::string_view name) const;

  // Parses a predicate against this config's classes and definitions.
  Pred parse_predicate(std::string_view text) const;
};

// Every error is a ConfigError carrying the offending line.
EngineConfig parse_config(std::string_view text);
EngineConfig load_config(const std::string& path);

// Throws NameError for an undeclared feature, segment, class or definition.
void check_names(const Pred& p, const FeatureSystem& fs, const Definitions& defs);

}  // namespace pho
