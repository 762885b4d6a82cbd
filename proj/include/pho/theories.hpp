#pragma once

// Underspecification Theory, Optimality Theory and Exception Theory as
// configurations of the defaults engine.
//
//                      UT         OT         ET
//   a priori features  yes        no         no
//   defaults           yes        yes        no
//   by feature         primary    primary    -
//   by failure count   -          secondary  -
//   by position        secondary  -          -
//
// The constructors reject any default whose scheme falls outside its column.

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pho/defaults.hpp"

namespace pho {

class UtTheory {
 public:
  // `defaults` in rank order; each must be ByPosition (or ByFeature, read as
  // left to right). Empty `lexical_features` means every feature.
  UtTheory(std::vector<std::string> lexical_features, std::vector<Constraint> strict,
           std::vector<Default> defaults);

  const std::vector<std::string>& lexical_features() const { return lexical_; }
  const std::vector<Constraint>& strict() const { return strict_; }
  const std::vector<Default>& defaults() const { return defaults_; }

 private:
  std::vector<std::string> lexical_;
  std::vector<Constraint> strict_;
  std::vector<Default> defaults_;
};

class OtTheory {
 public:
  // `ranked` highest first; every entry must be ByFailureCount.
  OtTheory(std::vector<Constraint> strict, std::vector<Default> ranked);

  const std::vector<Constraint>& strict() const { return strict_; }
  const std::vector<Default>& ranked() const { return ranked_; }

 private:
  std::vector<Constraint> strict_;
  std::vector<Default> ranked_;
};

class EtTheory {
 public:
  // Every strict constraint is also an exception feature; `exception_features`
  // adds constraints usable in lexical forms without being imposed.
  explicit EtTheory(std::vector<Constraint> strict, std::span<const Default> defaults = {},
                    std::vector<Constraint> exception_features = {});

  const std::vector<Constraint>& strict() const { return strict_; }
  const std::vector<Constraint>& exception_features() const { return exception_features_; }

 private:
  std::vector<Constraint> strict_;
  std::vector<Constraint> exception_features_;
};

using TheoryConfig = std::variant<UtTheory, OtTheory, EtTheory>;

std::string_view theory_kind(const TheoryConfig& t);
const std::vector<Constraint>& strict_constraints(const TheoryConfig& t);

// A feature per constraint whose value at a position is whether the
// constraint body holds there.
class ExceptionFeatureSystem {
 public:
  ExceptionFeatureSystem(const FeatureSystem& base, std::vector<Constraint> constraints,
                         const Definitions& defs);

  const FeatureSystem& base() const { return *base_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::optional<std::size_t> find(std::string_view name) const;
  bool value(const Word& w, std::size_t position, std::size_t constraint) const;

 private:
  const FeatureSystem* base_;
  std::vector<Constraint> constraints_;
  std::vector<CompiledPredicate> bodies_;
};

struct ExceptionLiteral {
  std::size_t slot;
  std::string constraint;
  bool plus;
};

// A lexical form plus exception-feature literals (ET only).
struct AnnotatedForm {
  LexicalForm form;
  std::vector<ExceptionLiteral> exceptions;
};

// Like parse_form, but bracket values naming one of `exception_names`
// become exception literals.
AnnotatedForm parse_annotated_form(std::string_view text, const FeatureSystem& fs,
                                   std::span<const std::string> exception_names);

// Redundancy closure per slot, then derive with the UT schedule. Throws
// TheoryError if an underspecified slot uses a non-lexical feature.
Derivation ut_derive(const LexicalForm& form, const UtTheory& cfg, const FeatureSystem& fs,
                     const Definitions& defs, std::size_t cap = kDefaultCap);

// Strict constraints, then minimize_failures per ranked constraint.
Derivation ot_derive(const LexicalForm& form, const OtTheory& cfg, const FeatureSystem& fs,
                     const Definitions& defs, std::size_t cap = kDefaultCap);

// Enumeration intersected with the strict constraints and exception literals.
// Throws StrictContradiction when the strict constraints alone empty the set.
CandidateSet et_interpret(const AnnotatedForm& form, const EtTheory& cfg, const FeatureSystem& fs,
                          const Definitions& defs, std::size_t cap = kDefaultCap);

struct MinimizedForm {
  LexicalForm form;
  std::size_t spec_size;
};

// Greedily drops feature tokens while et_interpret stays {w}: rightmost slot
// first, features in declaration order; slots before `first_slot` are kept
// fully specified.
MinimizedForm et_minimize(const Word& w, const EtTheory& cfg, const FeatureSystem& fs, const Definitions& defs,
                          std::size_t first_slot = 0, std::size_t cap = kDefaultCap);

// Dispatches on the theory. Exception literals are only accepted by ET.
Derivation derive_with(const TheoryConfig& theory, const AnnotatedForm& form, const FeatureSystem& fs,
                       const Definitions& defs, std::size_t cap = kDefaultCap);

}  // namespace pho
