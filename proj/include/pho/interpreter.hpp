#pragma once

// Model-theoretic evaluation of typed predicates over pointed strings.
//
// A word of length n is read as the positions 0..n-1 (the non-null strings)
// plus one shared null point. left(i) = i-1, right(i) = i+1, and both fall
// off the ends onto the null point; head(i) = word[i]. In a PositionMask,
// bit i is position i and bit n is the null point.

#include <bitset>
#include <optional>
#include <string>
#include <vector>

#include "pho/features.hpp"
#include "pho/predicate.hpp"

namespace pho {

using PositionMask = std::bitset<kMaxWordLength + 1>;

PositionMask in_bounds(std::size_t length);
PositionMask null_point(std::size_t length);

// A predicate flattened for repeated evaluation. Alphabet-typed subterms and
// definitions are solved once at construction; position-typed recursive
// definitions are solved per word as least fixpoints, component by
// component in dependency order. Immutable and shareable across threads.
class CompiledPredicate {
 public:
  CompiledPredicate(const FeatureSystem& fs, const TypedPredicate& p, const Definitions& defs);

  World world() const { return world_; }

  // For alphabet-typed predicates: membership by segment id.
  const std::vector<bool>& segments() const { return alphabet_; }

  // Denotation over the word's positions (and null point). An alphabet-typed
  // predicate is read as `head p`.
  PositionMask evaluate(const Word& w) const;

  struct Scratch {
    std::vector<PositionMask> values;
    std::vector<PositionMask> defs;
  };
  PositionMask evaluate(const Word& w, Scratch& scratch) const;

 private:
  enum class OpKind { Lift, Null, Not, And, Or, Left, Right, Ref };
  struct Op {
    OpKind kind;
    World world;
    int a = -1;
    int b = -1;
    int index = -1;  // Lift: alphabet set; Ref: definition slot
  };
  struct DefBody {
    int first_op;
    int result_op;
  };
  struct Component {
    std::vector<int> defs;
    bool recursive;
  };

  void run_ops(int first, int last, std::size_t n, Scratch& s) const;

  World world_;
  std::vector<bool> alphabet_;
  std::vector<std::vector<bool>> lift_sets_;
  std::vector<Op> ops_;
  std::vector<DefBody> def_bodies_;
  std::vector<Component> components_;
  std::vector<int> lift_ops_;
  int root_first_ = 0;
  int root_op_ = -1;

  friend class PredicateCompiler;
};

struct Denotation {
  World world;
  std::vector<std::size_t> positions;  // position worlds
  bool null_point = false;             // String world only
  std::vector<SegmentId> segments;     // alphabet world
};

Denotation denotation(const FeatureSystem& fs, const Word& w, const TypedPredicate& p,
                      const Definitions& defs);

// Position-typed view of a predicate; alphabet predicates become `head p`.
TypedPredicate as_position(const TypedPredicate& p);

enum class ConstraintKind { Strict, DefaultSource };

struct Constraint {
  std::string name;
  TypedPredicate body;
  std::optional<TypedPredicate> site;  // everywhere when absent
  ConstraintKind kind = ConstraintKind::Strict;
};

// Typechecks body and site and lifts alphabet predicates to positions.
Constraint make_constraint(std::string name, const Pred& body, const Pred& site, const Definitions& defs,
                           ConstraintKind kind = ConstraintKind::Strict);

struct ViolationReport {
  std::vector<std::size_t> positions;
  bool ok() const { return positions.empty(); }
};

ViolationReport satisfies(const FeatureSystem& fs, const Word& w, const Constraint& c,
                          const Definitions& defs);
std::size_t count_violations(const FeatureSystem& fs, const Word& w, const Constraint& c,
                             const Definitions& defs);

// Body and site compiled together; violations(w) = I(site) \ I(body).
class CompiledConstraint {
 public:
  CompiledConstraint(const FeatureSystem& fs, const Constraint& c, const Definitions& defs);
  const std::string& name() const { return name_; }
  PositionMask violations(const Word& w) const;
  PositionMask violations(const Word& w, CompiledPredicate::Scratch& scratch) const;
  std::size_t count(const Word& w) const { return violations(w).count(); }

 private:
  std::string name_;
  CompiledPredicate body_;
  std::optional<CompiledPredicate> site_;
};

}  // namespace pho
