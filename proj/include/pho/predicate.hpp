#pragma once

// The modal predicate language over strings: syntax trees, concrete syntax,
// world typing and stratification of recursive definitions.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pho/error.hpp"

namespace pho {

struct Node;
using Pred = std::shared_ptr<const Node>;

enum class Functor { Left, Right, Head };

struct FeatLit {
  std::string feature;
  bool plus;
};
struct SegLit {
  std::string segment;
};
struct ClassRef {
  std::string name;
};
struct Null {};
struct Not {
  Pred operand;
};
struct And {
  Pred lhs, rhs;
};
struct Or {
  Pred lhs, rhs;
};
struct Apply {
  Functor functor;
  Pred operand;
};
struct DefRef {
  std::string name;
};

struct Node {
  std::variant<FeatLit, SegLit, ClassRef, Null, Not, And, Or, Apply, DefRef> v;
};

// Constructors.
Pred feat(std::string feature, bool plus);
Pred seg(std::string segment);
Pred cls(std::string name);
Pred null_pred();
Pred neg(Pred p);
Pred conj(Pred a, Pred b);
Pred disj(Pred a, Pred b);
Pred left(Pred p);
Pred right(Pred p);
Pred head(Pred p);
Pred ref(std::string name);

bool equal(const Pred& a, const Pred& b);

// Concrete syntax with minimal parentheses; parse(to_string(p)) == p.
std::string to_string(const Pred& p);

// Decides whether a bare NAME is a class reference (otherwise a definition
// reference). Without a classifier every NAME is a DefRef.
using NameClassifier = std::function<bool(std::string_view)>;

// Grammar:
//   pred  := or ; or := and { "|" and } ; and := unary { "&" unary }
//   unary := "!" unary | "left" unary | "right" unary | "head" unary | atom
//   atom  := "null" | "[" sign feat { "," sign feat } "]" | "'" segment "'"
//          | NAME | "(" pred ")"
// "∧", "∨", "¬" are accepted for "&", "|", "!". A bracket with several
// values parses as a left-nested conjunction of feature literals.
Pred parse(std::string_view text, const NameClassifier& is_class = {});

// World types, ordered by implicit upward coercion: an alphabet predicate in
// a position context reads as `head p`, and a position predicate is a
// string predicate false at the null point.
enum class World { Alphabet, NonNullString, String };

std::string_view to_string(World w);

class Definitions {
 public:
  void add(std::string name, Pred body);
  bool contains(std::string_view name) const;
  const Pred& body(std::string_view name) const;  // throws NameError
  const std::map<std::string, Pred, std::less<>>& all() const { return bodies_; }
  std::size_t size() const { return bodies_.size(); }

 private:
  std::map<std::string, Pred, std::less<>> bodies_;
};

// The fixed string signature: left/right: nonnullstring -> string,
// head: nonnullstring -> alphabet.
struct ModelSignature {
  static World domain(Functor) { return World::NonNullString; }
  static World codomain(Functor f) { return f == Functor::Head ? World::Alphabet : World::String; }
};

struct TypedPredicate {
  Pred ast;
  World world;
};

// World of every definition, solved as a least fixpoint over the coercion
// order. Throws TypeError / NameError.
std::map<std::string, World, std::less<>> infer_definition_worlds(const Definitions& defs);

TypedPredicate typecheck(const Pred& ast, const Definitions& defs);
TypedPredicate typecheck(const Pred& ast, const std::map<std::string, World, std::less<>>& def_worlds);

// Rejects any definition referring to a member of its own recursive
// component under negation. Throws CycleError / NameError.
void check_stratified(const Definitions& defs);

// Definitions referenced directly by `p`.
std::vector<std::string> references(const Pred& p);

// Strongly connected components of the definition graph in dependency
// order (callees before callers).
std::vector<std::vector<std::string>> definition_components(const Definitions& defs);

}  // namespace pho
