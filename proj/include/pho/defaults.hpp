#pragma once

// Ordered defaults over candidate sets. A default is imposed only when the
// result is non-empty; otherwise it is skipped and logged, never retried.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pho/features.hpp"
#include "pho/interpreter.hpp"
#include "pho/predicate.hpp"

namespace pho {

enum class Edge { Left, Right };
enum class Direction { Near, Far };

struct OrderingScheme {
  enum class Kind { ByFeature, ByFailureCount, ByPosition };
  Kind kind = Kind::ByFeature;
  Edge edge = Edge::Left;            // ByPosition only
  Direction direction = Direction::Near;

  static OrderingScheme by_feature() { return {}; }
  static OrderingScheme by_failure_count() { return {Kind::ByFailureCount}; }
  static OrderingScheme by_position(Edge e, Direction d) { return {Kind::ByPosition, e, d}; }
};

std::string to_string(const OrderingScheme& s);

struct Default {
  std::string name;
  TypedPredicate value;                // position-typed
  std::optional<TypedPredicate> site;  // everywhere when absent
  OrderingScheme scheme;
};

Default make_default(std::string name, const Pred& value, const Pred& site, const Definitions& defs,
                     OrderingScheme scheme = OrderingScheme::by_feature());

// A strict constraint resolved by failure count (how OT ranks constraints).
Default as_failure_count_default(const Constraint& c);

struct TraceStep {
  std::string default_name;
  std::optional<std::size_t> position;  // nullopt = global step
  bool applied;
  std::size_t before;
  std::size_t after;
};

class DerivationTrace {
 public:
  void add(TraceStep s) { steps_.push_back(std::move(s)); }
  const std::vector<TraceStep>& steps() const { return steps_; }
  void append(const DerivationTrace& other);
  // One line per step: "step N: default D at i: applied|skipped, |S| a→b".
  std::string to_text() const;

 private:
  std::vector<TraceStep> steps_;
};

struct ImposeResult {
  CandidateSet set;
  bool applied;
};

// {w in S : i in I_w(p)} when non-empty, S otherwise.
ImposeResult impose(const CandidateSet& s, const TypedPredicate& p, std::size_t position,
                    const FeatureSystem& fs, const Definitions& defs);

struct ScheduledStep {
  const Default* def;
  std::size_t position;
};

// Every position of the highest-ranked default first (left to right), then
// the next default. Throws RankError when a default is missing from `rank`.
std::vector<ScheduledStep> schedule_by_feature(std::span<const Default> defaults,
                                               std::span<const std::string> rank, std::size_t length);

// Members of S whose violation count for d is minimal; ties retained.
CandidateSet minimize_failures(const CandidateSet& s, const Default& d, const FeatureSystem& fs,
                               const Definitions& defs, DerivationTrace* trace = nullptr);

// Imposes d at distance 0,1,2,... from the edge (Near) or the reverse (Far).
CandidateSet directional_sweep(const CandidateSet& s, const Default& d, Edge edge, Direction dir,
                               const FeatureSystem& fs, const Definitions& defs,
                               DerivationTrace* trace = nullptr);

// Imposes d at the given positions in order.
CandidateSet impose_at(const CandidateSet& s, const Default& d, std::span<const std::size_t> positions,
                       const FeatureSystem& fs, const Definitions& defs, DerivationTrace* trace = nullptr);

// Members satisfying every strict constraint.
CandidateSet apply_strict(const CandidateSet& s, std::span<const Constraint> strict, const FeatureSystem& fs,
                          const Definitions& defs);

struct Derivation {
  CandidateSet result;
  DerivationTrace trace;
};

// Enumerate, intersect with the strict constraints (StrictContradiction if
// that empties the set), then apply each default, in the given order, by its
// own scheme. ByFeature defaults are imposed left to right.
Derivation derive(const LexicalForm& form, std::span<const Constraint> strict,
                  std::span<const Default> ordered, const FeatureSystem& fs, const Definitions& defs,
                  std::size_t cap = kDefaultCap);

// Applies ordered defaults to an existing set (the second half of derive).
Derivation apply_defaults(const CandidateSet& s, std::span<const Default> ordered, const FeatureSystem& fs,
                          const Definitions& defs);

}  // namespace pho
