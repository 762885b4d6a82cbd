#include "pho/defaults.hpp"

#include <algorithm>
#include <limits>

namespace pho {

std::string to_string(const OrderingScheme& s) {
  switch (s.kind) {
    case OrderingScheme::Kind::ByFeature: return "feature";
    case OrderingScheme::Kind::ByFailureCount: return "failures";
    case OrderingScheme::Kind::ByPosition:
      return std::string("position ") + (s.edge == Edge::Left ? "left" : "right") + " " +
             (s.direction == Direction::Near ? "near" : "far");
  }
  return "?";
}

Default make_default(std::string name, const Pred& value, const Pred& site, const Definitions& defs,
                     OrderingScheme scheme) {
  Default d{std::move(name), as_position(typecheck(value, defs)), std::nullopt, scheme};
  if (site) d.site = as_position(typecheck(site, defs));
  return d;
}

Default as_failure_count_default(const Constraint& c) {
  return Default{c.name, c.body, c.site, OrderingScheme::by_failure_count()};
}

void DerivationTrace::append(const DerivationTrace& other) {
  steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
}

std::string DerivationTrace::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const auto& s = steps_[i];
    out += "step " + std::to_string(i + 1) + ": default " + s.default_name + " at " +
           (s.position ? std::to_string(*s.position) : std::string("global")) + ": " +
           (s.applied ? "applied" : "skipped") + ", |S| " + std::to_string(s.before) + "→" +
           std::to_string(s.after) + "\n";
  }
  return out;
}

namespace {

// Site and value of one default, compiled once.
class CompiledDefault {
 public:
  CompiledDefault(const Default& d, const FeatureSystem& fs, const Definitions& defs)
      : value_(fs, d.value, defs) {
    if (d.site) site_.emplace(fs, *d.site, defs);
  }

  // Positions where the default is violated: site holds, value fails.
  PositionMask failures(const Word& w) {
    const PositionMask inb = in_bounds(w.size());
    const PositionMask site = site_ ? site_->evaluate(w, scratch_) & inb : inb;
    return site & ~value_.evaluate(w, scratch_);
  }

 private:
  CompiledPredicate value_;
  std::optional<CompiledPredicate> site_;
  CompiledPredicate::Scratch scratch_;
};

ImposeResult impose_filter(const CandidateSet& s, auto&& keep) {
  CandidateSet next = s.filter(keep);
  if (next.empty()) return {s, false};
  return {std::move(next), true};
}

CandidateSet impose_positions(const CandidateSet& s, const Default& d, CompiledDefault& cd,
                              std::span<const std::size_t> positions, DerivationTrace* trace) {
  CandidateSet current = s;
  for (std::size_t i : positions) {
    const std::size_t before = current.size();
    auto r = impose_filter(current, [&](const Word& w) { return i >= w.size() || !cd.failures(w).test(i); });
    current = std::move(r.set);
    if (trace) trace->add({d.name, i, r.applied, before, current.size()});
  }
  return current;
}

}  // namespace

ImposeResult impose(const CandidateSet& s, const TypedPredicate& p, std::size_t position, const FeatureSystem& fs,
                    const Definitions& defs) {
  CompiledPredicate cp(fs, as_position(p), defs);
  CompiledPredicate::Scratch scratch;
  return impose_filter(s, [&](const Word& w) { return cp.evaluate(w, scratch).test(position); });
}

std::vector<ScheduledStep> schedule_by_feature(std::span<const Default> defaults, std::span<const std::string> rank,
                                               std::size_t length) {
  std::vector<std::pair<std::size_t, const Default*>> ranked;
  for (const auto& d : defaults) {
    auto it = std::find(rank.begin(), rank.end(), d.name);
    if (it == rank.end()) throw RankError("default '" + d.name + "' is not ranked");
    ranked.emplace_back(static_cast<std::size_t>(it - rank.begin()), &d);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ScheduledStep> out;
  for (const auto& [r, d] : ranked)
    for (std::size_t i = 0; i < length; ++i) out.push_back({d, i});
  return out;
}

CandidateSet minimize_failures(const CandidateSet& s, const Default& d, const FeatureSystem& fs,
                               const Definitions& defs, DerivationTrace* trace) {
  CompiledDefault cd(d, fs, defs);
  std::vector<std::size_t> counts;
  counts.reserve(s.size());
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& w : s.words()) {
    counts.push_back(cd.failures(w).count());
    best = std::min(best, counts.back());
  }
  std::size_t k = 0;
  CandidateSet out = s.filter([&](const Word&) { return counts[k++] == best; });
  if (trace) trace->add({d.name, std::nullopt, true, s.size(), out.size()});
  return out;
}

CandidateSet directional_sweep(const CandidateSet& s, const Default& d, Edge edge, Direction dir,
                               const FeatureSystem& fs, const Definitions& defs, DerivationTrace* trace) {
  if (s.empty()) return s;
  const std::size_t n = s.form().length();
  std::vector<std::size_t> positions;
  for (std::size_t dist = 0; dist < n; ++dist) positions.push_back(edge == Edge::Left ? dist : n - 1 - dist);
  if (dir == Direction::Far) std::reverse(positions.begin(), positions.end());
  CompiledDefault cd(d, fs, defs);
  return impose_positions(s, d, cd, positions, trace);
}

CandidateSet impose_at(const CandidateSet& s, const Default& d, std::span<const std::size_t> positions,
                       const FeatureSystem& fs, const Definitions& defs, DerivationTrace* trace) {
  CompiledDefault cd(d, fs, defs);
  return impose_positions(s, d, cd, positions, trace);
}

CandidateSet apply_strict(const CandidateSet& s, std::span<const Constraint> strict, const FeatureSystem& fs,
                          const Definitions& defs) {
  std::vector<CompiledConstraint> compiled;
  compiled.reserve(strict.size());
  for (const auto& c : strict) compiled.emplace_back(fs, c, defs);
  CompiledPredicate::Scratch scratch;
  return s.filter([&](const Word& w) {
    return std::all_of(compiled.begin(), compiled.end(),
                       [&](const CompiledConstraint& c) { return c.violations(w, scratch).none(); });
  });
}

Derivation apply_defaults(const CandidateSet& s, std::span<const Default> ordered, const FeatureSystem& fs,
                          const Definitions& defs) {
  Derivation out{s, {}};
  for (const auto& d : ordered) {
    switch (d.scheme.kind) {
      case OrderingScheme::Kind::ByFeature: {
        std::vector<std::size_t> positions(out.result.form().length());
        for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
        out.result = impose_at(out.result, d, positions, fs, defs, &out.trace);
        break;
      }
      case OrderingScheme::Kind::ByFailureCount:
        out.result = minimize_failures(out.result, d, fs, defs, &out.trace);
        break;
      case OrderingScheme::Kind::ByPosition:
        out.result = directional_sweep(out.result, d, d.scheme.edge, d.scheme.direction, fs, defs, &out.trace);
        break;
    }
  }
  return out;
}

Derivation derive(const LexicalForm& form, std::span<const Constraint> strict, std::span<const Default> ordered,
                  const FeatureSystem& fs, const Definitions& defs, std::size_t cap) {
  CandidateSet s = apply_strict(enumerate_candidates(form, fs, cap), strict, fs, defs);
  if (s.empty()) {
    std::vector<std::string> names;
    for (const auto& c : strict) names.push_back(c.name);
    throw StrictContradiction(std::move(names));
  }
  return apply_defaults(s, ordered, fs, defs);
}

}  // namespace pho
