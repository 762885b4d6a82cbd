#include "pho/interpreter.hpp"

#include <algorithm>
#include <set>

namespace pho {

PositionMask in_bounds(std::size_t length) {
  PositionMask m;
  if (length == 0) return m;
  m.set();
  return m >> (m.size() - length);
}

PositionMask null_point(std::size_t length) {
  PositionMask m;
  m.set(length);
  return m;
}

class PredicateCompiler {
 public:
  PredicateCompiler(const FeatureSystem& fs, const Definitions& defs, CompiledPredicate& out)
      : fs_(fs), defs_(defs), out_(out), worlds_(infer_definition_worlds(defs)) {}

  void compile(const TypedPredicate& root) {
    std::set<std::string, std::less<>> reachable;
    std::vector<std::string> todo = references(root.ast);
    while (!todo.empty()) {
      auto name = todo.back();
      todo.pop_back();
      if (!reachable.insert(name).second) continue;
      for (auto& r : references(defs_.body(name))) todo.push_back(r);
    }

    for (const auto& comp : definition_components(defs_)) {
      if (!reachable.contains(comp.front())) continue;
      if (worlds_.at(comp.front()) == World::Alphabet) {
        solve_alphabet_component(comp);
        continue;
      }
      CompiledPredicate::Component c;
      c.recursive = comp.size() > 1;
      for (const auto& name : comp) {
        const int slot = static_cast<int>(out_.def_bodies_.size());
        def_slot_[name] = slot;
        out_.def_bodies_.push_back({});
        c.defs.push_back(slot);
        auto refs = references(defs_.body(name));
        if (std::find(refs.begin(), refs.end(), name) != refs.end()) c.recursive = true;
      }
      for (const auto& name : comp) {
        auto& body = out_.def_bodies_[def_slot_.at(name)];
        body.first_op = static_cast<int>(out_.ops_.size());
        body.result_op = emit(defs_.body(name));
      }
      out_.components_.push_back(std::move(c));
    }

    out_.world_ = root.world;
    if (root.world == World::Alphabet) out_.alphabet_ = alphabet(root.ast);
    out_.root_first_ = static_cast<int>(out_.ops_.size());
    out_.root_op_ = emit(root.ast);
  }

 private:
  World world_of(const Pred& p) const { return typecheck(p, worlds_).world; }

  std::vector<bool> alphabet(const Pred& p) {
    const std::size_t n = fs_.segment_count();
    return std::visit(
        [&](const auto& x) -> std::vector<bool> {
          using X = std::decay_t<decltype(x)>;
          std::vector<bool> out(n, false);
          if constexpr (std::is_same_v<X, FeatLit>) {
            auto f = fs_.find_feature(x.feature);
            if (!f) throw NameError("undeclared feature '" + x.feature + "'");
            for (std::size_t s = 0; s < n; ++s) out[s] = fs_.segments()[s].spec.value(*f) == x.plus;
          } else if constexpr (std::is_same_v<X, SegLit>) {
            auto s = fs_.find_segment(x.segment);
            if (!s) throw NameError("undeclared segment '" + x.segment + "'");
            out[*s] = true;
          } else if constexpr (std::is_same_v<X, ClassRef>) {
            const PartialSpec* spec = fs_.find_class(x.name);
            if (!spec) throw NameError("undeclared class '" + x.name + "'");
            for (SegmentId s : fs_.compatible_segments(*spec)) out[s] = true;
          } else if constexpr (std::is_same_v<X, Not>) {
            out = alphabet(x.operand);
            out.flip();
          } else if constexpr (std::is_same_v<X, And>) {
            auto a = alphabet(x.lhs), b = alphabet(x.rhs);
            for (std::size_t s = 0; s < n; ++s) out[s] = a[s] && b[s];
          } else if constexpr (std::is_same_v<X, Or>) {
            auto a = alphabet(x.lhs), b = alphabet(x.rhs);
            for (std::size_t s = 0; s < n; ++s) out[s] = a[s] || b[s];
          } else if constexpr (std::is_same_v<X, DefRef>) {
            out = alphabet_defs_.at(x.name);
          } else {
            throw TypeError(to_string(p), "not an alphabet predicate");
          }
          return out;
        },
        p->v);
  }

  void solve_alphabet_component(const std::vector<std::string>& comp) {
    for (const auto& name : comp) alphabet_defs_[name] = std::vector<bool>(fs_.segment_count(), false);
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& name : comp) {
        auto v = alphabet(defs_.body(name));
        if (v != alphabet_defs_[name]) {
          alphabet_defs_[name] = std::move(v);
          changed = true;
        }
      }
    }
  }

  int push(CompiledPredicate::Op op) {
    out_.ops_.push_back(op);
    return static_cast<int>(out_.ops_.size()) - 1;
  }

  int lift(const Pred& alphabet_pred) {
    using K = CompiledPredicate::OpKind;
    out_.lift_sets_.push_back(alphabet(alphabet_pred));
    const int op = push({K::Lift, World::NonNullString, -1, -1, static_cast<int>(out_.lift_sets_.size()) - 1});
    out_.lift_ops_.push_back(op);
    return op;
  }

  int emit(const Pred& p) {
    using K = CompiledPredicate::OpKind;
    const World w = world_of(p);
    if (w == World::Alphabet) return lift(p);
    return std::visit(
        [&](const auto& x) -> int {
          using X = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<X, Null>) {
            return push({K::Null, w});
          } else if constexpr (std::is_same_v<X, Not>) {
            const int a = emit(x.operand);
            return push({K::Not, w, a});
          } else if constexpr (std::is_same_v<X, And>) {
            const int a = emit(x.lhs);
            const int b = emit(x.rhs);
            return push({K::And, w, a, b});
          } else if constexpr (std::is_same_v<X, Or>) {
            const int a = emit(x.lhs);
            const int b = emit(x.rhs);
            return push({K::Or, w, a, b});
          } else if constexpr (std::is_same_v<X, Apply>) {
            if (x.functor == Functor::Head) return lift(x.operand);
            const int a = emit(x.operand);
            return push({x.functor == Functor::Left ? K::Left : K::Right, w, a});
          } else if constexpr (std::is_same_v<X, DefRef>) {
            return push({K::Ref, w, -1, -1, def_slot_.at(x.name)});
          } else {
            throw TypeError(to_string(p), "unexpected alphabet literal in position context");
          }
        },
        p->v);
  }

  const FeatureSystem& fs_;
  const Definitions& defs_;
  CompiledPredicate& out_;
  std::map<std::string, World, std::less<>> worlds_;
  std::map<std::string, int, std::less<>> def_slot_;
  std::map<std::string, std::vector<bool>, std::less<>> alphabet_defs_;
};

CompiledPredicate::CompiledPredicate(const FeatureSystem& fs, const TypedPredicate& p, const Definitions& defs) {
  PredicateCompiler(fs, defs, *this).compile(p);
}

void CompiledPredicate::run_ops(int first, int last, std::size_t n, Scratch& s) const {
  const PositionMask inb = in_bounds(n);
  for (int i = first; i <= last; ++i) {
    const Op& op = ops_[i];
    PositionMask& out = s.values[i];
    switch (op.kind) {
      case OpKind::Lift: break;  // filled per word
      case OpKind::Null: out = null_point(n); break;
      case OpKind::Not:
        out = (op.world == World::String ? (inb | null_point(n)) : inb) & ~s.values[op.a];
        break;
      case OpKind::And: out = s.values[op.a] & s.values[op.b]; break;
      case OpKind::Or: out = s.values[op.a] | s.values[op.b]; break;
      case OpKind::Left: {
        const PositionMask& x = s.values[op.a];
        out = (x << 1) & inb;
        if (n > 0 && x.test(n)) out.set(0);
        break;
      }
      case OpKind::Right: out = (s.values[op.a] >> 1) & inb; break;
      case OpKind::Ref: out = s.defs[op.index]; break;
    }
  }
}

PositionMask CompiledPredicate::evaluate(const Word& w) const {
  Scratch s;
  return evaluate(w, s);
}

PositionMask CompiledPredicate::evaluate(const Word& w, Scratch& s) const {
  const std::size_t n = w.size();
  if (n > kMaxWordLength) throw SpecError("word longer than " + std::to_string(kMaxWordLength) + " segments");
  s.values.resize(ops_.size());
  s.defs.resize(def_bodies_.size());
  for (int op : lift_ops_) {
    const auto& set = lift_sets_[ops_[op].index];
    PositionMask m;
    for (std::size_t i = 0; i < n; ++i)
      if (set[w[i]]) m.set(i);
    s.values[op] = m;
  }
  for (const auto& comp : components_) {
    for (int d : comp.defs) s.defs[d].reset();
    bool changed = true;
    while (changed) {
      changed = false;
      for (int d : comp.defs) {
        run_ops(def_bodies_[d].first_op, def_bodies_[d].result_op, n, s);
        const PositionMask& v = s.values[def_bodies_[d].result_op];
        if (v != s.defs[d]) {
          s.defs[d] = v;
          changed = true;
        }
      }
      if (!comp.recursive) break;
    }
  }
  run_ops(root_first_, root_op_, n, s);
  return s.values[root_op_];
}

Denotation denotation(const FeatureSystem& fs, const Word& w, const TypedPredicate& p, const Definitions& defs) {
  CompiledPredicate cp(fs, p, defs);
  Denotation d{p.world, {}, false, {}};
  if (p.world == World::Alphabet) {
    for (std::size_t s = 0; s < fs.segment_count(); ++s)
      if (cp.segments()[s]) d.segments.push_back(static_cast<SegmentId>(s));
    return d;
  }
  const PositionMask m = cp.evaluate(w);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (m.test(i)) d.positions.push_back(i);
  d.null_point = m.test(w.size());
  return d;
}

TypedPredicate as_position(const TypedPredicate& p) {
  if (p.world == World::Alphabet) return TypedPredicate{head(p.ast), World::NonNullString};
  return p;
}

Constraint make_constraint(std::string name, const Pred& body, const Pred& site, const Definitions& defs,
                           ConstraintKind kind) {
  Constraint c{std::move(name), as_position(typecheck(body, defs)), std::nullopt, kind};
  if (site) c.site = as_position(typecheck(site, defs));
  return c;
}

CompiledConstraint::CompiledConstraint(const FeatureSystem& fs, const Constraint& c, const Definitions& defs)
    : name_(c.name), body_(fs, c.body, defs) {
  if (c.site) site_.emplace(fs, *c.site, defs);
}

PositionMask CompiledConstraint::violations(const Word& w) const {
  CompiledPredicate::Scratch s;
  return violations(w, s);
}

PositionMask CompiledConstraint::violations(const Word& w, CompiledPredicate::Scratch& scratch) const {
  const PositionMask inb = in_bounds(w.size());
  const PositionMask site = site_ ? site_->evaluate(w, scratch) & inb : inb;
  return site & ~body_.evaluate(w, scratch);
}

ViolationReport satisfies(const FeatureSystem& fs, const Word& w, const Constraint& c, const Definitions& defs) {
  const PositionMask v = CompiledConstraint(fs, c, defs).violations(w);
  ViolationReport r;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (v.test(i)) r.positions.push_back(i);
  return r;
}

std::size_t count_violations(const FeatureSystem& fs, const Word& w, const Constraint& c, const Definitions& defs) {
  return CompiledConstraint(fs, c, defs).count(w);
}

}  // namespace pho
