#include "pho/predicate.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

namespace pho {

namespace {

Pred make(auto&& alt) { return std::make_shared<const Node>(Node{std::forward<decltype(alt)>(alt)}); }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Pred feat(std::string feature, bool plus) { return make(FeatLit{std::move(feature), plus}); }
Pred seg(std::string segment) { return make(SegLit{std::move(segment)}); }
Pred cls(std::string name) { return make(ClassRef{std::move(name)}); }
Pred null_pred() { return make(Null{}); }
Pred neg(Pred p) { return make(Not{std::move(p)}); }
Pred conj(Pred a, Pred b) { return make(And{std::move(a), std::move(b)}); }
Pred disj(Pred a, Pred b) { return make(Or{std::move(a), std::move(b)}); }
Pred left(Pred p) { return make(Apply{Functor::Left, std::move(p)}); }
Pred right(Pred p) { return make(Apply{Functor::Right, std::move(p)}); }
Pred head(Pred p) { return make(Apply{Functor::Head, std::move(p)}); }
Pred ref(std::string name) { return make(DefRef{std::move(name)}); }

bool equal(const Pred& a, const Pred& b) {
  if (a->v.index() != b->v.index()) return false;
  return std::visit(
      overloaded{
          [&](const FeatLit& x) {
            const auto& y = std::get<FeatLit>(b->v);
            return x.feature == y.feature && x.plus == y.plus;
          },
          [&](const SegLit& x) { return x.segment == std::get<SegLit>(b->v).segment; },
          [&](const ClassRef& x) { return x.name == std::get<ClassRef>(b->v).name; },
          [&](const Null&) { return true; },
          [&](const Not& x) { return equal(x.operand, std::get<Not>(b->v).operand); },
          [&](const And& x) {
            const auto& y = std::get<And>(b->v);
            return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
          },
          [&](const Or& x) {
            const auto& y = std::get<Or>(b->v);
            return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
          },
          [&](const Apply& x) {
            const auto& y = std::get<Apply>(b->v);
            return x.functor == y.functor && equal(x.operand, y.operand);
          },
          [&](const DefRef& x) { return x.name == std::get<DefRef>(b->v).name; },
      },
      a->v);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum Prec { kOr = 1, kAnd = 2, kUnary = 3 };

std::string functor_name(Functor f) {
  switch (f) {
    case Functor::Left: return "left";
    case Functor::Right: return "right";
    case Functor::Head: return "head";
  }
  return "?";
}

std::string print(const Pred& p, int ctx) {
  auto wrap = [&](std::string s, int own) { return own < ctx ? "(" + s + ")" : s; };
  return std::visit(
      overloaded{
          [](const FeatLit& x) { return std::string("[") + (x.plus ? "+" : "-") + x.feature + "]"; },
          [](const SegLit& x) { return "'" + x.segment + "'"; },
          [](const ClassRef& x) { return x.name; },
          [](const Null&) { return std::string("null"); },
          [&](const Not& x) { return wrap("!" + print(x.operand, kUnary), kUnary); },
          [&](const And& x) { return wrap(print(x.lhs, kAnd) + " & " + print(x.rhs, kUnary), kAnd); },
          [&](const Or& x) { return wrap(print(x.lhs, kOr) + " | " + print(x.rhs, kAnd), kOr); },
          [&](const Apply& x) {
            return wrap(functor_name(x.functor) + " " + print(x.operand, kUnary), kUnary);
          },
          [](const DefRef& x) { return x.name; },
      },
      p->v);
}

}  // namespace

std::string to_string(const Pred& p) { return print(p, 0); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

constexpr std::string_view kAnd8 = "\xE2\x88\xA7";  // ∧
constexpr std::string_view kOr8 = "\xE2\x88\xA8";   // ∨
constexpr std::string_view kNot8 = "\xC2\xAC";      // ¬

bool name_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}
bool name_char(unsigned char c) { return name_start(c) || (c >= '0' && c <= '9'); }

class Parser {
 public:
  Parser(std::string_view text, const NameClassifier& is_class) : text_(text), is_class_(is_class) {}

  Pred run() {
    Pred p = parse_or();
    skip();
    if (pos_ != text_.size()) fail({"'|'", "'&'", "end of input"});
    return p;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  bool starts(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  bool accept(char c, std::string_view alias = {}) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    if (!alias.empty() && starts(alias)) {
      pos_ += alias.size();
      return true;
    }
    return false;
  }

  bool at_operator_alias() const { return starts(kAnd8) || starts(kOr8) || starts(kNot8); }

  // Reads a NAME at the current position without consuming it.
  std::string_view peek_name() {
    skip();
    std::size_t i = pos_;
    if (i >= text_.size() || !name_start(static_cast<unsigned char>(text_[i])) || at_operator_alias())
      return {};
    while (i < text_.size() && name_char(static_cast<unsigned char>(text_[i]))) {
      auto rest = text_.substr(i);
      if (rest.starts_with(kAnd8) || rest.starts_with(kOr8) || rest.starts_with(kNot8)) break;
      ++i;
    }
    return text_.substr(pos_, i - pos_);
  }

  std::string found() const {
    if (pos_ >= text_.size()) return {};
    std::size_t n = 1;
    while (pos_ + n < text_.size() && (static_cast<unsigned char>(text_[pos_ + n]) & 0xC0) == 0x80) ++n;
    return std::string(text_.substr(pos_, n));
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip();
    throw SyntaxError(pos_, std::move(expected), found());
  }

  Pred parse_or() {
    Pred p = parse_and();
    while (accept('|', kOr8)) p = disj(p, parse_and());
    return p;
  }

  Pred parse_and() {
    Pred p = parse_unary();
    while (accept('&', kAnd8)) p = conj(p, parse_unary());
    return p;
  }

  Pred parse_unary() {
    if (accept('!', kNot8)) return neg(parse_unary());
    auto name = peek_name();
    if (name == "left" || name == "right" || name == "head") {
      pos_ += name.size();
      Pred operand = parse_unary();
      if (name == "left") return left(operand);
      if (name == "right") return right(operand);
      return head(operand);
    }
    return parse_atom();
  }

  Pred parse_atom() {
    static const std::vector<std::string> kAtom = {"'!'", "'left'", "'right'", "'head'", "'null'",
                                                   "'['",  "segment literal", "NAME", "'('"};
    skip();
    if (accept('(')) {
      Pred p = parse_or();
      if (!accept(')')) fail({"')'", "'|'", "'&'"});
      return p;
    }
    if (accept('[')) return parse_bracket();
    if (accept('\'')) {
      const auto close = text_.find('\'', pos_);
      if (close == std::string_view::npos || close == pos_) fail({"segment name followed by \"'\""});
      std::string name(text_.substr(pos_, close - pos_));
      pos_ = close + 1;
      return seg(std::move(name));
    }
    auto name = peek_name();
    if (name.empty()) fail(kAtom);
    pos_ += name.size();
    if (name == "null") return null_pred();
    std::string n(name);
    if (is_class_ && is_class_(n)) return cls(std::move(n));
    return ref(std::move(n));
  }

  Pred parse_bracket() {
    Pred result;
    for (;;) {
      bool plus;
      if (accept('+'))
        plus = true;
      else if (accept('-'))
        plus = false;
      else
        fail({"'+'", "'-'"});
      auto name = peek_name();
      if (name.empty()) fail({"feature name"});
      pos_ += name.size();
      Pred lit = feat(std::string(name), plus);
      result = result ? conj(result, lit) : lit;
      if (accept(',')) continue;
      if (accept(']')) return result;
      fail({"','", "']'"});
    }
  }

  std::string_view text_;
  const NameClassifier& is_class_;
  std::size_t pos_ = 0;
};

}  // namespace

Pred parse(std::string_view text, const NameClassifier& is_class) { return Parser(text, is_class).run(); }

std::string_view to_string(World w) {
  switch (w) {
    case World::Alphabet: return "alphabet";
    case World::NonNullString: return "nonnullstring";
    case World::String: return "string";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Definitions

void Definitions::add(std::string name, Pred body) {
  if (bodies_.contains(name)) throw NameError("predicate '" + name + "' defined twice");
  bodies_.emplace(std::move(name), std::move(body));
}

bool Definitions::contains(std::string_view name) const { return bodies_.find(name) != bodies_.end(); }

const Pred& Definitions::body(std::string_view name) const {
  auto it = bodies_.find(name);
  if (it == bodies_.end()) throw NameError("undefined predicate '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> references(const Pred& p) {
  std::vector<std::string> out;
  std::function<void(const Pred&)> walk = [&](const Pred& n) {
    std::visit(overloaded{
                   [&](const Not& x) { walk(x.operand); },
                   [&](const And& x) {
                     walk(x.lhs);
                     walk(x.rhs);
                   },
                   [&](const Or& x) {
                     walk(x.lhs);
                     walk(x.rhs);
                   },
                   [&](const Apply& x) { walk(x.operand); },
                   [&](const DefRef& x) {
                     if (std::find(out.begin(), out.end(), x.name) == out.end()) out.push_back(x.name);
                   },
                   [](const auto&) {},
               },
               n->v);
  };
  walk(p);
  return out;
}

std::vector<std::vector<std::string>> definition_components(const Definitions& defs) {
  // Tarjan; components come out callees-first.
  std::map<std::string, int, std::less<>> index, low;
  std::set<std::string, std::less<>> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> out;
  int counter = 0;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : references(defs.body(v))) {
      if (!index.contains(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.contains(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> comp;
      for (;;) {
        auto w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp.push_back(w);
        if (w == v) break;
      }
      std::reverse(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  };
  for (const auto& [name, body] : defs.all())
    if (!index.contains(name)) visit(name);
  return out;
}

void check_stratified(const Definitions& defs) {
  for (const auto& [name, body] : defs.all())
    for (const auto& r : references(body))
      if (!defs.contains(r)) throw NameError("predicate '" + name + "' refers to undefined '" + r + "'");

  for (const auto& comp : definition_components(defs)) {
    std::set<std::string, std::less<>> members(comp.begin(), comp.end());
    const bool recursive =
        comp.size() > 1 || [&] {
          auto refs = references(defs.body(comp.front()));
          return std::find(refs.begin(), refs.end(), comp.front()) != refs.end();
        }();
    if (!recursive) continue;
    for (const auto& def : comp) {
      std::optional<std::string> offender;
      std::function<void(const Pred&, bool)> walk = [&](const Pred& n, bool negated) {
        if (offender) return;
        std::visit(overloaded{
                       [&](const Not& x) { walk(x.operand, true); },
                       [&](const And& x) {
                         walk(x.lhs, negated);
                         walk(x.rhs, negated);
                       },
                       [&](const Or& x) {
                         walk(x.lhs, negated);
                         walk(x.rhs, negated);
                       },
                       [&](const Apply& x) { walk(x.operand, negated); },
                       [&](const DefRef& x) {
                         if (negated && members.contains(x.name)) offender = x.name;
                       },
                       [](const auto&) {},
                   },
                   n->v);
      };
      walk(defs.body(def), false);
      if (!offender) continue;
      // Path offender -> ... -> def within the component, then the negated edge.
      std::map<std::string, std::string, std::less<>> parent;
      std::vector<std::string> queue{*offender};
      parent[*offender] = *offender;
      for (std::size_t q = 0; q < queue.size() && !parent.contains(def); ++q)
        for (const auto& r : references(defs.body(queue[q])))
          if (members.contains(r) && !parent.contains(r)) {
            parent[r] = queue[q];
            queue.push_back(r);
          }
      std::vector<std::string> path{def};
      for (std::string cur = def; cur != *offender;) {
        cur = parent.at(cur);
        path.push_back(cur);
      }
      std::reverse(path.begin(), path.end());
      path.push_back(*offender);
      throw CycleError(std::move(path));
    }
  }
}

// ---------------------------------------------------------------------------
// Typing

namespace {

// Bottom is "not yet known" during the fixpoint over recursive definitions.
enum class T { Bottom, Alphabet, NonNull, String };

T join(T a, T b) { return std::max(a, b); }

World to_world(T t) {
  switch (t) {
    case T::Bottom:
    case T::Alphabet: return World::Alphabet;
    case T::NonNull: return World::NonNullString;
    case T::String: return World::String;
  }
  return World::Alphabet;
}

T from_world(World w) {
  switch (w) {
    case World::Alphabet: return T::Alphabet;
    case World::NonNullString: return T::NonNull;
    case World::String: return T::String;
  }
  return T::Bottom;
}

template <typename Lookup>
T type_of(const Pred& p, const Lookup& lookup, bool report) {
  return std::visit(overloaded{
                        [](const FeatLit&) { return T::Alphabet; },
                        [](const SegLit&) { return T::Alphabet; },
                        [](const ClassRef&) { return T::Alphabet; },
                        [](const Null&) { return T::String; },
                        [&](const Not& x) { return type_of(x.operand, lookup, report); },
                        [&](const And& x) {
                          return join(type_of(x.lhs, lookup, report), type_of(x.rhs, lookup, report));
                        },
                        [&](const Or& x) {
                          return join(type_of(x.lhs, lookup, report), type_of(x.rhs, lookup, report));
                        },
                        [&](const Apply& x) {
                          T inner = type_of(x.operand, lookup, report);
                          if (x.functor == Functor::Head && inner > T::Alphabet && report)
                            throw TypeError(to_string(p), "head needs an alphabet predicate, got " +
                                                              std::string(to_string(to_world(inner))));
                          return T::NonNull;
                        },
                        [&](const DefRef& x) { return lookup(x.name); },
                    },
                    p->v);
}

}  // namespace

std::map<std::string, World, std::less<>> infer_definition_worlds(const Definitions& defs) {
  std::map<std::string, T, std::less<>> types;
  for (const auto& [name, body] : defs.all()) types[name] = T::Bottom;
  auto lookup = [&](const std::string& n) {
    auto it = types.find(n);
    if (it == types.end()) throw NameError("undefined predicate '" + n + "'");
    return it->second;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [name, body] : defs.all()) {
      T t = join(types[name], type_of(body, lookup, false));
      if (t != types[name]) {
        types[name] = t;
        changed = true;
      }
    }
  }
  for (const auto& [name, body] : defs.all()) {
    try {
      type_of(body, lookup, true);
    } catch (const TypeError& e) {
      throw TypeError(e.subterm(), e.why(), name);
    }
  }
  std::map<std::string, World, std::less<>> out;
  for (const auto& [name, t] : types) out.emplace(name, to_world(t));
  return out;
}

TypedPredicate typecheck(const Pred& ast, const std::map<std::string, World, std::less<>>& def_worlds) {
  auto lookup = [&](const std::string& n) {
    auto it = def_worlds.find(n);
    if (it == def_worlds.end()) throw NameError("undefined predicate '" + n + "'");
    return from_world(it->second);
  };
  return TypedPredicate{ast, to_world(type_of(ast, lookup, true))};
}

TypedPredicate typecheck(const Pred& ast, const Definitions& defs) {
  return typecheck(ast, infer_definition_worlds(defs));
}

}  // namespace pho
