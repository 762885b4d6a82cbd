#include "pho/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pho {

const Constraint* EngineConfig::find_constraint(std::string_view name) const {
  for (const auto& c : constraints)
    if (c.name == name) return &c;
  return nullptr;
}

const Default* EngineConfig::find_default(std::string_view name) const {
  for (const auto& d : defaults)
    if (d.name == name) return &d;
  return nullptr;
}

const AnnotatedForm* EngineConfig::find_lexicon(std::string_view name) const {
  for (const auto& [n, f] : lexicon)
    if (n == name) return &f;
  return nullptr;
}

const TheoryConfig* EngineConfig::find_theory(std::string_view name) const {
  auto it = theories.find(std::string(name));
  return it == theories.end() ? nullptr : &it->second;
}

Pred EngineConfig::parse_predicate(std::string_view text) const {
  Pred p = parse(text, [this](std::string_view n) { return features.find_class(n) != nullptr; });
  check_names(p, features, definitions);
  return p;
}

void check_names(const Pred& p, const FeatureSystem& fs, const Definitions& defs) {
  std::visit(
      [&](const auto& x) {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, FeatLit>) {
          if (!fs.find_feature(x.feature)) throw NameError("undeclared feature '" + x.feature + "'");
        } else if constexpr (std::is_same_v<X, SegLit>) {
          if (!fs.find_segment(x.segment)) throw NameError("undeclared segment '" + x.segment + "'");
        } else if constexpr (std::is_same_v<X, ClassRef>) {
          if (!fs.find_class(x.name)) throw NameError("undeclared class '" + x.name + "'");
        } else if constexpr (std::is_same_v<X, DefRef>) {
          if (!defs.contains(x.name)) throw NameError("undefined predicate '" + x.name + "'");
        } else if constexpr (std::is_same_v<X, Not>) {
          check_names(x.operand, fs, defs);
        } else if constexpr (std::is_same_v<X, And> || std::is_same_v<X, Or>) {
          check_names(x.lhs, fs, defs);
          check_names(x.rhs, fs, defs);
        } else if constexpr (std::is_same_v<X, Apply>) {
          check_names(x.operand, fs, defs);
        }
      },
      p->v);
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> words;  // whitespace-split
  std::string text;                // comment-free, trimmed
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Text after the first '=' on the line.
std::string after_equals(const Line& l) {
  const auto eq = l.text.find('=');
  if (eq == std::string::npos) throw ConfigError(l.number, "expected '='");
  return trim(std::string_view(l.text).substr(eq + 1));
}

// Splits "pred @ site" at an '@' outside segment quotes.
std::pair<std::string, std::string> split_site(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\'') quoted = !quoted;
    if (s[i] == '@' && !quoted) return {trim(s.substr(0, i)), trim(s.substr(i + 1))};
  }
  return {s, {}};
}

struct PendingRule {
  std::size_t line;
  std::string name;
  std::string body;
  std::string site;
  OrderingScheme scheme;
};

struct PendingTheory {
  std::size_t line;
  std::string name;
  std::string kind;
  std::vector<std::string> lexical, strict, rank, exceptions;
};

struct PendingBlock {
  std::size_t line;
  std::string name;
  std::vector<Line> rows;
};

class ConfigParser {
 public:
  EngineConfig run(std::string_view text) {
    read_lines(text);
    collect();
    build_features();
    build_definitions();
    build_rules();
    build_theories();
    build_lexicon();
    return std::move(cfg_);
  }

 private:
  void read_lines(std::string_view text) {
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto nl = text.find('\n', start);
      const auto raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
      ++number;
      std::string line(raw);
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (!line.empty()) lines_.push_back({number, split(line), line});
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
  }

  [[noreturn]] static void fail(const Line& l, const std::string& what) { throw ConfigError(l.number, what); }

  void collect() {
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      const Line& l = lines_[i];
      const std::string& kw = l.words[0];
      auto need = [&](std::size_t n) {
        if (l.words.size() < n) fail(l, "incomplete '" + kw + "' declaration");
      };
      if (kw == "feature") {
        need(2);
        if (!feature_line_) feature_line_ = l.number;
        feature_names_.insert(feature_names_.end(), l.words.begin() + 1, l.words.end());
      } else if (kw == "segment" || kw == "class") {
        need(3);
        const auto spec_at = l.text.find('[');
        if (spec_at == std::string::npos) fail(l, "expected a bracketed specification");
        (kw == "segment" ? segments_ : classes_).push_back({l.number, l.words[1], l.text.substr(spec_at), {}, {}});
      } else if (kw == "define") {
        need(4);
        if (l.words[2] != "=") fail(l, "expected 'define NAME = predicate'");
        defines_.push_back({l.number, l.words[1], after_equals(l), {}, {}});
      } else if (kw == "constraint") {
        need(4);
        if (l.words[2] != "=") fail(l, "expected 'constraint NAME = predicate [@ site]'");
        auto [body, site] = split_site(after_equals(l));
        constraints_.push_back({l.number, l.words[1], body, site, {}});
      } else if (kw == "default") {
        need(4);
        PendingRule r{l.number, l.words[1], {}, {}, OrderingScheme::by_feature()};
        std::size_t k = 2;
        if (l.words[k] == "by") {
          need(k + 2);
          const auto& how = l.words[k + 1];
          if (how == "feature") {
            k += 2;
          } else if (how == "failures") {
            r.scheme = OrderingScheme::by_failure_count();
            k += 2;
          } else if (how == "position") {
            need(k + 4);
            const auto& e = l.words[k + 2];
            const auto& d = l.words[k + 3];
            if ((e != "left" && e != "right") || (d != "near" && d != "far"))
              fail(l, "expected 'by position left|right near|far'");
            r.scheme = OrderingScheme::by_position(e == "left" ? Edge::Left : Edge::Right,
                                                   d == "near" ? Direction::Near : Direction::Far);
            k += 4;
          } else {
            fail(l, "unknown ordering '" + how + "'");
          }
        }
        if (k >= l.words.size() || l.words[k] != "=") fail(l, "expected '=' in default declaration");
        std::tie(r.body, r.site) = split_site(after_equals(l));
        defaults_.push_back(std::move(r));
      } else if (kw == "theory") {
        if (l.words.size() != 3) fail(l, "expected 'theory NAME ut|ot|et'");
        PendingTheory t{l.number, l.words[1], l.words[2], {}, {}, {}};
        if (t.kind != "ut" && t.kind != "ot" && t.kind != "et") fail(l, "unknown theory kind '" + t.kind + "'");
        for (++i;; ++i) {
          if (i >= lines_.size()) fail(l, "theory block without 'end'");
          const Line& b = lines_[i];
          if (b.words[0] == "end") break;
          std::vector<std::string> rest(b.words.begin() + 1, b.words.end());
          if (b.words[0] == "lexical")
            t.lexical.insert(t.lexical.end(), rest.begin(), rest.end());
          else if (b.words[0] == "strict")
            t.strict.insert(t.strict.end(), rest.begin(), rest.end());
          else if (b.words[0] == "rank")
            t.rank.insert(t.rank.end(), rest.begin(), rest.end());
          else if (b.words[0] == "exceptions")
            t.exceptions.insert(t.exceptions.end(), rest.begin(), rest.end());
          else
            fail(b, "expected 'lexical', 'strict', 'rank', 'exceptions' or 'end'");
        }
        theories_.push_back(std::move(t));
      } else if (kw == "lexicon") {
        need(4);
        if (l.words[2] != "=") fail(l, "expected 'lexicon NAME = form'");
        lexicon_.push_back({l.number, l.words[1], after_equals(l), {}, {}});
      } else if (kw == "allomorphs") {
        need(4);
        if (l.words[2] != "=") fail(l, "expected 'allomorphs NAME = word ...'");
        allomorphs_.push_back({l.number, l.words[1], {l}});
      } else if (kw == "paradigm") {
        if (l.words.size() != 2) fail(l, "expected 'paradigm NAME'");
        PendingBlock p{l.number, l.words[1], {}};
        for (++i;; ++i) {
          if (i >= lines_.size()) fail(l, "paradigm block without 'end'");
          if (lines_[i].words[0] == "end") break;
          p.rows.push_back(lines_[i]);
        }
        paradigms_.push_back(std::move(p));
      } else {
        fail(l, "unknown declaration '" + kw + "'");
      }
    }
  }

  void build_features() {
    if (!feature_line_) throw ConfigError(1, "no features declared");
    // Specs need the feature list; parse them against a segment-less system.
    std::vector<FeatureSystem::Segment> segs;
    std::vector<std::pair<std::string, PartialSpec>> classes;
    FeatureSystem probe;
    try {
      const std::uint64_t all =
          feature_names_.size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << feature_names_.size()) - 1;
      probe = FeatureSystem(feature_names_, {{"\x01", PartialSpec{all, 0}}}, {});
    } catch (const Error& e) {
      throw ConfigError(*feature_line_, e.what());
    }
    for (const auto& s : segments_) {
      try {
        segs.push_back({s.name, probe.parse_spec(s.body)});
      } catch (const Error& e) {
        throw ConfigError(s.line, e.what());
      }
    }
    for (const auto& c : classes_) {
      try {
        classes.emplace_back(c.name, probe.parse_spec(c.body));
      } catch (const Error& e) {
        throw ConfigError(c.line, e.what());
      }
    }
    try {
      cfg_.features = FeatureSystem(feature_names_, std::move(segs), std::move(classes));
    } catch (const Error& e) {
      // Blame the last segment or class the message names.
      std::size_t line = *feature_line_;
      const std::string msg = e.what();
      for (const auto* group : {&segments_, &classes_})
        for (const auto& r : *group)
          if (msg.find("'" + r.name + "'") != std::string::npos) line = std::max(line, r.line);
      throw ConfigError(line, msg);
    }
  }

  Pred parse_pred(const std::string& text, std::size_t line) {
    try {
      return parse(text, [this](std::string_view n) { return cfg_.features.find_class(n) != nullptr; });
    } catch (const Error& e) {
      throw ConfigError(line, e.what());
    }
  }

  std::size_t define_line(const std::string& name) const {
    for (const auto& d : defines_)
      if (d.name == name) return d.line;
    return 0;
  }

  void build_definitions() {
    for (const auto& d : defines_) {
      if (cfg_.features.find_class(d.name)) throw ConfigError(d.line, "'" + d.name + "' is already a class");
      try {
        cfg_.definitions.add(d.name, parse_pred(d.body, d.line));
      } catch (const NameError& e) {
        throw ConfigError(d.line, e.what());
      }
    }
    for (const auto& d : defines_) {
      try {
        check_names(cfg_.definitions.body(d.name), cfg_.features, cfg_.definitions);
      } catch (const Error& e) {
        throw ConfigError(d.line, e.what());
      }
    }
    try {
      check_stratified(cfg_.definitions);
    } catch (const CycleError& e) {
      throw ConfigError(define_line(e.cycle().front()), e.what());
    }
    try {
      worlds_ = infer_definition_worlds(cfg_.definitions);
    } catch (const TypeError& e) {
      throw ConfigError(define_line(e.definition()), e.what());
    }
  }

  TypedPredicate typed(const std::string& text, std::size_t line) {
    Pred p = parse_pred(text, line);
    try {
      check_names(p, cfg_.features, cfg_.definitions);
      return as_position(typecheck(p, worlds_));
    } catch (const Error& e) {
      throw ConfigError(line, e.what());
    }
  }

  void build_rules() {
    for (const auto& c : constraints_) {
      if (cfg_.find_constraint(c.name)) throw ConfigError(c.line, "constraint '" + c.name + "' declared twice");
      Constraint k{c.name, typed(c.body, c.line), std::nullopt, ConstraintKind::Strict};
      if (!c.site.empty()) k.site = typed(c.site, c.line);
      cfg_.constraints.push_back(std::move(k));
    }
    for (const auto& d : defaults_) {
      if (cfg_.find_default(d.name)) throw ConfigError(d.line, "default '" + d.name + "' declared twice");
      Default k{d.name, typed(d.body, d.line), std::nullopt, d.scheme};
      if (!d.site.empty()) k.site = typed(d.site, d.line);
      cfg_.defaults.push_back(std::move(k));
    }
  }

  void build_theories() {
    for (const auto& t : theories_) {
      if (cfg_.theories.contains(t.name)) throw ConfigError(t.line, "theory '" + t.name + "' declared twice");
      auto constraints = [&](const std::vector<std::string>& names) {
        std::vector<Constraint> out;
        for (const auto& n : names) {
          const Constraint* c = cfg_.find_constraint(n);
          if (!c) throw ConfigError(t.line, "theory '" + t.name + "': unknown constraint '" + n + "'");
          out.push_back(*c);
        }
        return out;
      };
      std::vector<Constraint> strict = constraints(t.strict);
      std::vector<Constraint> exceptions = constraints(t.exceptions);
      if (!exceptions.empty() && t.kind != "et")
        throw ConfigError(t.line, "theory '" + t.name + "': only ET takes exception features");
      std::vector<Default> ranked;
      for (const auto& n : t.rank) {
        if (const Default* d = cfg_.find_default(n)) {
          ranked.push_back(*d);
        } else if (const Constraint* c = cfg_.find_constraint(n); c && t.kind == "ot") {
          ranked.push_back(as_failure_count_default(*c));
        } else {
          throw ConfigError(t.line, "theory '" + t.name + "': unknown default '" + n + "'");
        }
      }
      for (const auto& f : t.lexical)
        if (!cfg_.features.find_feature(f))
          throw ConfigError(t.line, "theory '" + t.name + "': unknown feature '" + f + "'");
      try {
        if (t.kind == "ut") {
          cfg_.theories.emplace(t.name, UtTheory(t.lexical, std::move(strict), std::move(ranked)));
        } else {
          if (!t.lexical.empty()) throw TheoryError("only UT declares a priori lexical features");
          if (t.kind == "ot")
            cfg_.theories.emplace(t.name, OtTheory(std::move(strict), std::move(ranked)));
          else
            cfg_.theories.emplace(t.name, EtTheory(std::move(strict), ranked, std::move(exceptions)));
        }
      } catch (const TheoryError& e) {
        throw ConfigError(t.line, "theory '" + t.name + "': " + e.what());
      }
    }
  }

  void build_lexicon() {
    std::vector<std::string> exception_names;
    for (const auto& c : cfg_.constraints) exception_names.push_back(c.name);
    for (const auto& e : lexicon_) {
      if (cfg_.find_lexicon(e.name)) throw ConfigError(e.line, "lexicon entry '" + e.name + "' declared twice");
      try {
        cfg_.lexicon.emplace_back(e.name, parse_annotated_form(e.body, cfg_.features, exception_names));
      } catch (const Error& err) {
        throw ConfigError(e.line, err.what());
      }
    }
    for (const auto& a : allomorphs_) {
      const Line& l = a.rows.front();
      std::vector<Word> words;
      try {
        for (std::size_t k = 3; k < l.words.size(); ++k) words.push_back(cfg_.features.parse_word(l.words[k]));
      } catch (const Error& err) {
        throw ConfigError(l.number, err.what());
      }
      for (const auto& w : words)
        if (w.size() != words.front().size())
          throw ConfigError(l.number, "allomorph set '" + a.name + "' mixes lengths");
      if (!cfg_.allomorphs.emplace(a.name, std::move(words)).second)
        throw ConfigError(l.number, "allomorph set '" + a.name + "' declared twice");
    }
    for (const auto& p : paradigms_) {
      std::vector<std::vector<WordSet>> cells;
      for (const auto& row : p.rows) {
        cells.emplace_back();
        for (const auto& tok : row.words) {
          try {
            cells.back().push_back(enumerate_candidates(parse_form(tok, cfg_.features), cfg_.features).words());
          } catch (const Error& err) {
            throw ConfigError(row.number, err.what());
          }
        }
      }
      try {
        if (!cfg_.paradigms.emplace(p.name, ParadigmTable(std::move(cells))).second)
          throw SpecError("paradigm '" + p.name + "' declared twice");
      } catch (const Error& err) {
        throw ConfigError(p.line, err.what());
      }
    }
  }

  std::vector<Line> lines_;
  std::optional<std::size_t> feature_line_;
  std::vector<std::string> feature_names_;
  std::vector<PendingRule> segments_, classes_, defines_, constraints_, defaults_, lexicon_;
  std::vector<PendingTheory> theories_;
  std::vector<PendingBlock> allomorphs_, paradigms_;
  std::map<std::string, World, std::less<>> worlds_;
  EngineConfig cfg_;
};

}  // namespace

EngineConfig parse_config(std::string_view text) { return ConfigParser().run(text); }

EngineConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace pho
