// pho: command-line front end for the phonology engine.
//
//   pho eval     CONFIG WORD PREDICATE
//   pho derive   CONFIG [ENTRY] [--theory N] [--trace] [--all-lexicon]
//   pho abstract CONFIG SET|WORD... [--recover STEM]... [--theory N] [--full]
//   pho paradigm CONFIG TABLE [--default D]
//
// Exit codes: 0 success, 1 linguistic failure, 2 usage or reference error,
// 3 candidate cap exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "pho/config.hpp"

namespace {

using nlohmann::json;
using namespace pho;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kCap = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string word;
  std::string predicate;
  std::string entry;
  std::string theory;
  std::vector<std::string> names;
  std::vector<std::string> stems;
  std::string default_spec;
  std::size_t cap = kDefaultCap;
  bool trace = false;
  bool json = false;
  bool all_lexicon = false;
  bool full = false;
};

json trace_json(const DerivationTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps())
    steps.push_back({{"default_name", s.default_name},
                     {"position", s.position ? json(*s.position) : json(nullptr)},
                     {"applied", s.applied},
                     {"before", s.before},
                     {"after", s.after}});
  return steps;
}

json words_json(const std::vector<Word>& words, const FeatureSystem& fs) {
  json out = json::array();
  for (const auto& w : words) out.push_back(fs.format_word(w));
  return out;
}

int cmd_eval(const Options& o) {
  const EngineConfig cfg = load_config(o.config);
  const FeatureSystem& fs = cfg.features;
  Word w;
  try {
    w = fs.parse_word(o.word);
  } catch (const SpecError& e) {
    throw UsageError(e.what());
  }

  if (const Constraint* c = cfg.find_constraint(o.predicate)) {
    const ViolationReport r = satisfies(fs, w, *c, cfg.definitions);
    if (o.json) {
      json v = json::array();
      for (auto p : r.positions) v.push_back({{"position", p}, {"segment", fs.segment(w[p]).name}});
      std::cout << json{{"constraint", c->name}, {"ok", r.ok()}, {"violations", v}}.dump(2) << "\n";
    } else if (r.ok()) {
      std::cout << "ok\n";
    } else {
      for (auto p : r.positions) std::cout << p << "\t" << fs.segment(w[p]).name << "\n";
    }
    return r.ok() ? kOk : kFailure;
  }

  const Pred p = cfg.parse_predicate(o.predicate);
  const Denotation d = denotation(fs, w, typecheck(p, cfg.definitions), cfg.definitions);
  if (d.world == World::Alphabet) {
    if (o.json) {
      json segs = json::array();
      for (auto s : d.segments) segs.push_back(fs.segment(s).name);
      std::cout << json{{"world", to_string(d.world)}, {"segments", segs}}.dump(2) << "\n";
    } else {
      for (auto s : d.segments) std::cout << fs.segment(s).name << "\n";
    }
    return kOk;
  }
  if (o.json) {
    json v = json::array();
    for (auto i : d.positions) v.push_back({{"position", i}, {"segment", fs.segment(w[i]).name}});
    std::cout << json{{"world", to_string(d.world)}, {"positions", v}, {"null", d.null_point}}.dump(2) << "\n";
  } else {
    for (auto i : d.positions) std::cout << i << "\t" << fs.segment(w[i]).name << "\n";
    if (d.null_point) std::cout << w.size() << "\tnull\n";
  }
  return kOk;
}

const TheoryConfig& pick_theory(const EngineConfig& cfg, const std::string& name) {
  if (name.empty()) {
    if (cfg.theories.size() == 1) return cfg.theories.begin()->second;
    throw UsageError("--theory is required: the config declares " + std::to_string(cfg.theories.size()) +
                     " theories");
  }
  const TheoryConfig* t = cfg.find_theory(name);
  if (!t) throw UsageError("unknown theory '" + name + "'");
  return *t;
}

int cmd_derive(const Options& o) {
  const EngineConfig cfg = load_config(o.config);
  const FeatureSystem& fs = cfg.features;
  const TheoryConfig& theory = pick_theory(cfg, o.theory);

  std::vector<std::pair<std::string, const AnnotatedForm*>> entries;
  if (o.all_lexicon) {
    if (!o.entry.empty()) throw UsageError("--all-lexicon takes no entry");
    for (const auto& [name, form] : cfg.lexicon) entries.emplace_back(name, &form);
  } else {
    if (o.entry.empty()) throw UsageError("derive needs a lexicon entry or --all-lexicon");
    const AnnotatedForm* f = cfg.find_lexicon(o.entry);
    if (!f) throw UsageError("unknown lexicon entry '" + o.entry + "'");
    entries.emplace_back(o.entry, f);
  }

  int status = kOk;
  json results = json::array();
  for (const auto& [name, form] : entries) {
    Derivation d;
    try {
      d = derive_with(theory, *form, fs, cfg.definitions, o.cap);
    } catch (const StrictContradiction& e) {
      if (!o.all_lexicon) throw;
      std::cerr << name << ": " << e.what() << "\n";
      status = kFailure;
      continue;
    }
    const auto words = sorted_by_name(d.result.words(), fs);
    if (o.json) {
      json r{{"entry", name}, {"theory", theory_kind(theory)}, {"candidates", words_json(words, fs)}};
      if (o.trace) r["trace"] = trace_json(d.trace);
      results.push_back(std::move(r));
      continue;
    }
    if (o.trace) std::cout << d.trace.to_text();
    for (const auto& w : words) {
      if (o.all_lexicon) std::cout << name << "\t";
      std::cout << fs.format_word(w) << "\n";
    }
  }
  if (o.json) std::cout << (o.all_lexicon ? results : results.at(0)).dump(2) << "\n";
  return status;
}

int cmd_abstract(const Options& o) {
  const EngineConfig cfg = load_config(o.config);
  const FeatureSystem& fs = cfg.features;
  std::vector<Word> allomorphs;
  for (const auto& n : o.names) {
    if (auto it = cfg.allomorphs.find(n); it != cfg.allomorphs.end()) {
      allomorphs.insert(allomorphs.end(), it->second.begin(), it->second.end());
      continue;
    }
    try {
      allomorphs.push_back(fs.parse_word(n));
    } catch (const SpecError&) {
      throw UsageError("'" + n + "' is neither an allomorph set nor a word");
    }
  }
  const LexicalForm abstract = abstract_allomorphs(allomorphs, fs);
  const SpecDisplay mode = o.full ? SpecDisplay::Full : SpecDisplay::Relative;

  json recovered = json::object();
  std::vector<std::pair<std::string, WordSet>> rows;
  if (!o.stems.empty()) {
    const TheoryConfig& theory = pick_theory(cfg, o.theory);
    for (const auto& s : o.stems) {
      Word stem;
      try {
        stem = fs.parse_word(s);
      } catch (const SpecError& e) {
        throw UsageError(e.what());
      }
      rows.emplace_back(s, sorted_by_name(recover(abstract, stem, theory, fs, cfg.definitions, o.cap), fs));
    }
  }
  if (o.json) {
    json r{{"abstraction", format_form(abstract, fs, mode)}, {"spec_size", spec_size(abstract)}};
    if (!rows.empty()) {
      json rec = json::object();
      for (const auto& [stem, words] : rows) rec[stem] = words_json(words, fs);
      r["recovered"] = rec;
    }
    std::cout << r.dump(2) << "\n";
    return kOk;
  }
  std::cout << format_form(abstract, fs, mode) << "\n";
  for (const auto& [stem, words] : rows) {
    std::cout << stem;
    for (const auto& w : words) std::cout << "\t" << fs.format_word(w);
    std::cout << "\n";
  }
  return kOk;
}

// A default name, a feature value such as "+d" (imposed as `head [+d]`), or
// predicate text.
Default resolve_default(const EngineConfig& cfg, const std::string& text) {
  if (const Default* d = cfg.find_default(text)) return *d;
  std::string body = text;
  if (!text.empty() && (text[0] == '+' || text[0] == '-') && cfg.features.find_feature(text.substr(1)))
    body = "head [" + text + "]";
  const Pred p = cfg.parse_predicate(body);
  return make_default(text, p, nullptr, cfg.definitions);
}

std::string format_cell(const WordSet& cell, const FeatureSystem& fs) {
  if (cell.empty()) return "{}";
  std::string s = "{";
  bool first = true;
  for (const auto& w : sorted_by_name(cell, fs)) {
    if (!first) s += ",";
    s += fs.format_word(w);
    first = false;
  }
  return s + "}";
}

int cmd_paradigm(const Options& o) {
  const EngineConfig cfg = load_config(o.config);
  const FeatureSystem& fs = cfg.features;
  if (o.names.size() != 1) throw UsageError("paradigm takes exactly one table name");
  auto it = cfg.paradigms.find(o.names.front());
  if (it == cfg.paradigms.end()) throw UsageError("unknown paradigm '" + o.names.front() + "'");
  const ParadigmTable& table = it->second;

  ParadigmReport r;
  if (o.default_spec.empty()) {
    r = paradigm_recover(paradigm_margins(table, ambient_words(table.word_length(), fs, o.cap)), table);
  } else {
    r = paradigm_default_recover(table, resolve_default(cfg, o.default_spec), fs, cfg.definitions, o.cap);
  }

  if (o.json) {
    json cells = json::array();
    for (std::size_t i = 0; i < table.rows(); ++i)
      for (std::size_t j = 0; j < table.cols(); ++j)
        cells.push_back({{"row", i + 1},
                         {"col", j + 1},
                         {"recovered", words_json(sorted_by_name(r.recovered[i][j], fs), fs)},
                         {"exact", static_cast<bool>(r.exact[i][j])}});
    std::cout << json{{"cells", cells}, {"exact", r.exact_count()}, {"total", r.cell_count()}}.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < table.rows(); ++i)
      for (std::size_t j = 0; j < table.cols(); ++j)
        std::cout << i + 1 << "\t" << j + 1 << "\t" << format_cell(r.recovered[i][j], fs) << "\t"
                  << (r.exact[i][j] ? "recovered" : "failed") << "\n";
    std::cout << r.exact_count() << "/" << r.cell_count() << " cells recovered\n";
  }
  return r.all_exact() ? kOk : kFailure;
}

int run(int argc, char** argv) {
  CLI::App app{"Declarative phonology engine"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("config", o.config, "Engine configuration (.pho)")->required();
    c->add_option("--cap", o.cap, "Largest candidate set to enumerate");
    c->add_flag("--json", o.json, "Structured output");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate a predicate or constraint on a word");
  common(eval);
  eval->add_option("word", o.word)->required();
  eval->add_option("predicate", o.predicate, "Constraint name, definition name or predicate text")->required();

  auto* derive = app.add_subcommand("derive", "Derive a lexicon entry under a theory");
  common(derive);
  derive->add_option("entry", o.entry);
  derive->add_option("--theory", o.theory);
  derive->add_flag("--trace", o.trace, "Print the derivation trace");
  derive->add_flag("--all-lexicon", o.all_lexicon, "Derive every lexicon entry");

  auto* abstract = app.add_subcommand("abstract", "Abstract allomorphs into one lexical form");
  common(abstract);
  abstract->add_option("names", o.names, "Allomorph sets or words")->required();
  abstract->add_option("--recover", o.stems, "Recover the suffix after this stem");
  abstract->add_option("--theory", o.theory);
  abstract->add_flag("--full", o.full, "Print every feature value");

  auto* paradigm = app.add_subcommand("paradigm", "Decompose a paradigm table");
  common(paradigm);
  paradigm->add_option("table", o.names)->required()->expected(1);
  paradigm->add_option("--default", o.default_spec, "Default name, feature value (+d) or predicate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(o);
    if (*derive) return cmd_derive(o);
    if (*abstract) return cmd_abstract(o);
    return cmd_paradigm(o);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const StrictContradiction& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const DisjointnessFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const LengthMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const EmptySlot& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
