#include "pho/morphology.hpp"

#include <algorithm>
#include <iterator>

namespace pho {

namespace {

WordSet set_union(const WordSet& a, const WordSet& b) {
  WordSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

WordSet set_intersection(const WordSet& a, const WordSet& b) {
  WordSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

WordSet set_difference(const WordSet& a, const WordSet& b) {
  WordSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PartialSpec abstract_slot(const std::vector<Word>& words, std::size_t slot, const FeatureSystem& fs) {
  PartialSpec s = fs.segment(words.front()[slot]).spec;
  for (const auto& w : words) s = intersect(s, fs.segment(w[slot]).spec);
  return s;
}

}  // namespace

LexicalForm abstract_allomorphs(const std::vector<Word>& allomorphs, const FeatureSystem& fs) {
  if (allomorphs.empty()) throw SpecError("no allomorphs to abstract");
  const std::size_t n = allomorphs.front().size();
  for (const auto& a : allomorphs)
    if (a.size() != n)
      throw LengthMismatch("allomorphs '" + fs.format_word(allomorphs.front()) + "' and '" + fs.format_word(a) +
                           "' differ in length");
  std::vector<PartialSpec> slots;
  for (std::size_t i = 0; i < n; ++i) slots.push_back(abstract_slot(allomorphs, i, fs));
  return LexicalForm(std::move(slots));
}

WordSet recover(const LexicalForm& abstract, const Word& stem, const TheoryConfig& theory, const FeatureSystem& fs,
                const Definitions& defs, std::size_t cap) {
  const LexicalForm whole = stem.empty() ? abstract : LexicalForm::from_word(stem, fs).concat(abstract);
  const Derivation d = derive_with(theory, AnnotatedForm{whole, {}}, fs, defs, cap);
  WordSet out;
  for (const auto& w : d.result.words()) out.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(stem.size()), w.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ParadigmTable::ParadigmTable(std::vector<std::vector<WordSet>> cells) : cells_(std::move(cells)) {
  if (cells_.empty() || cells_.front().empty()) throw SpecError("paradigm table is empty");
  bool first = true;
  for (auto& row : cells_) {
    if (row.size() != cells_.front().size()) throw SpecError("paradigm table is not rectangular");
    for (auto& cell : row) {
      if (cell.empty()) throw SpecError("paradigm cell is empty");
      std::sort(cell.begin(), cell.end());
      cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
      for (const auto& w : cell) {
        if (first) {
          length_ = w.size();
          first = false;
        } else if (w.size() != length_) {
          throw LengthMismatch("paradigm cells differ in length");
        }
      }
    }
  }
}

WordSet ambient_words(std::size_t length, const FeatureSystem& fs, std::size_t cap) {
  return enumerate_candidates(LexicalForm(std::vector<PartialSpec>(length)), fs, cap).words();
}

Margins paradigm_margins(const ParadigmTable& t, const WordSet& ambient) {
  Margins m;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    WordSet row;
    for (std::size_t j = 0; j < t.cols(); ++j) row = set_union(row, t.cell(i, j));
    m.alpha.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < t.cols(); ++j) {
    WordSet col = ambient;
    for (std::size_t i = 0; i < t.rows(); ++i)
      col = set_intersection(col, set_union(t.cell(i, j), set_difference(ambient, m.alpha[i])));
    m.beta.push_back(std::move(col));
  }
  return m;
}

std::size_t ParadigmReport::exact_count() const {
  std::size_t n = 0;
  for (const auto& row : exact) n += static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
  return n;
}

std::size_t ParadigmReport::cell_count() const {
  std::size_t n = 0;
  for (const auto& row : exact) n += row.size();
  return n;
}

ParadigmReport paradigm_recover(const Margins& m, const ParadigmTable& original) {
  std::string overlaps;
  for (std::size_t a = 0; a < m.alpha.size(); ++a)
    for (std::size_t b = a + 1; b < m.alpha.size(); ++b)
      if (!set_intersection(m.alpha[a], m.alpha[b]).empty())
        overlaps += " (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
  if (!overlaps.empty()) throw DisjointnessFailure("row margins overlap:" + overlaps);

  ParadigmReport r;
  for (std::size_t i = 0; i < m.alpha.size(); ++i) {
    r.recovered.emplace_back();
    r.exact.emplace_back();
    for (std::size_t j = 0; j < m.beta.size(); ++j) {
      r.recovered[i].push_back(set_intersection(m.alpha[i], m.beta[j]));
      r.exact[i].push_back(r.recovered[i][j] == original.cell(i, j));
    }
  }
  return r;
}

ParadigmReport paradigm_default_recover(const ParadigmTable& t, const Default& d, const FeatureSystem& fs,
                                        const Definitions& defs, std::size_t cap) {
  const std::size_t n = t.word_length();
  auto abstract_cells = [&](auto&& cells_of) {
    std::vector<Word> words;
    for (const WordSet* cell : cells_of())
      words.insert(words.end(), cell->begin(), cell->end());
    return abstract_allomorphs(words, fs);
  };
  std::vector<LexicalForm> row_specs, col_specs;
  for (std::size_t i = 0; i < t.rows(); ++i)
    row_specs.push_back(abstract_cells([&] {
      std::vector<const WordSet*> v;
      for (std::size_t j = 0; j < t.cols(); ++j) v.push_back(&t.cell(i, j));
      return v;
    }));
  for (std::size_t j = 0; j < t.cols(); ++j)
    col_specs.push_back(abstract_cells([&] {
      std::vector<const WordSet*> v;
      for (std::size_t i = 0; i < t.rows(); ++i) v.push_back(&t.cell(i, j));
      return v;
    }));

  std::vector<std::size_t> positions(n);
  for (std::size_t k = 0; k < n; ++k) positions[k] = k;

  ParadigmReport r;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    r.recovered.emplace_back();
    r.exact.emplace_back();
    for (std::size_t j = 0; j < t.cols(); ++j) {
      std::vector<PartialSpec> slots;
      bool clash = false;
      for (std::size_t k = 0; k < n && !clash; ++k) {
        auto u = unify(row_specs[i][k], col_specs[j][k]);
        if (std::holds_alternative<Clash>(u))
          clash = true;
        else
          slots.push_back(std::get<PartialSpec>(u));
      }
      WordSet cell;
      if (!clash) {
        CandidateSet s = enumerate_candidates(LexicalForm(std::move(slots)), fs, cap);
        cell = impose_at(s, d, positions, fs, defs).words();
      }
      r.exact[i].push_back(cell == t.cell(i, j));
      r.recovered[i].push_back(std::move(cell));
    }
  }
  return r;
}

}  // namespace pho
