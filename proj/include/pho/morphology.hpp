#pragma once

// Morpheme abstraction, allomorph recovery and paradigm decomposition.

#include <string>
#include <vector>

#include "pho/theories.hpp"

namespace pho {

using WordSet = std::vector<Word>;  // sorted, distinct

// Slot-wise intersection of the allomorphs' specifications. Throws
// LengthMismatch for unequal lengths and SpecError for an empty set.
LexicalForm abstract_allomorphs(const std::vector<Word>& allomorphs, const FeatureSystem& fs);

// Derives stem ++ abstract under the theory and projects the surviving
// candidates onto the suffix span.
WordSet recover(const LexicalForm& abstract, const Word& stem, const TheoryConfig& theory, const FeatureSystem& fs,
                const Definitions& defs, std::size_t cap = kDefaultCap);

class ParadigmTable {
 public:
  // Rectangular, non-empty; every cell a non-empty set of words of one length.
  explicit ParadigmTable(std::vector<std::vector<WordSet>> cells);

  std::size_t rows() const { return cells_.size(); }
  std::size_t cols() const { return cells_.front().size(); }
  std::size_t word_length() const { return length_; }
  const WordSet& cell(std::size_t i, std::size_t j) const { return cells_[i][j]; }
  const std::vector<std::vector<WordSet>>& cells() const { return cells_; }

 private:
  std::vector<std::vector<WordSet>> cells_;
  std::size_t length_ = 0;
};

// All words of the given length.
WordSet ambient_words(std::size_t length, const FeatureSystem& fs, std::size_t cap = kDefaultCap);

struct Margins {
  std::vector<WordSet> alpha;  // per row: union of the row's cells
  std::vector<WordSet> beta;   // per column: intersection over rows of (cell ∪ ¬alpha_row)
};

Margins paradigm_margins(const ParadigmTable& t, const WordSet& ambient);

struct ParadigmReport {
  std::vector<std::vector<WordSet>> recovered;
  std::vector<std::vector<bool>> exact;
  std::size_t exact_count() const;
  std::size_t cell_count() const;
  bool all_exact() const { return exact_count() == cell_count(); }
};

// cell'_ij = alpha_i ∩ beta_j. Throws DisjointnessFailure when two alpha rows
// overlap.
ParadigmReport paradigm_recover(const Margins& m, const ParadigmTable& original);

// Abstracts each row and column by intersection, unifies row and column per
// cell, enumerates, and imposes the default left to right.
ParadigmReport paradigm_default_recover(const ParadigmTable& t, const Default& d, const FeatureSystem& fs,
                                        const Definitions& defs, std::size_t cap = kDefaultCap);

}  // namespace pho
