#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "culdiv/text.h"

namespace culdiv {

// Sparse unigram distribution, entries sorted by token, all weights > 0.
class TokenDistribution {
 public:
  using Entry = std::pair<std::string, double>;

  TokenDistribution() = default;

  // Drops non-positive weights and L1-normalizes what remains.
  static TokenDistribution from_weights(std::vector<Entry> weights);
  // Exact count / total quotients; zero counts are dropped.
  static TokenDistribution from_counts(std::vector<std::pair<std::string, std::size_t>> counts);

  double prob(std::string_view token) const;
  bool contains(std::string_view token) const { return prob(token) > 0.0; }
  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  friend bool operator==(const TokenDistribution&, const TokenDistribution&) = default;

 private:
  std::vector<Entry> entries_;
};

// Maximum-likelihood estimate, count / total. Throws EmptyDistributionError.
TokenDistribution estimate_distribution(std::span<const std::string> tokens);
TokenDistribution estimate_distribution(const TokenStream& stream);

// Base-2 Jensen-Shannon divergence over the union support, in [0, 1].
// Throws UndefinedDivergenceError when both inputs are empty.
double jsd(const TokenDistribution& p, const TokenDistribution& q);

enum class Direction { Appearing, Disappearing, Neutral };

std::string_view to_string(Direction direction);

struct Contribution {
  std::string token;
  double p = 0.0;
  double q = 0.0;
  double value = 0.0;  // 1/2 p log2(p/m) + 1/2 q log2(q/m), clamped at 0
  Direction direction = Direction::Neutral;
};

// One entry per token of the union support, sorted by token. The values sum
// to jsd(p, q).
std::vector<Contribution> jsd_contributions(const TokenDistribution& p, const TokenDistribution& q);

// Co-occurrence unit. Document: the whole text. Sentence: each sentence.
// Sliding: every run of k consecutive tokens inside a sentence; a sentence
// shorter than k is a single unit.
struct CoocWindow {
  enum class Kind { Document, Sentence, Sliding };
  Kind kind = Kind::Sentence;
  std::size_t k = 0;

  static CoocWindow document() { return {Kind::Document, 0}; }
  static CoocWindow sentence() { return {Kind::Sentence, 0}; }
  static CoocWindow sliding(std::size_t k) { return {Kind::Sliding, k}; }

  friend bool operator==(const CoocWindow&, const CoocWindow&) = default;
};

// "document", "sentence", "sliding:K" (also "sliding(K)").
std::optional<CoocWindow> parse_cooc_window(std::string_view text);
std::string to_string(const CoocWindow& window);

// Symmetric positive-PMI matrix in compressed sparse rows. PMI is
// log2(c(a,b) U / (u(a) u(b))) with U the number of units, u(x) the number of
// units containing x and c(a,b) the number containing both.
class PpmiMatrix {
 public:
  struct Cell {
    std::uint32_t column;
    double value;
  };

  PpmiMatrix() = default;

  const std::vector<std::string>& vocabulary() const { return vocab_; }
  std::optional<std::uint32_t> index(std::string_view token) const;
  bool in_vocabulary(std::string_view token) const { return index(token).has_value(); }

  // 0 when the pair is absent.
  double value(std::string_view a, std::string_view b) const;
  std::span<const Cell> row(std::uint32_t index) const;
  std::span<const Cell> row(std::string_view token) const;

  // Number of unordered pairs stored.
  std::size_t pair_count() const { return cells_.size() / 2; }
  std::size_t unit_count() const { return units_; }

  // Calls fn(a, b, value) once per unordered pair with a < b.
  template <typename Fn>
  void for_each_pair(Fn&& fn) const {
    for (std::uint32_t r = 0; r + 1 < row_ptr_.size(); ++r)
      for (std::size_t i = row_ptr_[r]; i < row_ptr_[r + 1]; ++i)
        if (cells_[i].column > r) fn(r, cells_[i].column, cells_[i].value);
  }

  friend bool operator==(const PpmiMatrix&, const PpmiMatrix&);
  friend PpmiMatrix ppmi_matrix(std::span<const TokenStream>, const CoocWindow&);

 private:
  std::vector<std::string> vocab_;  // sorted
  std::vector<std::size_t> row_ptr_;
  std::vector<Cell> cells_;  // columns ascending within a row
  std::size_t units_ = 0;
};

PpmiMatrix ppmi_matrix(std::span<const TokenStream> streams, const CoocWindow& window);

// Debug dump, `token_a,token_b,ppmi` with token_a < token_b.
void write_ppmi_csv(const PpmiMatrix& matrix, std::ostream& out);

struct PpmiRowDistribution {
  TokenDistribution distribution;
  bool empty = true;
};

// Row of `word` restricted to `shared_vocab` (sorted) and L1-normalized.
PpmiRowDistribution ppmi_row_distribution(const PpmiMatrix& matrix, std::string_view word,
                                          std::span<const std::string> shared_vocab);

}  // namespace culdiv
