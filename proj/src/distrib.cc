#include "culdiv/distrib.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <unordered_map>

#include "culdiv/csv.h"
#include "culdiv/error.h"

namespace culdiv {

TokenDistribution TokenDistribution::from_weights(std::vector<Entry> weights) {
  std::sort(weights.begin(), weights.end());
  TokenDistribution d;
  double total = 0.0;
  for (auto& [token, w] : weights) {
    if (!(w > 0.0)) continue;
    if (!d.entries_.empty() && d.entries_.back().first == token) {
      d.entries_.back().second += w;
    } else {
      d.entries_.emplace_back(std::move(token), w);
    }
    total += w;
  }
  for (auto& e : d.entries_) e.second /= total;
  return d;
}

double TokenDistribution::prob(std::string_view token) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), token,
                                   [](const Entry& e, std::string_view t) { return e.first < t; });
  return it != entries_.end() && it->first == token ? it->second : 0.0;
}

TokenDistribution TokenDistribution::from_counts(std::vector<std::pair<std::string, std::size_t>> counts) {
  std::sort(counts.begin(), counts.end());
  TokenDistribution d;
  std::size_t total = 0;
  for (auto& [token, c] : counts) {
    if (c == 0) continue;
    if (!d.entries_.empty() && d.entries_.back().first == token) {
      d.entries_.back().second += static_cast<double>(c);
    } else {
      d.entries_.emplace_back(std::move(token), static_cast<double>(c));
    }
    total += c;
  }
  for (auto& e : d.entries_) e.second /= static_cast<double>(total);
  return d;
}

TokenDistribution estimate_distribution(std::span<const std::string> tokens) {
  if (tokens.empty()) throw EmptyDistributionError();
  std::map<std::string_view, std::size_t> counts;
  for (const auto& t : tokens) ++counts[t];
  std::vector<std::pair<std::string, std::size_t>> entries;
  entries.reserve(counts.size());
  for (const auto& [t, c] : counts) entries.emplace_back(std::string(t), c);
  return TokenDistribution::from_counts(std::move(entries));
}

TokenDistribution estimate_distribution(const TokenStream& stream) {
  return estimate_distribution(std::span<const std::string>(stream.tokens));
}

namespace {

double term(double x, double m) { return x > 0.0 ? 0.5 * x * std::log2(x / m) : 0.0; }

// Merge over the union support; fn(token, p, q).
template <typename Fn>
void merge(const TokenDistribution& p, const TokenDistribution& q, Fn&& fn) {
  const auto& a = p.entries();
  const auto& b = q.entries();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      fn(a[i].first, a[i].second, 0.0);
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      fn(b[j].first, 0.0, b[j].second);
      ++j;
    } else {
      fn(a[i].first, a[i].second, b[j].second);
      ++i;
      ++j;
    }
  }
}

double contribution(double p, double q) {
  const double m = 0.5 * (p + q);
  return std::max(0.0, term(p, m) + term(q, m));
}

}  // namespace

double jsd(const TokenDistribution& p, const TokenDistribution& q) {
  if (p.empty() && q.empty()) throw UndefinedDivergenceError();
  // An empty side has no support in common with anything: maximal divergence.
  if (p.empty() || q.empty()) return 1.0;
  double total = 0.0;
  merge(p, q, [&](const std::string&, double pw, double qw) { total += contribution(pw, qw); });
  return std::clamp(total, 0.0, 1.0);
}

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::Appearing: return "appearing";
    case Direction::Disappearing: return "disappearing";
    case Direction::Neutral: return "neutral";
  }
  return "neutral";
}

std::vector<Contribution> jsd_contributions(const TokenDistribution& p, const TokenDistribution& q) {
  if (p.empty() && q.empty()) throw UndefinedDivergenceError();
  std::vector<Contribution> out;
  out.reserve(p.support_size() + q.support_size());
  const bool one_sided = p.empty() || q.empty();
  merge(p, q, [&](const std::string& token, double pw, double qw) {
    Contribution c;
    c.token = token;
    c.p = pw;
    c.q = qw;
    c.value = one_sided ? pw + qw : contribution(pw, qw);
    c.direction = qw > pw ? Direction::Appearing : (pw > qw ? Direction::Disappearing : Direction::Neutral);
    out.push_back(std::move(c));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Co-occurrence

std::optional<CoocWindow> parse_cooc_window(std::string_view text) {
  if (text == "document") return CoocWindow::document();
  if (text == "sentence") return CoocWindow::sentence();
  std::string_view rest;
  if (text.starts_with("sliding:")) {
    rest = text.substr(8);
  } else if (text.starts_with("sliding(") && text.ends_with(")")) {
    rest = text.substr(8, text.size() - 9);
  } else {
    return std::nullopt;
  }
  std::size_t k = 0;
  const auto res = std::from_chars(rest.data(), rest.data() + rest.size(), k);
  if (res.ec != std::errc{} || res.ptr != rest.data() + rest.size() || k < 2) return std::nullopt;
  return CoocWindow::sliding(k);
}

std::string to_string(const CoocWindow& window) {
  switch (window.kind) {
    case CoocWindow::Kind::Document: return "document";
    case CoocWindow::Kind::Sentence: return "sentence";
    case CoocWindow::Kind::Sliding: return "sliding:" + std::to_string(window.k);
  }
  return "sentence";
}

std::optional<std::uint32_t> PpmiMatrix::index(std::string_view token) const {
  const auto it = std::lower_bound(vocab_.begin(), vocab_.end(), token);
  if (it == vocab_.end() || *it != token) return std::nullopt;
  return static_cast<std::uint32_t>(it - vocab_.begin());
}

std::span<const PpmiMatrix::Cell> PpmiMatrix::row(std::uint32_t index) const {
  if (index + 1 >= row_ptr_.size()) return {};
  return {cells_.data() + row_ptr_[index], row_ptr_[index + 1] - row_ptr_[index]};
}

std::span<const PpmiMatrix::Cell> PpmiMatrix::row(std::string_view token) const {
  const auto idx = index(token);
  return idx ? row(*idx) : std::span<const Cell>{};
}

double PpmiMatrix::value(std::string_view a, std::string_view b) const {
  const auto ia = index(a);
  const auto ib = index(b);
  if (!ia || !ib) return 0.0;
  const auto cells = row(*ia);
  const auto it = std::lower_bound(cells.begin(), cells.end(), *ib,
                                   [](const Cell& c, std::uint32_t col) { return c.column < col; });
  return it != cells.end() && it->column == *ib ? it->value : 0.0;
}

bool operator==(const PpmiMatrix& a, const PpmiMatrix& b) {
  if (a.vocab_ != b.vocab_ || a.row_ptr_ != b.row_ptr_ || a.units_ != b.units_) return false;
  if (a.cells_.size() != b.cells_.size()) return false;
  for (std::size_t i = 0; i < a.cells_.size(); ++i)
    if (a.cells_[i].column != b.cells_[i].column || a.cells_[i].value != b.cells_[i].value) return false;
  return true;
}

PpmiMatrix ppmi_matrix(std::span<const TokenStream> streams, const CoocWindow& window) {
  PpmiMatrix m;
  for (const auto& s : streams) m.vocab_.insert(m.vocab_.end(), s.tokens.begin(), s.tokens.end());
  std::sort(m.vocab_.begin(), m.vocab_.end());
  m.vocab_.erase(std::unique(m.vocab_.begin(), m.vocab_.end()), m.vocab_.end());

  std::unordered_map<std::string_view, std::uint32_t> ids;
  ids.reserve(m.vocab_.size());
  for (std::uint32_t i = 0; i < m.vocab_.size(); ++i) ids.emplace(m.vocab_[i], i);

  std::vector<std::uint64_t> unit_freq(m.vocab_.size(), 0);
  std::unordered_map<std::uint64_t, std::uint64_t> pair_freq;
  std::vector<std::uint32_t> unit;

  auto add_unit = [&](std::span<const std::string> tokens) {
    if (tokens.empty()) return;
    unit.clear();
    for (const auto& t : tokens) unit.push_back(ids.at(t));
    std::sort(unit.begin(), unit.end());
    unit.erase(std::unique(unit.begin(), unit.end()), unit.end());
    ++m.units_;
    for (std::size_t i = 0; i < unit.size(); ++i) {
      ++unit_freq[unit[i]];
      for (std::size_t j = i + 1; j < unit.size(); ++j)
        ++pair_freq[(static_cast<std::uint64_t>(unit[i]) << 32) | unit[j]];
    }
  };

  for (const auto& s : streams) {
    if (s.empty()) continue;
    switch (window.kind) {
      case CoocWindow::Kind::Document:
        add_unit(s.tokens);
        break;
      case CoocWindow::Kind::Sentence:
        for (const auto& sent : s.sentences()) add_unit(sent);
        break;
      case CoocWindow::Kind::Sliding:
        for (const auto& sent : s.sentences()) {
          if (sent.size() <= window.k) {
            add_unit(sent);
          } else {
            for (std::size_t i = 0; i + window.k <= sent.size(); ++i) add_unit(sent.subspan(i, window.k));
          }
        }
        break;
    }
  }

  struct Triple {
    std::uint32_t row, column;
    double value;
  };
  std::vector<Triple> triples;
  const std::uint64_t units = m.units_;
  for (const auto& [key, c] : pair_freq) {
    const auto a = static_cast<std::uint32_t>(key >> 32);
    const auto b = static_cast<std::uint32_t>(key & 0xffffffffu);
    const unsigned __int128 joint = static_cast<unsigned __int128>(c) * units;
    const unsigned __int128 marginal = static_cast<unsigned __int128>(unit_freq[a]) * unit_freq[b];
    if (joint <= marginal) continue;
    const double v = std::log2(static_cast<double>(c) * static_cast<double>(units) /
                               (static_cast<double>(unit_freq[a]) * static_cast<double>(unit_freq[b])));
    triples.push_back({a, b, v});
    triples.push_back({b, a, v});
  }
  std::sort(triples.begin(), triples.end(), [](const Triple& x, const Triple& y) {
    return x.row != y.row ? x.row < y.row : x.column < y.column;
  });
  m.row_ptr_.assign(m.vocab_.size() + 1, 0);
  m.cells_.reserve(triples.size());
  for (const auto& t : triples) {
    ++m.row_ptr_[t.row + 1];
    m.cells_.push_back({t.column, t.value});
  }
  for (std::size_t i = 1; i < m.row_ptr_.size(); ++i) m.row_ptr_[i] += m.row_ptr_[i - 1];
  return m;
}

void write_ppmi_csv(const PpmiMatrix& matrix, std::ostream& out) {
  CsvWriter w(out);
  w.row({"token_a", "token_b", "ppmi"});
  const auto& v = matrix.vocabulary();
  matrix.for_each_pair([&](std::uint32_t a, std::uint32_t b, double value) {
    w.row({v[a], v[b], format_double(value)});
  });
}

PpmiRowDistribution ppmi_row_distribution(const PpmiMatrix& matrix, std::string_view word,
                                          std::span<const std::string> shared_vocab) {
  PpmiRowDistribution out;
  const auto& vocab = matrix.vocabulary();
  std::vector<TokenDistribution::Entry> weights;
  for (const auto& cell : matrix.row(word)) {
    const std::string& neighbor = vocab[cell.column];
    if (std::binary_search(shared_vocab.begin(), shared_vocab.end(), neighbor))
      weights.emplace_back(neighbor, cell.value);
  }
  out.distribution = TokenDistribution::from_weights(std::move(weights));
  out.empty = out.distribution.empty();
  return out;
}

}  // namespace culdiv
