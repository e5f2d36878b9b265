#include "naive_oracle.h"

#include <cmath>
#include <limits>
#include <set>

namespace culdiv::naive {

Dist distribution(const std::vector<std::string>& tokens) {
  Dist d;
  for (const auto& t : tokens) d[t] += 1;
  for (auto& [t, v] : d) v /= static_cast<long double>(tokens.size());
  return d;
}

long double entropy(const Dist& d) {
  long double h = 0;
  for (const auto& [t, v] : d)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

long double jsd(const Dist& p, const Dist& q) {
  Dist m;
  for (const auto& [t, v] : p) m[t] += v / 2;
  for (const auto& [t, v] : q) m[t] += v / 2;
  const long double value = entropy(m) - (entropy(p) + entropy(q)) / 2;
  return value < 0 ? 0 : value;
}

namespace {

std::vector<std::set<std::string>> units(const TokenStream& s, const std::string& window) {
  std::vector<std::set<std::string>> out;
  if (window == "document") {
    if (!s.tokens.empty()) out.emplace_back(s.tokens.begin(), s.tokens.end());
    return out;
  }
  std::size_t k = 0;
  if (window.rfind("sliding:", 0) == 0) k = std::stoul(window.substr(8));
  std::size_t start = 0;
  for (std::size_t end : s.sentence_ends) {
    std::vector<std::string> sent(s.tokens.begin() + start, s.tokens.begin() + end);
    start = end;
    if (sent.empty()) continue;
    if (k == 0 || sent.size() <= k) {
      out.emplace_back(sent.begin(), sent.end());
    } else {
      for (std::size_t i = 0; i + k <= sent.size(); ++i) out.emplace_back(sent.begin() + i, sent.begin() + i + k);
    }
  }
  return out;
}

std::vector<std::string> flatten(const std::vector<TokenStream>& texts) {
  std::vector<std::string> out;
  for (const auto& t : texts) out.insert(out.end(), t.tokens.begin(), t.tokens.end());
  return out;
}

struct Contribution {
  long double value;
  int direction;  // +1 appearing, -1 disappearing, 0 neutral
};

std::map<std::string, Contribution> contributions(const Dist& p, const Dist& q) {
  std::set<std::string> support;
  for (const auto& [t, v] : p) support.insert(t);
  for (const auto& [t, v] : q) support.insert(t);
  std::map<std::string, Contribution> out;
  for (const auto& w : support) {
    const long double pw = p.count(w) ? p.at(w) : 0;
    const long double qw = q.count(w) ? q.at(w) : 0;
    const long double mw = (pw + qw) / 2;
    long double c = 0;
    if (pw > 0) c += pw / 2 * std::log2(pw / mw);
    if (qw > 0) c += qw / 2 * std::log2(qw / mw);
    out[w] = {c, qw > pw ? 1 : (pw > qw ? -1 : 0)};
  }
  return out;
}

}  // namespace

Matrix ppmi(const std::vector<TokenStream>& texts, const std::string& window) {
  std::vector<std::set<std::string>> us;
  for (const auto& t : texts)
    for (auto& u : units(t, window)) us.push_back(std::move(u));
  const auto all = flatten(texts);
  const std::set<std::string> vocab(all.begin(), all.end());
  const long double n = static_cast<long double>(us.size());
  Matrix m;
  for (const auto& a : vocab) {
    for (const auto& b : vocab) {
      if (a == b) continue;
      long double both = 0, fa = 0, fb = 0;
      for (const auto& u : us) {
        const bool ha = u.count(a), hb = u.count(b);
        fa += ha;
        fb += hb;
        both += ha && hb;
      }
      if (both == 0) continue;
      // Integer comparison first so exact zeros are never stored.
      if (both * n <= fa * fb) continue;
      m[{a, b}] = std::log2(both * n / (fa * fb));
    }
  }
  return m;
}

Thresholds thresholds(const std::vector<TokenStream>& refs) {
  Thresholds th;
  if (refs.size() < 2) {
    th.degenerate = true;
    th.difference_eps = std::numeric_limits<long double>::infinity();
    return th;
  }
  long double eps = 0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    std::vector<TokenStream> rest;
    for (std::size_t j = 0; j < refs.size(); ++j)
      if (j != i) rest.push_back(refs[j]);
    long double sum = 0;
    std::size_t count = 0;
    for (const auto& [w, c] : contributions(distribution(flatten(rest)), distribution(refs[i].tokens))) {
      if (c.value > 0) {
        sum += c.value;
        ++count;
      }
    }
    eps += count ? sum / count : 0;
  }
  th.newness_eps = eps / refs.size();
  long double pairs = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < refs.size(); ++i)
    for (std::size_t j = i + 1; j < refs.size(); ++j) {
      pairs += jsd(distribution(refs[i].tokens), distribution(refs[j].tokens));
      ++n;
    }
  th.difference_eps = pairs / n;
  return th;
}

Scores score(const std::vector<TokenStream>& refs, const TokenStream& variation,
             const std::string& window, const Thresholds& th) {
  Scores s;
  const Dist p = distribution(flatten(refs));
  const Dist q = distribution(variation.tokens);
  const auto contrib = contributions(p, q);
  std::size_t appear = 0, disappear = 0;
  for (const auto& [w, c] : contrib) {
    if (c.value < th.newness_eps) continue;
    if (c.direction > 0 && q.count(w)) ++appear;
    if (c.direction < 0 && p.count(w)) ++disappear;
  }
  s.appearance = static_cast<long double>(appear) / q.size();
  s.disappearance = static_cast<long double>(disappear) / q.size();
  s.newness = 0.8L * s.appearance + 0.2L * s.disappearance;
  s.uniqueness = jsd(p, q);
  if (!th.degenerate) {
    std::size_t far = 0;
    for (const auto& r : refs)
      if (jsd(distribution(r.tokens), q) >= th.difference_eps) ++far;
    s.difference = static_cast<long double>(far) / refs.size();
  }

  const Matrix pm = ppmi(refs, window);
  const Matrix qm = ppmi({variation}, window);
  std::size_t pairs = 0, unseen = 0;
  for (const auto& [key, v] : qm) {
    if (key.first >= key.second) continue;
    ++pairs;
    const auto it = pm.find(key);
    if (it == pm.end() || it->second <= 0) ++unseen;
  }
  s.new_surprise = pairs ? static_cast<long double>(unseen) / pairs : 0;

  const auto pv = flatten(refs);
  const std::set<std::string> p_vocab(pv.begin(), pv.end());
  const std::set<std::string> q_vocab(variation.tokens.begin(), variation.tokens.end());
  std::vector<std::string> shared;
  for (const auto& w : p_vocab)
    if (q_vocab.count(w)) shared.push_back(w);
  s.shared_words = shared.size();
  long double total = 0;
  for (const auto& w : shared) {
    Dist prow, qrow;
    long double ps = 0, qs = 0;
    for (const auto& v : shared) {
      if (auto it = pm.find({w, v}); it != pm.end()) {
        prow[v] = it->second;
        ps += it->second;
      }
      if (auto it = qm.find({w, v}); it != qm.end()) {
        qrow[v] = it->second;
        qs += it->second;
      }
    }
    if (ps <= 0 || qs <= 0) continue;
    for (auto& [k, v] : prow) v /= ps;
    for (auto& [k, v] : qrow) v /= qs;
    total += jsd(prow, qrow);
    ++s.scored_words;
  }
  s.divergent_surprise = s.scored_words ? total / s.scored_words : 0;
  return s;
}

}  // namespace culdiv::naive
