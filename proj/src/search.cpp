#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

#include "abc/enumerate.hpp"

namespace abc {

std::vector<WorkRange> split_range(std::uint64_t total, int parts) {
  if (parts < 1) throw std::invalid_argument("split_range: parts must be >= 1");
  std::vector<WorkRange> out;
  const auto p = static_cast<std::uint64_t>(parts);
  for (std::uint64_t i = 0; i < p; ++i) out.push_back({total * i / p, total * (i + 1) / p});
  return out;
}

SearchResult merge(const SearchResult& a, const SearchResult& b) {
  if (a.trees.empty() && a.examined == 0) return b;
  if (b.trees.empty() && b.examined == 0) return a;
  SearchResult out;
  out.n = a.n;
  out.method = a.method;
  out.examined = a.examined + b.examined;
  out.seconds = std::max(a.seconds, b.seconds);
  if (a.abc_min < b.abc_min - kAbcTolerance) {
    out.abc_min = a.abc_min;
    out.trees = a.trees;
  } else if (b.abc_min < a.abc_min - kAbcTolerance) {
    out.abc_min = b.abc_min;
    out.trees = b.trees;
  } else {
    out.abc_min = std::min(a.abc_min, b.abc_min);
    std::set<LevelSequence> all(a.trees.begin(), a.trees.end());
    all.insert(b.trees.begin(), b.trees.end());
    out.trees.assign(all.begin(), all.end());
  }
  return out;
}

SearchResult brute_force_min_abc(int n, WorkRange range, bool force) {
  if (n < 4) throw std::domain_error("brute_force_min_abc: n must be >= 4");
  if (n > kBruteForceCap && !force)
    throw std::domain_error("brute_force_min_abc: n above cap " + std::to_string(kBruteForceCap) +
                            " (use --force)");
  const auto t0 = std::chrono::steady_clock::now();

  SearchResult result;
  result.n = n;
  result.method = "brute";

  FreeTreeCursor cur(n);
  cur.skip(range.begin);

  std::vector<int> deg;
  std::vector<Edge> pairs;
  std::vector<double> weights(static_cast<std::size_t>(n - 1));
  std::vector<std::vector<int>> tied;  // parent arrays of current minimizers

  for (; !cur.done() && cur.index() < range.end; cur.next()) {
    cur.degrees(deg);
    cur.parent_pairs(pairs);
    for (std::size_t e = 0; e < pairs.size(); ++e)
      weights[e] = edge_weight(deg[pairs[e].first], deg[pairs[e].second]);
    const double value = sum_weights(weights);
    ++result.examined;
    if (value < result.abc_min - kAbcTolerance) {
      result.abc_min = value;
      tied.clear();
      tied.push_back(cur.parents());
    } else if (value <= result.abc_min + kAbcTolerance) {
      result.abc_min = std::min(result.abc_min, value);
      tied.push_back(cur.parents());
    }
  }

  std::set<LevelSequence> forms;
  for (const auto& parent : tied) forms.insert(canonical_form(Tree::from_parents(parent)));
  result.trees.assign(forms.begin(), forms.end());
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace abc
