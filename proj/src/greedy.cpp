#include "abc/greedy.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>
#include <stdexcept>

namespace abc {

GreedyTree greedy_tree(const DegreeSequence& ds) {
  if (!ds.realizable()) throw std::domain_error("greedy_tree: sequence not realizable: " + ds.to_string());
  const auto& d = ds.values();
  const int n = ds.order();
  std::vector<int> parent(n, -1), level(n, 0);
  // Degrees are handed out in non-increasing order as vertices are
  // discovered, so expanding by (degree desc, discovery asc) is plain
  // discovery order.
  int next = 1;
  for (int v = 0; v < n && next < n; ++v) {
    const int children = v == 0 ? d[0] : d[v] - 1;
    for (int c = 0; c < children; ++c) {
      parent[next] = v;
      level[next] = level[v] + 1;
      ++next;
    }
  }
  Tree t = Tree::from_parents(parent).with_root(0);
  return GreedyTree{std::move(t), std::move(level), ds};
}

bool is_greedy(const Tree& t) {
  if (t.order() == 1) return true;
  return canonical_form(greedy_tree(DegreeSequence(t.degree_sequence())).tree) == canonical_form(t);
}

namespace {

// Excess partitions: the non-leaf vertices carry excess d - 1 >= 1 summing
// to n - 2.
void excess_partitions(int remaining, int max_part, int slots, std::vector<int>& cur,
                       const std::function<void(const std::vector<int>&)>& fn) {
  if (remaining == 0) {
    fn(cur);
    return;
  }
  if (slots == 0) return;
  for (int p = std::min(max_part, remaining); p >= 1; --p) {
    cur.push_back(p);
    excess_partitions(remaining - p, p, slots - 1, cur, fn);
    cur.pop_back();
  }
}

}  // namespace

void for_each_degree_sequence(int n, bool prune,
                              const std::function<void(const DSCandidate&)>& fn) {
  if (n < 2) throw std::domain_error("degree_sequences: n must be >= 2");
  std::vector<int> cur;
  excess_partitions(n - 2, n - 2, n, cur, [&](const std::vector<int>& excess) {
    const int internal = static_cast<int>(excess.size());
    const int ones = n - internal;
    int twos = 0;
    for (int e : excess) twos += e == 1;
    if (prune && twos != ones && twos != ones + 1) return;
    std::vector<int> deg;
    deg.reserve(n);
    for (int e : excess) deg.push_back(e + 1);
    deg.resize(n, 1);
    fn(DSCandidate{DegreeSequence(std::move(deg)), ones, twos, internal - twos});
  });
}

std::vector<DSCandidate> degree_sequences(int n, bool prune) {
  std::vector<DSCandidate> out;
  for_each_degree_sequence(n, prune, [&](const DSCandidate& c) { out.push_back(c); });
  return out;
}

std::uint64_t count_pruned_sequences(int n) {
  std::uint64_t count = 0;
  for_each_degree_sequence(n, true, [&](const DSCandidate&) { ++count; });
  return count;
}

std::vector<LevelSequence> degree2_relocations(const Tree& t) {
  std::set<LevelSequence> seen{canonical_form(t)};
  std::deque<LevelSequence> queue{*seen.begin()};
  while (!queue.empty()) {
    const Tree cur = queue.front().to_tree();
    queue.pop_front();
    const int n = cur.order();
    for (Vertex w = 0; w < n; ++w) {
      if (cur.degree(w) != 2) continue;
      const Vertex a = cur.neighbors(w)[0], b = cur.neighbors(w)[1];
      if (cur.degree(a) != 2 && cur.degree(b) != 2) continue;
      // Contract w away; a-b keeps a degree-2 endpoint.
      std::vector<Edge> rest;
      for (const auto& [x, y] : cur.edges())
        if (x != w && y != w) rest.emplace_back(x, y);
      rest.emplace_back(a, b);
      for (std::size_t i = 0; i < rest.size(); ++i) {
        const auto [c, d] = rest[i];
        if (cur.degree(c) != 2 && cur.degree(d) != 2) continue;
        std::vector<Edge> edges = rest;
        edges[i] = {c, w};
        edges.emplace_back(w, d);
        auto form = canonical_form(Tree(n, std::move(edges)));
        if (seen.insert(form).second) queue.push_back(std::move(form));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

SearchResult ds_search_min_abc(int n, WorkRange range, bool force) {
  if (n < 10) throw std::domain_error("ds_search_min_abc: n must be >= 10");
  if (n > kDsSearchCap && !force)
    throw std::domain_error("ds_search_min_abc: n above cap " + std::to_string(kDsSearchCap) +
                            " (use --force)");
  const auto t0 = std::chrono::steady_clock::now();
  SearchResult result;
  result.n = n;
  result.method = "ds-greedy";
  std::set<LevelSequence> forms;
  std::uint64_t index = 0;
  for_each_degree_sequence(n, true, [&](const DSCandidate& c) {
    const std::uint64_t i = index++;
    if (i < range.begin || i >= range.end) return;
    ++result.examined;
    const Tree t = greedy_tree(c.ds).tree;
    const double value = abc_index(t);
    if (value < result.abc_min - kAbcTolerance) {
      result.abc_min = value;
      forms.clear();
      forms.insert(canonical_form(t));
    } else if (value <= result.abc_min + kAbcTolerance) {
      result.abc_min = std::min(result.abc_min, value);
      forms.insert(canonical_form(t));
    }
  });
  std::set<LevelSequence> all;
  for (const auto& f : forms)
    for (auto& g : degree2_relocations(f.to_tree())) all.insert(std::move(g));
  result.trees.assign(all.begin(), all.end());
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

GreedyCheck verify_greedy_optimality(int n_max, double tol) {
  if (n_max < 2) throw std::domain_error("verify_greedy_optimality: n_max must be at least 2");
  GreedyCheck out;
  out.n_max = n_max;
  for (int n = 2; n <= n_max; ++n) {
    for_each_degree_sequence(n, false, [&](const DSCandidate& c) {
      ++out.sequences;
      const double g = abc_index(greedy_tree(c.ds).tree);
      double best = g;
      labeled_trees_with_degrees(c.ds, [&](const Tree& t) {
        ++out.trees;
        best = std::min(best, abc_index(t));
      });
      if (best < g - tol)
        out.violations.push_back(c.ds.to_string() + ": greedy " + std::to_string(g) +
                                 " above " + std::to_string(best));
    });
  }
  return out;
}

}  // namespace abc
