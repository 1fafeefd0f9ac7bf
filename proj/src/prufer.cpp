#include <algorithm>
#include <stdexcept>

#include "abc/enumerate.hpp"

namespace abc {

std::vector<int> prufer_encode(const Tree& t) {
  const int n = t.order();
  if (n < 2) throw std::domain_error("prufer_encode: need n >= 2");
  std::vector<int> deg = t.degrees();
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  std::vector<int> code;
  code.reserve(static_cast<std::size_t>(n - 2));
  // Linear-time variant: `ptr` scans for the smallest leaf.
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int i = 0; i < n - 2; ++i) {
    removed[leaf] = 1;
    int next = -1;
    for (Vertex w : t.neighbors(leaf))
      if (!removed[w]) next = w;
    code.push_back(next);
    if (--deg[next] == 1 && next < ptr) {
      leaf = next;
    } else {
      ++ptr;
      while (deg[ptr] != 1 || removed[ptr]) ++ptr;
      leaf = ptr;
    }
  }
  return code;
}

Tree prufer_decode(const std::vector<int>& code, int n) {
  if (n < 2 || static_cast<int>(code.size()) != n - 2)
    throw std::domain_error("prufer_decode: code length must be n-2");
  std::vector<int> deg(static_cast<std::size_t>(n), 1);
  for (int x : code) {
    if (x < 0 || x >= n) throw std::domain_error("prufer_decode: entry out of range");
    ++deg[x];
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int x : code) {
    edges.emplace_back(leaf, x);
    --deg[leaf];
    if (--deg[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  int last = n - 1;
  edges.emplace_back(leaf, last);
  return Tree(n, std::move(edges));
}

void for_each_labeled_tree(int n, const std::function<void(const Tree&)>& fn) {
  if (n < 1) throw std::domain_error("for_each_labeled_tree: n must be >= 1");
  if (n == 1) {
    fn(Tree(1, {}));
    return;
  }
  std::vector<int> code(static_cast<std::size_t>(n - 2), 0);
  while (true) {
    fn(prufer_decode(code, n));
    int i = n - 3;
    while (i >= 0 && code[i] == n - 1) code[i--] = 0;
    if (i < 0) break;
    ++code[i];
  }
}

void labeled_trees_with_degrees(const DegreeSequence& ds,
                                const std::function<void(const Tree&)>& fn) {
  if (!ds.realizable()) throw std::domain_error("labeled_trees_with_degrees: unrealizable sequence");
  const int n = ds.order();
  std::vector<int> code;
  for (int v = 0; v < n; ++v)
    for (int j = 1; j < ds.values()[v]; ++j) code.push_back(v);
  // `code` is sorted ascending, so next_permutation visits each distinct
  // arrangement exactly once.
  do {
    fn(prufer_decode(code, n));
  } while (std::next_permutation(code.begin(), code.end()));
}

}  // namespace abc
