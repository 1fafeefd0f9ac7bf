#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "abc/graph.hpp"

namespace abc {

// Prüfer codes (labeled trees on n >= 2 vertices).

std::vector<int> prufer_encode(const Tree& t);
Tree prufer_decode(const std::vector<int>& code, int n);

/// Calls `fn` for every labeled tree on n vertices (n^(n-2) of them).
void for_each_labeled_tree(int n, const std::function<void(const Tree&)>& fn);

/// Every labeled tree in which vertex i has degree ds[i], obtained from the
/// distinct arrangements of the Prüfer multiset {i repeated ds[i]-1 times}.
/// Throws std::domain_error for unrealizable sequences.
void labeled_trees_with_degrees(const DegreeSequence& ds,
                                const std::function<void(const Tree&)>& fn);

/// Constant-amortized-time successor generation of free trees as
/// center-rooted level sequences. Each isomorphism class is emitted once,
/// in a fixed order.
class FreeTreeCursor {
public:
  /// Throws std::domain_error for n < 1.
  explicit FreeTreeCursor(int n);

  bool done() const { return done_; }
  void next();
  /// Advances up to `count` trees; cheaper than materializing them.
  void skip(std::uint64_t count);

  int order() const { return n_; }
  /// Position of the current tree in generation order.
  std::uint64_t index() const { return index_; }
  /// Parent of each vertex in preorder; -1 at the root (vertex 0).
  std::vector<int> parents() const;
  /// Depth of each vertex in preorder.
  LevelSequence levels() const;
  Tree tree() const;

  /// Degree of each vertex of the current tree, written into `out`.
  void degrees(std::vector<int>& out) const;
  /// (child, parent) pairs of the current tree, 0-based.
  void parent_pairs(std::vector<Edge>& out) const;

private:
  void advance();

  int n_;
  bool done_ = false;
  std::uint64_t index_ = 0;
  // Algorithm state, 1-based arrays as in the classic formulation.
  std::vector<int> l_;
  std::vector<int> w_;
  int p_ = 0, q_ = 0, h1_ = 0, h2_ = 0, c_ = 0, r_ = 0;
  bool small_ = false;
};

/// Number of free trees of order n, counted by running the cursor.
std::uint64_t count_free_trees(int n);

/// All free trees of order n, one per isomorphism class.
std::vector<Tree> free_trees(int n);

/// Half-open range of generation indices.
struct WorkRange {
  std::uint64_t begin = 0;
  std::uint64_t end = std::numeric_limits<std::uint64_t>::max();
};

/// Splits [0, total) into `parts` contiguous ranges of near-equal size.
std::vector<WorkRange> split_range(std::uint64_t total, int parts);

struct SearchResult {
  int n = 0;
  std::string method;
  double abc_min = std::numeric_limits<double>::infinity();
  /// Canonical forms of all minimizers, ascending, deduplicated.
  std::vector<LevelSequence> trees;
  /// Trees (brute force) or degree sequences (ds search) examined.
  std::uint64_t examined = 0;
  double seconds = 0.0;
};

/// Min-merge with tie union; associative and commutative.
SearchResult merge(const SearchResult& a, const SearchResult& b);

inline constexpr int kBruteForceCap = 20;

/// Minimum ABC index over the free trees of order n whose generation index
/// lies in `range`. Throws std::domain_error for n < 4, or n above the cap
/// unless `force` is set.
SearchResult brute_force_min_abc(int n, WorkRange range = {}, bool force = false);

}  // namespace abc
