#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "abc/enumerate.hpp"
#include "abc/graph.hpp"

namespace abc {

struct GreedyTree {
  Tree tree;
  std::vector<int> level;  // BFS depth of each vertex
  DegreeSequence source;
};

/// Greedy tree of a degree sequence: the root takes the largest degree and
/// vertices are expanded in order of (degree desc, discovery asc), each
/// receiving the largest degrees still available. Vertex ids follow
/// discovery order. Throws std::domain_error for unrealizable sequences.
GreedyTree greedy_tree(const DegreeSequence& ds);

/// True iff t is isomorphic to the greedy tree of its own degree sequence.
bool is_greedy(const Tree& t);

struct DSCandidate {
  DegreeSequence ds;
  int ones = 0;
  int twos = 0;
  int high = 0;  // vertices of degree >= 3
};

/// Calls `fn` for every degree sequence of a tree on n >= 2 vertices, in
/// descending lexicographic order. With `prune`, only sequences where the
/// number of degree-2 vertices equals the number of leaves or exceeds it
/// by one are produced.
void for_each_degree_sequence(int n, bool prune, const std::function<void(const DSCandidate&)>& fn);
std::vector<DSCandidate> degree_sequences(int n, bool prune);

/// Canonical forms of every tree reachable from t by moving a degree-2
/// vertex off an edge it shares with another degree-2 vertex onto another
/// edge with a degree-2 endpoint. Each such move only touches edges of
/// weight 1/sqrt(2), so all results have the ABC index of t. Includes t.
std::vector<LevelSequence> degree2_relocations(const Tree& t);

inline constexpr int kDsSearchCap = 50;

/// Minimum of abc_index(greedy_tree(ds)) over the pruned degree sequences
/// of order n whose stream index lies in `range`. The reported trees are
/// the greedy minimizers together with their degree-2 relocations. Throws std::domain_error
/// for n < 10, or n above the cap unless `force` is set.
SearchResult ds_search_min_abc(int n, WorkRange range = {}, bool force = false);

/// Number of pruned sequences, for partitioning.
std::uint64_t count_pruned_sequences(int n);

struct GreedyCheck {
  int n_max = 0;
  std::uint64_t sequences = 0;
  std::uint64_t trees = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty() && sequences > 0; }
};

/// For every realizable degree sequence of order 2..n_max, compares the
/// greedy tree against every labeled tree with that sequence:
/// abc(greedy) <= abc(t) + tol must hold.
GreedyCheck verify_greedy_optimality(int n_max, double tol = kAbcTolerance);

}  // namespace abc
