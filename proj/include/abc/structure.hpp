#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abc/graph.hpp"

namespace abc {

/// A maximal chain of degree-2 vertices leaving a vertex of degree > 2.
/// `length` counts edges: a single leaf hanging off the start is a pendant
/// path of length 1.
struct PathRecord {
  Vertex start = 0;
  Vertex end = 0;
  int length = 0;
  std::vector<Vertex> vertices;  // start .. end inclusive
};

struct PathReport {
  std::vector<PathRecord> pendant;
  std::vector<PathRecord> internal;
  /// Set when the tree has no vertex of degree > 2; both lists are empty.
  bool degenerate_path = false;
};

PathReport find_paths(const Tree& t);

/// B_k classification of every vertex under a rooting. kind[v] = k when v
/// is a non-root vertex with exactly k children, each of degree 2 with a
/// single leaf child; 0 otherwise.
struct BranchProfile {
  Vertex root = 0;
  std::vector<int> kind;
  std::vector<Vertex> parent;
  std::vector<int> pendant_lengths;
  std::vector<int> internal_lengths;

  /// Roots of B_k-branches with k in [lo, hi], ascending by vertex id.
  std::vector<Vertex> branches(int lo, int hi = 1 << 30) const;
};

/// Uses the tree's root if set, else `default_root`.
BranchProfile detect_branches(const Tree& t);
BranchProfile detect_branches(const Tree& t, Vertex root);

/// True when `v` (under `view`) heads a B_k-branch; returns k or 0.
int branch_kind(const Tree& t, const RootedView& view, Vertex v);

enum class CheckStatus { Pass, Fail, NotApplicable };

std::string to_string(CheckStatus s);

/// Named structural checks known to hold for minimal-ABC trees of order
/// at least 10. Keys:
///   no_internal_paths, no_pendant_path_ge4, pendant_paths_len_2_or_3,
///   at_most_one_pendant_len3, no_branch_k_ge5, at_most_four_b4,
///   high_degree_induced_tree
using PropertyReport = std::map<std::string, CheckStatus>;

inline constexpr int kMinCheckedOrder = 10;

PropertyReport minimal_abc_properties(const Tree& t);

bool all_pass(const PropertyReport& report);

/// ABC(g + uv) - ABC(g). Throws std::domain_error when u == v, uv is
/// already an edge, or g is disconnected.
double edge_addition_delta(const SimpleGraph& g, Vertex u, Vertex v);

/// Central vertex 0 joined to the root of one B_k-branch per entry.
Tree build_kragujevac(const std::vector<int>& branch_sizes);

/// Incremental tree construction used by instance generators.
class TreeBuilder {
public:
  TreeBuilder() = default;

  Vertex add_vertex();
  void add_edge(Vertex u, Vertex v);
  /// Hangs a path of `length` new vertices below `at`; returns its first vertex.
  Vertex add_path(Vertex at, int length);
  /// Attaches a new B_k-branch below `at`; returns the branch root.
  Vertex add_branch(Vertex at, int k);

  int order() const { return n_; }
  Tree build(std::optional<Vertex> root = std::nullopt) const;

private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

}  // namespace abc
