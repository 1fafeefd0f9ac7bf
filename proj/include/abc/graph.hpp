#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace abc {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Absolute tolerance for comparing ABC values.
inline constexpr double kAbcTolerance = 1e-12;

/// Weight of an edge whose endpoints have degrees x and y:
/// sqrt((x + y - 2) / (x * y)). Real degrees are accepted.
/// Throws std::domain_error for non-positive degrees or a negative radicand.
double edge_weight(double x, double y);

/// Sums edge weights in a fixed order (ascending weight, pairwise
/// summation) so that equal weight multisets give bit-identical totals.
/// Sorts `weights` in place.
double sum_weights(std::span<double> weights);

/// Simple undirected graph; connectivity is not required.
class SimpleGraph {
public:
  SimpleGraph(int n, std::vector<Edge> edges);

  int order() const { return n_; }
  int size() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<Vertex>>& adjacency() const { return adj_; }
  int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }
  bool has_edge(Vertex u, Vertex v) const;
  bool connected() const;

  SimpleGraph with_edge(Vertex u, Vertex v) const;

private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

/// Free (or optionally rooted) tree over vertices 0..n-1.
/// Construction validates: n-1 edges, no loops or duplicates, connected.
class Tree {
public:
  Tree(int n, std::vector<Edge> edges, std::optional<Vertex> root = std::nullopt);

  /// Builds a tree from a parent array; parent[root] must be -1.
  static Tree from_parents(std::span<const int> parent);

  int order() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<Vertex>>& adjacency() const { return adj_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  int degree(Vertex v) const { return degree_.at(v); }
  const std::vector<int>& degrees() const { return degree_; }
  int max_degree() const;
  std::optional<Vertex> root() const { return root_; }

  Tree with_root(Vertex r) const;
  SimpleGraph as_graph() const { return SimpleGraph(n_, edges_); }

  /// Non-increasing degree list.
  std::vector<int> degree_sequence() const;

  /// One or two central vertices (minimum eccentricity), ascending.
  std::vector<Vertex> centers() const;

private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<int> degree_;
  std::optional<Vertex> root_;
};

/// Tree rooted at `root`: parent links plus children in adjacency order.
struct RootedView {
  Vertex root = 0;
  std::vector<Vertex> parent;  // -1 at the root
  std::vector<std::vector<Vertex>> children;
  std::vector<Vertex> bfs_order;  // discovery order from the root
  std::vector<int> depth;
};

RootedView root_at(const Tree& t, Vertex root);

double abc_index(const Tree& t);

/// Throws std::domain_error if the graph has an isolated vertex.
double abc_index(const SimpleGraph& g);

/// ABC index computed from the endpoint-degree pairs of each edge.
double abc_from_degree_pairs(std::span<const std::pair<int, int>> pairs);

/// Canonical depth-list encoding: seq[0] = 0, later entries are depths in
/// preorder.
class LevelSequence {
public:
  LevelSequence() = default;
  explicit LevelSequence(std::vector<int> seq);

  const std::vector<int>& values() const { return seq_; }
  int size() const { return static_cast<int>(seq_.size()); }
  Tree to_tree() const;
  std::string to_string() const;
  static LevelSequence parse(const std::string& line);

  auto operator<=>(const LevelSequence&) const = default;

private:
  std::vector<int> seq_;
};

/// Center-rooted canonical form; equal iff the trees are isomorphic.
/// Bicentral trees use the lexicographically smaller of the two rootings.
LevelSequence canonical_form(const Tree& t);

/// Canonical level sequence of `t` rooted at `root` (children ordered so
/// the sequence is lexicographically largest).
LevelSequence rooted_canonical_form(const Tree& t, Vertex root);

/// Root used whenever a rooting is needed and none is set: the tree's own
/// root if present, otherwise the center whose rooting gives the canonical
/// form.
Vertex default_root(const Tree& t);

/// Non-increasing list of positive degrees.
class DegreeSequence {
public:
  explicit DegreeSequence(std::vector<int> degrees);

  const std::vector<int>& values() const { return degrees_; }
  int order() const { return static_cast<int>(degrees_.size()); }
  int count(int degree) const;
  bool realizable() const;
  std::string to_string() const;
  /// Parses "d1,d2,..."; the result is sorted non-increasingly.
  static DegreeSequence parse(const std::string& text);

  auto operator<=>(const DegreeSequence&) const = default;

private:
  std::vector<int> degrees_;
};

/// Text tree format: first line n, then n-1 lines "u v".
/// Parse errors throw TreeFormatError carrying a 1-based line number.
class TreeFormatError : public std::runtime_error {
public:
  TreeFormatError(int line, const std::string& what);
  int line() const { return line_; }

private:
  int line_;
};

Tree parse_tree(const std::string& text);
std::string format_tree(const Tree& t);

}  // namespace abc
