#include "abc/structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace abc {

PathReport find_paths(const Tree& t) {
  PathReport report;
  if (t.max_degree() <= 2) {
    report.degenerate_path = true;
    return report;
  }
  for (Vertex s = 0; s < t.order(); ++s) {
    if (t.degree(s) <= 2) continue;
    for (Vertex first : t.neighbors(s)) {
      PathRecord rec;
      rec.start = s;
      rec.vertices.push_back(s);
      Vertex prev = s;
      Vertex cur = first;
      while (t.degree(cur) == 2) {
        rec.vertices.push_back(cur);
        const auto& nb = t.neighbors(cur);
        const Vertex next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
      }
      rec.vertices.push_back(cur);
      rec.end = cur;
      rec.length = static_cast<int>(rec.vertices.size()) - 1;
      if (t.degree(cur) == 1) {
        report.pendant.push_back(std::move(rec));
      } else if (rec.length >= 2 && s < cur) {
        // A direct edge between two vertices of degree > 2 has no interior
        // and is not a path; each internal chain is reported once.
        report.internal.push_back(std::move(rec));
      }
    }
  }
  return report;
}

std::vector<Vertex> BranchProfile::branches(int lo, int hi) const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(kind.size()); ++v)
    if (kind[v] >= lo && kind[v] <= hi && kind[v] > 0) out.push_back(v);
  return out;
}

int branch_kind(const Tree& t, const RootedView& view, Vertex v) {
  if (v == view.root) return 0;
  const auto& kids = view.children[v];
  if (kids.empty()) return 0;
  for (Vertex c : kids) {
    if (t.degree(c) != 2) return 0;
    const auto& grand = view.children[c];
    if (grand.size() != 1 || t.degree(grand[0]) != 1) return 0;
  }
  return static_cast<int>(kids.size());
}

BranchProfile detect_branches(const Tree& t) { return detect_branches(t, default_root(t)); }

BranchProfile detect_branches(const Tree& t, Vertex root) {
  const RootedView view = root_at(t, root);
  BranchProfile profile;
  profile.root = root;
  profile.parent = view.parent;
  profile.kind.assign(static_cast<std::size_t>(t.order()), 0);
  for (Vertex v = 0; v < t.order(); ++v) profile.kind[v] = branch_kind(t, view, v);
  const PathReport paths = find_paths(t);
  for (const auto& p : paths.pendant) profile.pendant_lengths.push_back(p.length);
  for (const auto& p : paths.internal) profile.internal_lengths.push_back(p.length);
  return profile;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "n/a";
  }
  return "?";
}

namespace {

bool high_degree_vertices_induce_tree(const Tree& t) {
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < t.order(); ++v)
    if (t.degree(v) > 2) keep.push_back(v);
  if (keep.empty()) return false;
  std::vector<int> index(static_cast<std::size_t>(t.order()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const auto& [u, v] : t.edges())
    if (index[u] >= 0 && index[v] >= 0) edges.emplace_back(index[u], index[v]);
  // Any subgraph of a tree is a forest; it is a tree iff it is connected.
  return edges.size() + 1 == keep.size();
}

}  // namespace

PropertyReport minimal_abc_properties(const Tree& t) {
  static const char* const kNames[] = {
      "no_internal_paths",        "no_pendant_path_ge4", "pendant_paths_len_2_or_3",
      "at_most_one_pendant_len3", "no_branch_k_ge5",     "at_most_four_b4",
      "high_degree_induced_tree"};
  PropertyReport report;
  if (t.order() < kMinCheckedOrder) {
    for (const char* name : kNames) report[name] = CheckStatus::NotApplicable;
    return report;
  }
  auto mark = [&](const char* name, bool ok) { report[name] = ok ? CheckStatus::Pass : CheckStatus::Fail; };

  const PathReport paths = find_paths(t);
  const BranchProfile profile = detect_branches(t);

  mark("no_internal_paths", paths.internal.empty());
  if (paths.degenerate_path) {
    // A path of order >= 10 has two leaves on pendant chains longer than 3.
    mark("no_pendant_path_ge4", false);
    mark("pendant_paths_len_2_or_3", false);
    mark("at_most_one_pendant_len3", true);
  } else {
    int len3 = 0;
    bool short_ok = true;
    bool long_ok = true;
    for (const auto& p : paths.pendant) {
      if (p.length >= 4) long_ok = false;
      if (p.length < 2 || p.length > 3) short_ok = false;
      if (p.length == 3) ++len3;
    }
    mark("no_pendant_path_ge4", long_ok);
    mark("pendant_paths_len_2_or_3", short_ok);
    mark("at_most_one_pendant_len3", len3 <= 1);
  }
  mark("no_branch_k_ge5", profile.branches(5).empty());
  mark("at_most_four_b4", profile.branches(4, 4).size() <= 4);
  mark("high_degree_induced_tree", high_degree_vertices_induce_tree(t));
  return report;
}

bool all_pass(const PropertyReport& report) {
  return std::all_of(report.begin(), report.end(),
                     [](const auto& kv) { return kv.second == CheckStatus::Pass; });
}

double edge_addition_delta(const SimpleGraph& g, Vertex u, Vertex v) {
  if (u == v) throw std::domain_error("edge_addition_delta: u == v");
  if (u < 0 || v < 0 || u >= g.order() || v >= g.order())
    throw std::domain_error("edge_addition_delta: vertex out of range");
  if (g.has_edge(u, v)) throw std::domain_error("edge_addition_delta: edge already present");
  if (!g.connected()) throw std::domain_error("edge_addition_delta: graph is not connected");
  return abc_index(g.with_edge(u, v)) - abc_index(g);
}

Vertex TreeBuilder::add_vertex() { return n_++; }

void TreeBuilder::add_edge(Vertex u, Vertex v) { edges_.emplace_back(u, v); }

Vertex TreeBuilder::add_path(Vertex at, int length) {
  if (length < 1) throw std::invalid_argument("path length must be positive");
  Vertex prev = at;
  Vertex first = -1;
  for (int i = 0; i < length; ++i) {
    const Vertex v = add_vertex();
    add_edge(prev, v);
    if (i == 0) first = v;
    prev = v;
  }
  return first;
}

Vertex TreeBuilder::add_branch(Vertex at, int k) {
  if (k < 1) throw std::invalid_argument("branch size must be positive");
  const Vertex r = add_vertex();
  add_edge(at, r);
  for (int i = 0; i < k; ++i) add_path(r, 2);
  return r;
}

Tree TreeBuilder::build(std::optional<Vertex> root) const { return Tree(n_, edges_, root); }

Tree build_kragujevac(const std::vector<int>& branch_sizes) {
  if (branch_sizes.empty()) throw std::domain_error("build_kragujevac: empty branch list");
  for (int k : branch_sizes)
    if (k < 1) throw std::domain_error("build_kragujevac: branch sizes must be >= 1");
  TreeBuilder b;
  const Vertex center = b.add_vertex();
  for (int k : branch_sizes) b.add_branch(center, k);
  return b.build(center);
}

}  // namespace abc
