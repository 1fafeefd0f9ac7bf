#include "abc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace abc {

namespace {

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 4) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

std::vector<std::vector<Vertex>> build_adjacency(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nb : adj) {
    auto sorted = nb;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("duplicate edge");
  }
  return adj;
}

bool is_connected(const std::vector<std::vector<Vertex>>& adj) {
  if (adj.empty()) return true;
  std::vector<char> seen(adj.size(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == adj.size();
}

}  // namespace

double edge_weight(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("edge_weight: degrees must be positive");
  const double num = x + y - 2.0;
  if (num < 0.0) throw std::domain_error("edge_weight: x + y < 2");
  return std::sqrt(num / (x * y));
}

double sum_weights(std::span<double> weights) {
  std::sort(weights.begin(), weights.end());
  return pairwise_sum(weights);
}

double abc_from_degree_pairs(std::span<const std::pair<int, int>> pairs) {
  std::vector<double> w;
  w.reserve(pairs.size());
  for (const auto& [a, b] : pairs) w.push_back(edge_weight(a, b));
  return sum_weights(w);
}

// SimpleGraph

SimpleGraph::SimpleGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  adj_ = build_adjacency(n_, edges_);
}

bool SimpleGraph::has_edge(Vertex u, Vertex v) const {
  const auto& nb = adj_.at(u);
  return std::find(nb.begin(), nb.end(), v) != nb.end();
}

bool SimpleGraph::connected() const { return is_connected(adj_); }

SimpleGraph SimpleGraph::with_edge(Vertex u, Vertex v) const {
  auto e = edges_;
  e.emplace_back(u, v);
  return SimpleGraph(n_, std::move(e));
}

double abc_index(const SimpleGraph& g) {
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) == 0) throw std::domain_error("abc_index: isolated vertex");
  std::vector<double> w;
  w.reserve(g.edges().size());
  for (const auto& [u, v] : g.edges()) w.push_back(edge_weight(g.degree(u), g.degree(v)));
  return sum_weights(w);
}

// Tree

Tree::Tree(int n, std::vector<Edge> edges, std::optional<Vertex> root)
    : n_(n), edges_(std::move(edges)), root_(root) {
  if (n < 1) throw std::invalid_argument("tree needs at least one vertex");
  if (static_cast<int>(edges_.size()) != n - 1)
    throw std::invalid_argument("tree on n vertices needs n-1 edges");
  adj_ = build_adjacency(n_, edges_);
  if (!is_connected(adj_)) throw std::invalid_argument("tree is not connected");
  if (root_ && (*root_ < 0 || *root_ >= n_)) throw std::invalid_argument("root out of range");
  degree_.resize(static_cast<std::size_t>(n_));
  for (Vertex v = 0; v < n_; ++v) degree_[v] = static_cast<int>(adj_[v].size());
}

Tree Tree::from_parents(std::span<const int> parent) {
  std::vector<Edge> edges;
  std::optional<Vertex> root;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] < 0) {
      if (root) throw std::invalid_argument("parent array has two roots");
      root = static_cast<Vertex>(v);
    } else {
      edges.emplace_back(parent[v], static_cast<Vertex>(v));
    }
  }
  return Tree(static_cast<int>(parent.size()), std::move(edges), root);
}

int Tree::max_degree() const {
  return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
}

Tree Tree::with_root(Vertex r) const { return Tree(n_, edges_, r); }

std::vector<int> Tree::degree_sequence() const {
  auto d = degree_;
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

std::vector<Vertex> Tree::centers() const {
  if (n_ == 1) return {0};
  // Peel leaves layer by layer; the last one or two vertices are the center.
  std::vector<int> deg = degree_;
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n_; ++v)
    if (deg[v] <= 1) layer.push_back(v);
  int remaining = n_;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<Vertex> next;
    for (Vertex v : layer) {
      for (Vertex w : adj_[v]) {
        if (--deg[w] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

RootedView root_at(const Tree& t, Vertex root) {
  RootedView view;
  const auto n = static_cast<std::size_t>(t.order());
  view.root = root;
  view.parent.assign(n, -1);
  view.children.assign(n, {});
  view.depth.assign(n, 0);
  view.bfs_order.reserve(n);
  std::vector<char> seen(n, 0);
  seen[root] = 1;
  view.bfs_order.push_back(root);
  for (std::size_t i = 0; i < view.bfs_order.size(); ++i) {
    const Vertex v = view.bfs_order[i];
    for (Vertex w : t.neighbors(v)) {
      if (seen[w]) continue;
      seen[w] = 1;
      view.parent[w] = v;
      view.depth[w] = view.depth[v] + 1;
      view.children[v].push_back(w);
      view.bfs_order.push_back(w);
    }
  }
  return view;
}

double abc_index(const Tree& t) {
  if (t.order() < 2) throw std::domain_error("abc_index: isolated vertex");
  std::vector<double> w;
  w.reserve(t.edges().size());
  for (const auto& [u, v] : t.edges()) w.push_back(edge_weight(t.degree(u), t.degree(v)));
  return sum_weights(w);
}

// LevelSequence

LevelSequence::LevelSequence(std::vector<int> seq) : seq_(std::move(seq)) {
  if (seq_.empty() || seq_[0] != 0) throw std::invalid_argument("level sequence must start with 0");
  for (std::size_t i = 1; i < seq_.size(); ++i) {
    if (seq_[i] < 1 || seq_[i] > seq_[i - 1] + 1)
      throw std::invalid_argument("invalid level sequence at position " + std::to_string(i));
  }
}

Tree LevelSequence::to_tree() const {
  std::vector<int> parent(seq_.size(), -1);
  std::vector<int> last_at_depth;
  for (std::size_t i = 0; i < seq_.size(); ++i) {
    const auto d = static_cast<std::size_t>(seq_[i]);
    if (d > 0) parent[i] = last_at_depth[d - 1];
    last_at_depth.resize(d + 1);
    last_at_depth[d] = static_cast<int>(i);
  }
  return Tree::from_parents(parent);
}

std::string LevelSequence::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < seq_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(seq_[i]);
  }
  return out;
}

LevelSequence LevelSequence::parse(const std::string& line) {
  std::istringstream in(line);
  std::vector<int> seq;
  int x = 0;
  while (in >> x) seq.push_back(x);
  if (!in.eof()) throw std::invalid_argument("level sequence: non-integer token");
  return LevelSequence(std::move(seq));
}

LevelSequence rooted_canonical_form(const Tree& t, Vertex root) {
  const RootedView view = root_at(t, root);
  std::vector<std::vector<int>> code(static_cast<std::size_t>(t.order()));
  for (auto it = view.bfs_order.rbegin(); it != view.bfs_order.rend(); ++it) {
    const Vertex v = *it;
    std::vector<const std::vector<int>*> kids;
    kids.reserve(view.children[v].size());
    std::size_t total = 1;
    for (Vertex c : view.children[v]) {
      kids.push_back(&code[c]);
      total += code[c].size();
    }
    std::sort(kids.begin(), kids.end(), [](const auto* a, const auto* b) { return *a > *b; });
    std::vector<int> out;
    out.reserve(total);
    out.push_back(0);
    for (const auto* k : kids)
      for (int d : *k) out.push_back(d + 1);
    for (Vertex c : view.children[v]) std::vector<int>().swap(code[c]);
    code[v] = std::move(out);
  }
  return LevelSequence(std::move(code[root]));
}

LevelSequence canonical_form(const Tree& t) {
  const auto centers = t.centers();
  LevelSequence best = rooted_canonical_form(t, centers[0]);
  if (centers.size() == 2) {
    LevelSequence other = rooted_canonical_form(t, centers[1]);
    if (other < best) best = std::move(other);
  }
  return best;
}

Vertex default_root(const Tree& t) {
  if (t.root()) return *t.root();
  const auto centers = t.centers();
  if (centers.size() == 1) return centers[0];
  return rooted_canonical_form(t, centers[1]) < rooted_canonical_form(t, centers[0]) ? centers[1]
                                                                                     : centers[0];
}

// DegreeSequence

DegreeSequence::DegreeSequence(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  if (degrees_.empty()) throw std::invalid_argument("empty degree sequence");
  for (int d : degrees_)
    if (d < 1) throw std::invalid_argument("degrees must be positive");
  std::sort(degrees_.begin(), degrees_.end(), std::greater<>());
}

int DegreeSequence::count(int degree) const {
  return static_cast<int>(std::count(degrees_.begin(), degrees_.end(), degree));
}

bool DegreeSequence::realizable() const {
  const int n = order();
  if (n < 2) return false;
  return std::accumulate(degrees_.begin(), degrees_.end(), 0) == 2 * (n - 1);
}

std::string DegreeSequence::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(degrees_[i]);
  }
  return out;
}

DegreeSequence DegreeSequence::parse(const std::string& text) {
  std::vector<int> d;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("degree sequence: bad token '" + tok + "'");
    }
    if (tok.find_first_not_of(" \t", used) != std::string::npos)
      throw std::invalid_argument("degree sequence: bad token '" + tok + "'");
    d.push_back(v);
  }
  return DegreeSequence(std::move(d));
}

// Tree file format

TreeFormatError::TreeFormatError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Tree parse_tree(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        out = line;
        return true;
      }
    }
    return false;
  };

  std::string header;
  if (!next_content_line(header)) throw TreeFormatError(1, "missing vertex count");
  int n = 0;
  {
    std::istringstream h(header);
    std::string extra;
    if (!(h >> n) || (h >> extra)) throw TreeFormatError(lineno, "expected a single vertex count");
    if (n < 1) throw TreeFormatError(lineno, "vertex count must be positive");
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) {
    std::string l;
    if (!next_content_line(l))
      throw TreeFormatError(lineno + 1, "expected " + std::to_string(n - 1) + " edges, found " +
                                            std::to_string(i));
    std::istringstream e(l);
    long long u = 0, v = 0;
    std::string extra;
    if (!(e >> u >> v) || (e >> extra)) throw TreeFormatError(lineno, "expected \"u v\"");
    if (u < 0 || v < 0 || u >= n || v >= n) throw TreeFormatError(lineno, "vertex id out of range");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  std::string trailing;
  if (next_content_line(trailing)) throw TreeFormatError(lineno, "unexpected trailing content");
  try {
    return Tree(n, std::move(edges));
  } catch (const std::invalid_argument& err) {
    throw TreeFormatError(lineno, err.what());
  }
}

std::string format_tree(const Tree& t) {
  std::string out = std::to_string(t.order()) + "\n";
  for (const auto& [u, v] : t.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

}  // namespace abc
