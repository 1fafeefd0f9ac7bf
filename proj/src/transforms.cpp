#include "abc/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "abc/structure.hpp"

namespace abc {

namespace {

const double kHalf = std::sqrt(0.5);
// lim_{x -> inf} -f(x, 6) + f(x, 5)
const double kLimit65 = std::sqrt(1.0 / 5) - std::sqrt(1.0 / 6);

double f(double x, double y) { return edge_weight(x, y); }

struct KindInfo {
  TransformKind kind;
  const char* name;
};

constexpr KindInfo kKinds[] = {
    {TransformKind::T_PRO05, "T_PRO05"}, {TransformKind::T11, "T11"},
    {TransformKind::T12, "T12"},         {TransformKind::T13, "T13"},
    {TransformKind::T211, "T211"},       {TransformKind::T212, "T212"},
    {TransformKind::T221, "T221"},       {TransformKind::T222, "T222"},
    {TransformKind::T31, "T31"},         {TransformKind::T32, "T32"},
    {TransformKind::TA1, "TA1"},         {TransformKind::TA2, "TA2"},
    {TransformKind::TB, "TB"},           {TransformKind::T1_THM4, "T1_THM4"},
    {TransformKind::T2_THM4, "T2_THM4"},
};

}  // namespace

const std::vector<TransformKind>& all_transform_kinds() {
  static const std::vector<TransformKind> kinds = [] {
    std::vector<TransformKind> out;
    for (const auto& k : kKinds) out.push_back(k.kind);
    return out;
  }();
  return kinds;
}

std::string to_string(TransformKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.name;
  return "?";
}

TransformKind parse_transform_kind(const std::string& name) {
  for (const auto& k : kKinds)
    if (name == k.name) return k.kind;
  throw std::invalid_argument("unknown transform kind: " + name);
}

std::string to_string(BoundKind b) { return b == BoundKind::Exact ? "exact" : "upper-bound"; }

// ---------------------------------------------------------------------------
// Closed forms

const std::vector<std::string>& closed_form_parameters(TransformKind kind) {
  static const std::map<TransformKind, std::vector<std::string>> params = {
      {TransformKind::T_PRO05, {"du", "dv"}},
      {TransformKind::TA1, {"du"}},
      {TransformKind::TA2, {"du"}},
      {TransformKind::TB, {"du"}},
      {TransformKind::T11, {"du2"}},
      {TransformKind::T12, {"du1"}},
      {TransformKind::T13, {"du1"}},
      {TransformKind::T211, {"du2", "dv2", "dv3"}},
      {TransformKind::T221, {"du1", "dv1", "dv3"}},
      {TransformKind::T31, {"du1", "dv1", "dv2"}},
      {TransformKind::T212, {"du2"}},
      {TransformKind::T222, {"du1"}},
      {TransformKind::T32, {"du1"}},
      {TransformKind::T1_THM4, {"du1", "du2", "x"}},
      {TransformKind::T2_THM4, {"du1"}},
  };
  return params.at(kind);
}

namespace {

double need(const std::map<std::string, double>& p, const std::string& key, double lo,
            double hi = INFINITY) {
  const auto it = p.find(key);
  if (it == p.end()) throw std::domain_error("closed form: missing parameter " + key);
  if (!(it->second >= lo && it->second <= hi))
    throw std::domain_error("closed form: " + key + " out of domain");
  return it->second;
}

// Moving a P2 from a B_{>=5} root (degree a) to a B2/B3 root (degree b)
// under the same parent (degree p).
double p2_shift(double p, double a, double b) {
  return -f(p, a) + f(p, a - 1) - f(p, b) + f(p, b + 1);
}

double b2star_bound(double d, int double_terms_with_limit) {
  // double_terms_with_limit: 1 -> one limit term plus two per-edge terms,
  // 0 -> three per-edge terms.
  const double edge = -f(d, 6) + f(d + 1, 5);
  if (double_terms_with_limit) return kLimit65 + 2 * edge - kHalf + f(d + 1, 3);
  return 3 * edge - kHalf + f(d + 1, 3);
}

}  // namespace

ClosedForm delta_closed_form(TransformKind kind, const std::map<std::string, double>& p) {
  ClosedForm out;
  switch (kind) {
    case TransformKind::T_PRO05: {
      const double du = need(p, "du", 2), dv = need(p, "dv", 6);
      out.value = -f(du, dv) + f(du, dv - 2) - f(du, 2) + f(du, 3);
      out.expression = "b1_bk_merge";
      break;
    }
    case TransformKind::TA1: {
      const double du = need(p, "du", 2);
      out.value = -f(du, 5) + f(du, 3) - f(du, 2) + f(du, 3);
      out.expression = "b1_b4_merge";
      break;
    }
    case TransformKind::TA2: {
      const double du = need(p, "du", 3);
      out.value = -f(du, 5) + f(du - 1, 6) + (du - 2) * (1 / std::sqrt(du - 1) - 1 / std::sqrt(du));
      out.bound = BoundKind::UpperBound;
      out.expression = "b1_b4_move_bound";
      out.note = "v term uses f(d(u)-1, 6); the printed root-case formula has f(d(u), 6)";
      break;
    }
    case TransformKind::TB: {
      const double du = need(p, "du", 2);
      out.value = -f(du, 5) + f(du, 4) - f(du, 3) + f(du, 4);
      out.expression = "b2_b4_shift";
      break;
    }
    case TransformKind::T11:
      out.value = b2star_bound(need(p, "du2", 2), 1);
      out.bound = BoundKind::UpperBound;
      out.expression = "b2star_split_bound";
      break;
    case TransformKind::T12:
      out.value = b2star_bound(need(p, "du1", 2), 1);
      out.bound = BoundKind::UpperBound;
      out.expression = "b2star_split_bound";
      break;
    case TransformKind::T13:
      out.value = b2star_bound(need(p, "du1", 3), 0);
      out.bound = BoundKind::UpperBound;
      out.expression = "b2star_common_bound";
      out.note = "per-edge term read as -f(d(u1), d(v1)) + f(d(u1)+1, d(v1)-1); printed without the leading minus";
      break;
    case TransformKind::T211:
      out.value = p2_shift(need(p, "du2", 2), need(p, "dv2", 6), need(p, "dv3", 3, 4));
      out.expression = "p2_shift";
      break;
    case TransformKind::T221:
      out.value = p2_shift(need(p, "du1", 3), need(p, "dv1", 6), need(p, "dv3", 3, 4));
      out.expression = "p2_shift";
      break;
    case TransformKind::T31:
      out.value = p2_shift(need(p, "du1", 2), need(p, "dv1", 6), need(p, "dv2", 3, 4));
      out.expression = "p2_shift";
      break;
    case TransformKind::T212: {
      const double d = need(p, "du2", 2);
      out.value = -f(d, 6) + f(d, 5) + 2 * (-f(d, 5) + f(d, 4)) + f(d, 4) - (kHalf - kLimit65);
      out.bound = BoundKind::UpperBound;
      out.expression = "b3star_split_bound";
      break;
    }
    case TransformKind::T222: {
      const double d = need(p, "du1", 4);
      out.value = 2 * (-f(d, 6) + f(d, 5)) + 2 * (-f(d, 5) + f(d, 4)) + f(d, 4) - kHalf;
      out.bound = BoundKind::UpperBound;
      out.expression = "b3star_common_pair_bound";
      break;
    }
    case TransformKind::T32: {
      const double d = need(p, "du1", 4);
      out.value = -f(d, 6) + f(d, 5) + 3 * (-f(d, 5) + f(d, 4)) + f(d, 4) - kHalf;
      out.bound = BoundKind::UpperBound;
      out.expression = "b3star_single_bound";
      out.note = "composite branch attached to u1; the printed text names v3";
      break;
    }
    case TransformKind::T1_THM4: {
      const double x = need(p, "x", 1, 4);
      if (x != std::floor(x)) throw std::domain_error("closed form: x must be an integer");
      const double d2 = need(p, "du2", 6 - x);
      const double d1 = need(p, "du1", 1);
      out.value = x * (-f(d1, 5) + f(d1, 4)) + (5 - x) * (-f(d2, 5) + f(d2 + 1, 4)) +
                  (d2 + x - 6) * (-f(d2, 4) + f(d2 + 1, 4)) - f(d2, d2) + f(d2 + 1, d2) - kHalf -
                  f(2, 1) + f(d2 + 1, 4) + f(4, 3);
      out.bound = BoundKind::UpperBound;
      out.expression = "b3dstar_split_bound";
      out.note = "parent term evaluated at the parent of u2";
      break;
    }
    case TransformKind::T2_THM4: {
      const double d = need(p, "du1", 5);
      out.value = -5 * f(d, 5) + 6 * f(d + 1, 4) - 2 * f(2, 1) + f(4, 3);
      out.bound = BoundKind::UpperBound;
      out.expression = "b3dstar_common_bound";
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shapes

StarBranch make_star_branch(StarKind kind) {
  TreeBuilder b;
  const Vertex r = b.add_vertex();
  switch (kind) {
    case StarKind::B2_STAR:
      b.add_path(r, 2);
      b.add_path(r, 3);
      break;
    case StarKind::B3_STAR:
      b.add_path(r, 2);
      b.add_path(r, 2);
      b.add_path(r, 3);
      break;
    case StarKind::B3_DOUBLE_STAR: {
      const Vertex q = b.add_vertex();
      b.add_edge(r, q);
      b.add_path(q, 2);
      b.add_path(q, 2);
      b.add_path(r, 2);
      b.add_path(r, 2);
      break;
    }
  }
  return StarBranch{kind, b.build(r)};
}

// ---------------------------------------------------------------------------
// Configuration search

namespace {

struct Context {
  RootedView view;
  std::vector<int> kind;  // B_k classification
  std::vector<int> pos;   // BFS discovery index
};

Context analyze(const Tree& t) {
  Context c;
  c.view = root_at(t, default_root(t));
  const int n = t.order();
  c.kind.assign(n, 0);
  c.pos.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) c.kind[v] = branch_kind(t, c.view, v);
  for (int i = 0; i < n; ++i) c.pos[c.view.bfs_order[i]] = i;
  return c;
}

std::vector<Vertex> children_with(const Context& c, Vertex u, int lo, int hi) {
  std::vector<Vertex> out;
  for (Vertex w : c.view.children[u])
    if (c.kind[w] >= lo && c.kind[w] <= hi) out.push_back(w);
  std::sort(out.begin(), out.end(), [&](Vertex a, Vertex b) { return c.pos[a] < c.pos[b]; });
  return out;
}

std::vector<Vertex> branch_roots(const Context& c, int lo, int hi) {
  std::vector<Vertex> out;
  for (Vertex v : c.view.bfs_order)
    if (c.kind[v] >= lo && c.kind[v] <= hi) out.push_back(v);
  return out;  // already in BFS order
}

std::vector<Vertex> last(const std::vector<Vertex>& v, std::size_t k) {
  return {v.end() - static_cast<std::ptrdiff_t>(k), v.end()};
}

// Orders by degree descending, then discovery ascending.
void sort_by_degree(const Tree& t, const Context& c, std::vector<Vertex>& vs) {
  std::sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) {
    if (t.degree(a) != t.degree(b)) return t.degree(a) > t.degree(b);
    return c.pos[a] < c.pos[b];
  });
}

// Returns (higher, lower) by degree; ties put the later-discovered vertex second.
std::pair<Vertex, Vertex> order_parents(const Tree& t, const Context& c, Vertex a, Vertex b) {
  if (t.degree(a) != t.degree(b)) return t.degree(a) > t.degree(b) ? std::pair{a, b} : std::pair{b, a};
  return c.pos[a] < c.pos[b] ? std::pair{a, b} : std::pair{b, a};
}

void hub_pairs(const Tree& t, const Context& c, int lo_w, int hi_w, int lo_v, int hi_v,
               const std::function<bool(Vertex)>& hub_ok, std::vector<Location>& out) {
  for (Vertex u : c.view.bfs_order) {
    if (!hub_ok(u)) continue;
    for (Vertex w : children_with(c, u, lo_w, hi_w))
      for (Vertex v : children_with(c, u, lo_v, hi_v)) out.push_back({u, w, v});
  }
  (void)t;
}

// Children of u other than `skip`, when all are B4 roots; empty otherwise.
std::vector<Vertex> all_b4_siblings(const Context& c, Vertex u, const std::vector<Vertex>& skip) {
  std::vector<Vertex> out;
  for (Vertex w : c.view.children[u]) {
    if (std::find(skip.begin(), skip.end(), w) != skip.end()) continue;
    if (c.kind[w] != 4) return {};
    out.push_back(w);
  }
  std::sort(out.begin(), out.end(), [&](Vertex a, Vertex b) { return c.pos[a] < c.pos[b]; });
  return out;
}

std::vector<Location> find_in(const Tree& t, const Context& c, TransformKind kind) {
  std::vector<Location> out;
  const auto& parent = c.view.parent;
  switch (kind) {
    case TransformKind::T_PRO05:
      hub_pairs(t, c, 1, 1, 5, 1 << 30, [](Vertex) { return true; }, out);
      break;
    case TransformKind::TA1:
      hub_pairs(t, c, 1, 1, 4, 4, [&](Vertex u) { return t.degree(u) <= 241; }, out);
      break;
    case TransformKind::TA2:
      hub_pairs(t, c, 1, 1, 4, 4, [&](Vertex u) { return t.degree(u) >= 242; }, out);
      break;
    case TransformKind::TB:
      hub_pairs(t, c, 2, 2, 4, 4, [](Vertex) { return true; }, out);
      break;
    case TransformKind::T11:
    case TransformKind::T12:
    case TransformKind::T13: {
      const auto roots = branch_roots(c, 5, 1 << 30);
      if (roots.size() < 3) break;
      auto vs = last(roots, 3);
      std::set<Vertex> parents;
      for (Vertex v : vs) parents.insert(parent[v]);
      if (parents.size() == 1) {
        if (kind != TransformKind::T13) break;
        sort_by_degree(t, c, vs);
        out.push_back({parent[vs[0]], vs[0], vs[1], vs[2]});
      } else if (parents.size() == 2) {
        // One parent holds a single branch root, the other holds two.
        std::map<Vertex, std::vector<Vertex>> by_parent;
        for (Vertex v : vs) by_parent[parent[v]].push_back(v);
        Vertex single = -1, dbl = -1;
        for (auto& [p, kids] : by_parent) (kids.size() == 1 ? single : dbl) = p;
        auto pair = by_parent[dbl];
        sort_by_degree(t, c, pair);
        const Vertex lone = by_parent[single][0];
        if (t.degree(single) >= t.degree(dbl)) {
          if (kind == TransformKind::T11) out.push_back({single, dbl, lone, pair[0], pair[1]});
        } else if (kind == TransformKind::T12) {
          out.push_back({dbl, single, pair[0], pair[1], lone});
        }
      }
      break;
    }
    case TransformKind::T211:
    case TransformKind::T212:
    case TransformKind::T221:
    case TransformKind::T222: {
      const auto roots = branch_roots(c, 5, 1 << 30);
      if (roots.size() != 2) break;
      const Vertex pa = parent[roots[0]], pb = parent[roots[1]];
      if (pa != pb) {
        const auto [u1, u2] = order_parents(t, c, pa, pb);
        const Vertex v1 = parent[roots[0]] == u1 ? roots[0] : roots[1];
        const Vertex v2 = v1 == roots[0] ? roots[1] : roots[0];
        if (kind == TransformKind::T211) {
          for (Vertex v3 : children_with(c, u2, 2, 3)) out.push_back({u1, v1, u2, v2, v3});
        } else if (kind == TransformKind::T212) {
          const auto sib = all_b4_siblings(c, u2, {v2});
          if (sib.size() >= 2) {
            const auto l = last(sib, 2);
            out.push_back({u1, v1, u2, v2, l[0], l[1]});
          }
        }
      } else {
        std::vector<Vertex> vs = roots;
        sort_by_degree(t, c, vs);
        const Vertex u1 = pa;
        if (kind == TransformKind::T221) {
          for (Vertex v3 : children_with(c, u1, 2, 3)) out.push_back({u1, vs[0], vs[1], v3});
        } else if (kind == TransformKind::T222) {
          const auto sib = all_b4_siblings(c, u1, vs);
          if (sib.size() >= 2) {
            const auto l = last(sib, 2);
            out.push_back({u1, vs[0], vs[1], l[0], l[1]});
          }
        }
      }
      break;
    }
    case TransformKind::T31:
    case TransformKind::T32: {
      const auto roots = branch_roots(c, 5, 1 << 30);
      if (roots.size() != 1) break;
      const Vertex v1 = roots[0], u1 = parent[v1];
      if (kind == TransformKind::T31) {
        for (Vertex v2 : children_with(c, u1, 2, 3)) out.push_back({u1, v1, v2});
      } else {
        const auto sib = all_b4_siblings(c, u1, {v1});
        if (sib.size() >= 3) {
          const auto l = last(sib, 3);
          out.push_back({u1, v1, l[0], l[1], l[2]});
        }
      }
      break;
    }
    case TransformKind::T1_THM4:
    case TransformKind::T2_THM4: {
      const auto roots = branch_roots(c, 4, 4);
      if (roots.size() < 5) break;
      const auto vs = last(roots, 5);
      std::set<Vertex> parents;
      for (Vertex v : vs) parents.insert(parent[v]);
      if (parents.size() == 1 && kind == TransformKind::T2_THM4) {
        Location loc{parent[vs[0]]};
        loc.insert(loc.end(), vs.begin(), vs.end());
        out.push_back(loc);
      } else if (parents.size() == 2 && kind == TransformKind::T1_THM4) {
        const auto [u1, u2] = order_parents(t, c, *parents.begin(), *parents.rbegin());
        Location loc{u1, u2};
        loc.insert(loc.end(), vs.begin(), vs.end());
        out.push_back(loc);
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rewriting

class Rewriter {
public:
  Rewriter(const Tree& t, const RootedView& view) : t_(t), view_(view) {
    for (auto [u, v] : t.edges()) edges_.insert(norm(u, v));
  }

  void remove(Vertex u, Vertex v) {
    if (edges_.erase(norm(u, v)) != 1) throw std::logic_error("rewrite: missing edge");
  }
  void add(Vertex u, Vertex v) {
    if (!edges_.insert(norm(u, v)).second) throw std::logic_error("rewrite: duplicate edge");
  }

  /// Detaches a child P2 (c, leaf) of v, keeping the c-leaf edge.
  std::pair<Vertex, Vertex> cut_p2(Vertex v) {
    const auto& kids = view_.children[v];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      const Vertex c = *it;
      if (used_.count(c) || t_.degree(c) != 2) continue;
      const auto& g = view_.children[c];
      if (g.size() != 1 || t_.degree(g[0]) != 1) continue;
      used_.insert(c);
      remove(v, c);
      return {c, g[0]};
    }
    throw std::logic_error("rewrite: no pendant P2 left to cut");
  }

  /// Strips the edges among `pool` and hangs paths of the given lengths
  /// below `root`, consuming pool vertices in order.
  void rebuild(Vertex root, const std::vector<int>& lengths, const std::vector<Vertex>& pool,
               std::size_t& next) {
    for (int len : lengths) {
      Vertex prev = root;
      for (int i = 0; i < len; ++i) {
        const Vertex x = pool.at(next++);
        add(prev, x);
        prev = x;
      }
    }
  }

  void isolate(const std::vector<Vertex>& pool) {
    const std::set<Vertex> in(pool.begin(), pool.end());
    for (auto it = edges_.begin(); it != edges_.end();)
      it = (in.count(it->first) || in.count(it->second)) ? edges_.erase(it) : std::next(it);
  }

  Tree build() const { return Tree(t_.order(), {edges_.begin(), edges_.end()}, t_.root()); }

private:
  static Edge norm(Vertex u, Vertex v) { return {std::min(u, v), std::max(u, v)}; }

  const Tree& t_;
  const RootedView& view_;
  std::set<Edge> edges_;
  std::set<Vertex> used_;
};

// Cuts one P2 from each source; the first cut's head becomes the root of
// the composite branch and its leaf joins the pool with the other P2's.
Vertex assemble_star(Rewriter& rw, const std::vector<Vertex>& sources, StarKind kind) {
  std::vector<Vertex> pool;
  Vertex root = -1;
  for (Vertex s : sources) {
    const auto [c, l] = rw.cut_p2(s);
    if (root < 0) {
      root = c;
      pool.push_back(l);
    } else {
      pool.push_back(c);
      pool.push_back(l);
    }
  }
  rw.isolate(pool);
  std::size_t next = 0;
  switch (kind) {
    case StarKind::B2_STAR:
      rw.rebuild(root, {2, 3}, pool, next);
      break;
    case StarKind::B3_STAR:
      rw.rebuild(root, {2, 2, 3}, pool, next);
      break;
    case StarKind::B3_DOUBLE_STAR: {
      const Vertex q = pool.at(next++);
      rw.add(root, q);
      rw.rebuild(q, {2, 2}, pool, next);
      rw.rebuild(root, {2, 2}, pool, next);
      break;
    }
  }
  return root;
}

// Sum over the symmetric difference of the two edge-degree multisets, so
// the result does not suffer cancellation between two large totals.
double delta_from_trees(const Tree& before, const Tree& after) {
  std::map<std::pair<int, int>, int> count;
  auto tally = [&](const Tree& t, int sign) {
    for (auto [u, v] : t.edges()) {
      int a = t.degree(u), b = t.degree(v);
      if (a > b) std::swap(a, b);
      count[{a, b}] += sign;
    }
  };
  tally(after, 1);
  tally(before, -1);
  std::vector<double> plus, minus;
  for (const auto& [pair, k] : count) {
    const double w = edge_weight(pair.first, pair.second);
    for (int i = 0; i < k; ++i) plus.push_back(w);
    for (int i = 0; i < -k; ++i) minus.push_back(w);
  }
  return sum_weights(plus) - sum_weights(minus);
}

std::map<std::string, double> parameters_at(const Tree& t, const Context& c, TransformKind kind,
                                            const Location& l) {
  auto d = [&](std::size_t i) { return static_cast<double>(t.degree(l.at(i))); };
  switch (kind) {
    case TransformKind::T_PRO05: return {{"du", d(0)}, {"dv", d(2)}};
    case TransformKind::TA1:
    case TransformKind::TA2:
    case TransformKind::TB: return {{"du", d(0)}};
    case TransformKind::T11: return {{"du2", d(1)}};
    case TransformKind::T12:
    case TransformKind::T13: return {{"du1", d(0)}};
    case TransformKind::T211: return {{"du2", d(2)}, {"dv2", d(3)}, {"dv3", d(4)}};
    case TransformKind::T212: return {{"du2", d(2)}};
    case TransformKind::T221: return {{"du1", d(0)}, {"dv1", d(1)}, {"dv3", d(3)}};
    case TransformKind::T222:
    case TransformKind::T32: return {{"du1", d(0)}};
    case TransformKind::T31: return {{"du1", d(0)}, {"dv1", d(1)}, {"dv2", d(2)}};
    case TransformKind::T1_THM4: {
      // x = number of the five B4 roots hanging from u1
      double x = 0;
      for (std::size_t i = 2; i < l.size(); ++i) x += c.view.parent[l[i]] == l[0];
      return {{"du1", d(0)}, {"du2", d(1)}, {"x", x}};
    }
    case TransformKind::T2_THM4: return {{"du1", d(0)}};
  }
  return {};
}

}  // namespace

std::vector<Location> find_configuration(const Tree& t, TransformKind kind) {
  return find_in(t, analyze(t), kind);
}

TransformOutcome apply(const Tree& t, TransformKind kind, const Location& loc) {
  const Context c = analyze(t);
  const auto locs = find_in(t, c, kind);
  if (std::find(locs.begin(), locs.end(), loc) == locs.end())
    throw PreconditionError("apply: location does not match the " + to_string(kind) +
                            " configuration");
  Rewriter rw(t, c.view);
  switch (kind) {
    case TransformKind::T_PRO05:
    case TransformKind::TA1: {
      const Vertex w = loc[1], v = loc[2];
      const auto [c1, l1] = rw.cut_p2(v);
      const auto [c2, l2] = rw.cut_p2(v);
      const Vertex head = c.view.children[w][0];
      const Vertex leaf = c.view.children[head][0];
      const std::vector<Vertex> pool{head, leaf, c1, l1, c2, l2};
      rw.remove(w, head);
      rw.isolate(pool);
      std::size_t next = 0;
      rw.rebuild(w, {3, 3}, pool, next);
      break;
    }
    case TransformKind::TA2:
      rw.remove(loc[0], loc[1]);
      rw.add(loc[2], loc[1]);
      break;
    case TransformKind::TB: {
      const auto [h, l] = rw.cut_p2(loc[2]);
      rw.add(loc[1], h);
      break;
    }
    case TransformKind::T11:
    case TransformKind::T12: {
      const Vertex attach = kind == TransformKind::T11 ? loc[1] : loc[0];
      rw.add(attach, assemble_star(rw, {loc[2], loc[3], loc[4]}, StarKind::B2_STAR));
      break;
    }
    case TransformKind::T13:
      rw.add(loc[0], assemble_star(rw, {loc[1], loc[2], loc[3]}, StarKind::B2_STAR));
      break;
    case TransformKind::T211: {
      const auto [h, l] = rw.cut_p2(loc[3]);
      rw.add(loc[4], h);
      break;
    }
    case TransformKind::T221: {
      const auto [h, l] = rw.cut_p2(loc[1]);
      rw.add(loc[3], h);
      break;
    }
    case TransformKind::T31: {
      const auto [h, l] = rw.cut_p2(loc[1]);
      rw.add(loc[2], h);
      break;
    }
    case TransformKind::T212:
      rw.add(loc[2], assemble_star(rw, {loc[1], loc[3], loc[4], loc[5]}, StarKind::B3_STAR));
      break;
    case TransformKind::T222:
    case TransformKind::T32:
      rw.add(loc[0], assemble_star(rw, {loc[1], loc[2], loc[3], loc[4]}, StarKind::B3_STAR));
      break;
    case TransformKind::T1_THM4:
      rw.add(loc[1], assemble_star(rw, {loc.begin() + 2, loc.end()}, StarKind::B3_DOUBLE_STAR));
      break;
    case TransformKind::T2_THM4:
      rw.add(loc[0], assemble_star(rw, {loc.begin() + 1, loc.end()}, StarKind::B3_DOUBLE_STAR));
      break;
  }

  TransformOutcome out{kind, loc, t, rw.build(), 0.0, {}, parameters_at(t, c, kind, loc)};
  out.delta_exact = delta_from_trees(out.before, out.after);
  out.closed_form = delta_closed_form(kind, out.parameters);
  return out;
}

// ---------------------------------------------------------------------------
// Instances

namespace {

class InstanceMaker {
public:
  explicit InstanceMaker(std::uint64_t seed) : rng_(seed) {}

  int pick(std::initializer_list<int> options) {
    std::uniform_int_distribution<std::size_t> d(0, options.size() - 1);
    return *(options.begin() + d(rng_));
  }
  int offset(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  void fill(TreeBuilder& b, Vertex at, int count, std::initializer_list<int> kinds) {
    for (int i = 0; i < count; ++i) b.add_branch(at, pick(kinds));
  }

private:
  std::mt19937_64 rng_;
};

// Either makes u the root, or hangs u below a hub root carrying B3 fillers.
Vertex make_hub(TreeBuilder& b, bool wrap) {
  if (!wrap) return b.add_vertex();
  const Vertex h = b.add_vertex();
  b.add_branch(h, 3);
  b.add_branch(h, 3);
  const Vertex u = b.add_vertex();
  b.add_edge(h, u);
  b.add_branch(h, 3);
  return u;
}

// Child count that gives u the requested degree.
int slots(int degree, bool has_parent) { return has_parent ? degree - 1 : degree; }

}  // namespace

std::vector<Tree> transform_instances(TransformKind kind, std::uint64_t seed) {
  InstanceMaker m(seed);
  std::vector<Tree> out;
  auto emit = [&](const TreeBuilder& b) { out.push_back(b.build(0)); };
  auto ks = [](int d) { return 5 + d % 6; };  // cycles k through [5, 10]

  switch (kind) {
    case TransformKind::T_PRO05:
      for (int du = 6; du <= 300; ++du)
        for (int k = 5; k <= 10; ++k) {
          TreeBuilder b;
          const bool wrap = (du + k) % 2;
          const Vertex u = make_hub(b, wrap);
          b.add_branch(u, 1);
          b.add_branch(u, k);
          m.fill(b, u, slots(du, wrap) - 2, {2, 3});
          emit(b);
        }
      break;
    case TransformKind::TA1:
    case TransformKind::TA2:
    case TransformKind::TB: {
      const int lo = kind == TransformKind::TA2 ? 242 : 6;
      const int hi = kind == TransformKind::TA1 ? 241 : kind == TransformKind::TA2 ? 400 : 300;
      for (int du = lo; du <= hi; ++du) {
        TreeBuilder b;
        const bool wrap = du % 2;
        const Vertex u = make_hub(b, wrap);
        b.add_branch(u, kind == TransformKind::TB ? 2 : 1);
        b.add_branch(u, 4);
        m.fill(b, u, slots(du, wrap) - 2, {2, 3});
        emit(b);
      }
      break;
    }
    case TransformKind::T11:
      for (int du2 = 6; du2 <= 300; ++du2) {
        TreeBuilder b;
        const int du1 = du2 + m.offset(0, 3);
        const Vertex u1 = b.add_vertex();
        b.add_branch(u1, ks(du2));
        const Vertex u2 = b.add_vertex();
        b.add_edge(u1, u2);
        m.fill(b, u1, du1 - 2, {2, 3});
        b.add_branch(u2, ks(du2 + 1));
        b.add_branch(u2, ks(du2 + 2));
        m.fill(b, u2, du2 - 3, {2, 3});
        emit(b);
      }
      break;
    case TransformKind::T12:
      for (int du1 = 6; du1 <= 300; ++du1) {
        TreeBuilder b;
        const int du2 = std::max(2, du1 - m.offset(1, 6));
        const Vertex u1 = b.add_vertex();
        b.add_branch(u1, ks(du1));
        b.add_branch(u1, ks(du1 + 1));
        const Vertex u2 = b.add_vertex();
        b.add_edge(u1, u2);
        m.fill(b, u1, du1 - 3, {2, 3});
        b.add_branch(u2, ks(du1 + 2));
        m.fill(b, u2, du2 - 2, {2, 3});
        emit(b);
      }
      break;
    case TransformKind::T13:
      for (int du1 = 6; du1 <= 300; ++du1) {
        TreeBuilder b;
        const bool wrap = du1 % 2;
        const Vertex u1 = make_hub(b, wrap);
        for (int i = 0; i < 3; ++i) b.add_branch(u1, ks(du1 + i));
        m.fill(b, u1, slots(du1, wrap) - 3, {2, 3});
        emit(b);
      }
      break;
    case TransformKind::T211:
    case TransformKind::T212:
      for (int du2 = 6; du2 <= 300; ++du2) {
        TreeBuilder b;
        const int du1 = du2 + m.offset(0, 3);
        const Vertex u1 = b.add_vertex();
        b.add_branch(u1, ks(du2));
        const Vertex u2 = b.add_vertex();
        b.add_edge(u1, u2);
        m.fill(b, u1, du1 - 2, {2, 3});
        b.add_branch(u2, ks(du2 + 3));
        if (kind == TransformKind::T211) {
          b.add_branch(u2, m.pick({2, 3}));
          m.fill(b, u2, du2 - 3, {2, 3, 4});
        } else {
          m.fill(b, u2, du2 - 2, {4});
        }
        emit(b);
      }
      break;
    case TransformKind::T221:
    case TransformKind::T222:
    case TransformKind::T31:
    case TransformKind::T32:
      for (int du1 = 6; du1 <= 300; ++du1) {
        TreeBuilder b;
        const bool wrap = du1 % 2;
        const Vertex u1 = make_hub(b, wrap);
        const bool two = kind == TransformKind::T221 || kind == TransformKind::T222;
        b.add_branch(u1, ks(du1));
        if (two) b.add_branch(u1, ks(du1 + 1));
        const int rest = slots(du1, wrap) - (two ? 2 : 1);
        if (kind == TransformKind::T221 || kind == TransformKind::T31) {
          b.add_branch(u1, m.pick({2, 3}));
          m.fill(b, u1, rest - 1, {2, 3, 4});
        } else {
          m.fill(b, u1, rest, {4});
        }
        emit(b);
      }
      break;
    case TransformKind::T1_THM4:
      for (int x = 1; x <= 4; ++x)
        for (int du2 = 6; du2 <= 300; ++du2) {
          TreeBuilder b;
          const int du1 = std::max(du2, x + 1) + m.offset(0, 3);
          const Vertex u1 = b.add_vertex();
          for (int i = 0; i < x; ++i) b.add_branch(u1, 4);
          const Vertex u2 = b.add_vertex();
          b.add_edge(u1, u2);
          m.fill(b, u1, du1 - x - 1, {2, 3});
          for (int i = 0; i < 5 - x; ++i) b.add_branch(u2, 4);
          m.fill(b, u2, du2 - (5 - x) - 1, {3});
          emit(b);
        }
      break;
    case TransformKind::T2_THM4:
      for (int du1 = 6; du1 <= 300; ++du1) {
        TreeBuilder b;
        const bool wrap = du1 % 2;
        const Vertex u1 = make_hub(b, wrap);
        for (int i = 0; i < 5; ++i) b.add_branch(u1, 4);
        m.fill(b, u1, slots(du1, wrap) - 5, {2, 3});
        emit(b);
      }
      break;
  }
  return out;
}

VerifyReport verify_decrease(TransformKind kind, std::uint64_t seed) {
  VerifyReport rep;
  rep.kind = kind;
  rep.seed = seed;
  const auto instances = transform_instances(kind, seed);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Tree& t = instances[i];
    const auto tag = [&](const std::string& what) {
      return to_string(kind) + " instance " + std::to_string(i) + " (n=" +
             std::to_string(t.order()) + "): " + what;
    };
    const auto locs = find_configuration(t, kind);
    if (locs.empty()) {
      rep.violations.push_back(tag("configuration not found"));
      continue;
    }
    const auto out = apply(t, kind, locs.front());
    ++rep.instances;
    rep.max_delta = std::max(rep.max_delta, out.delta_exact);
    if (!(out.delta_exact < -kAbcTolerance))
      rep.violations.push_back(tag("delta " + std::to_string(out.delta_exact) + " not negative"));
    if (out.after.order() != t.order()) rep.violations.push_back(tag("order changed"));
    if (out.closed_form.bound == BoundKind::Exact) {
      const double err = std::abs(out.delta_exact - out.closed_form.value);
      rep.max_exact_error = std::max(rep.max_exact_error, err);
      if (err > kAbcTolerance) rep.violations.push_back(tag("closed form mismatch"));
    } else if (out.delta_exact > out.closed_form.value + kAbcTolerance) {
      rep.violations.push_back(tag("bound exceeded"));
    }
  }
  return rep;
}

}  // namespace abc
