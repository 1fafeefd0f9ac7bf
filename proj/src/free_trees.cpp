// Free-tree generation by successor of center-rooted level sequences
// (Wright, Richmond, Odlyzko and McKay). Arrays are 1-based; l_[i] is the
// level of vertex i (root at level 1) and w_[i] its parent.

#include <stdexcept>

#include "abc/enumerate.hpp"

namespace abc {

namespace {
constexpr int kInfinity = std::numeric_limits<int>::max();
}

FreeTreeCursor::FreeTreeCursor(int n) : n_(n) {
  if (n < 1) throw std::domain_error("free_trees: n must be >= 1");
  l_.assign(static_cast<std::size_t>(n + 1), 0);
  w_.assign(static_cast<std::size_t>(n + 1), 0);
  if (n <= 3) {
    // One tree each; the general recurrence double-counts n = 3.
    small_ = true;
    for (int i = 1; i <= n; ++i) {
      l_[i] = i == 1 ? 1 : 2;
      w_[i] = i == 1 ? 0 : 1;
    }
    return;
  }
  const int k = n / 2 + 1;
  p_ = n;
  q_ = n - 1;
  h1_ = k;
  h2_ = n;
  c_ = n % 2 == 0 ? n + 1 : kInfinity;
  r_ = k;
  for (int i = 1; i <= k; ++i) l_[i] = i;
  for (int i = k + 1; i <= n; ++i) l_[i] = i - k + 1;
  for (int i = 1; i <= n; ++i) w_[i] = i - 1;
  w_[k + 1] = 1;
}

void FreeTreeCursor::next() {
  if (done_) return;
  ++index_;
  if (small_ || q_ == 0) {
    done_ = true;
    return;
  }
  advance();
}

void FreeTreeCursor::skip(std::uint64_t count) {
  for (std::uint64_t i = 0; i < count && !done_; ++i) next();
}

void FreeTreeCursor::advance() {
  const int n = n_;
  auto& l = l_;
  auto& w = w_;
  int p = p_, q = q_, h1 = h1_, h2 = h2_, c = c_, r = r_;
  bool fixit = false, needr = false, needc = false, needh2 = false;

  if (c == n + 1 ||
      (p == h2 && ((l[h1] == l[h2] + 1 && n - h2 > r - h1) || (l[h1] == l[h2] && n - h2 + 1 < r - h1)))) {
    if (l[r] > 3) {
      p = r;
      q = w[r];
      if (h1 == r) h1 = h1 - 1;
      fixit = true;
    } else {
      p = r;
      r = r - 1;
      q = 2;
    }
  }

  if (p <= h1) h1 = p - 1;
  if (p <= r) {
    needr = true;
  } else if (p <= h2) {
    needh2 = true;
  } else if (l[h2] == l[h1] - 1 && n - h2 == r - h1) {
    if (p <= c) needc = true;
  } else {
    c = kInfinity;
  }

  const int oldp = p;
  const int delta = q - p;
  const int oldlq = l[q];
  const int oldwq = w[q];
  p = kInfinity;

  for (int i = oldp; i <= n; ++i) {
    l[i] = l[i + delta];
    if (l[i] == 2) {
      w[i] = 1;
    } else {
      p = i;
      q = l[i] == oldlq ? oldwq : w[i + delta] - delta;
      w[i] = q;
    }
    if (needr && l[i] == 2) {
      needr = false;
      needh2 = true;
      r = i - 1;
    }
    if (needh2 && l[i] <= l[i - 1] && i > r + 1) {
      needh2 = false;
      h2 = i - 1;
      if (l[h2] == l[h1] - 1 && n - h2 == r - h1) {
        needc = true;
      } else {
        c = kInfinity;
      }
    }
    if (needc) {
      if (l[i] != l[h1 - h2 + i] - 1) {
        needc = false;
        c = i;
      } else {
        c = i + 1;
      }
    }
  }

  if (fixit) {
    r = n - h1 + 1;
    for (int i = r + 1; i <= n; ++i) {
      l[i] = i - r + 1;
      w[i] = i - 1;
    }
    w[r + 1] = 1;
    h2 = n;
    p = n;
    q = p - 1;
    c = kInfinity;
  } else {
    if (p == kInfinity) {
      p = l[oldp - 1] != 2 ? oldp - 1 : oldp - 2;
      q = w[p];
    }
    if (needh2) {
      h2 = n;
      c = (l[h2] == l[h1] - 1 && h1 == r) ? n + 1 : kInfinity;
    }
  }

  p_ = p;
  q_ = q;
  h1_ = h1;
  h2_ = h2;
  c_ = c;
  r_ = r;
}

std::vector<int> FreeTreeCursor::parents() const {
  std::vector<int> parent(static_cast<std::size_t>(n_));
  for (int i = 1; i <= n_; ++i) parent[i - 1] = w_[i] - 1;
  return parent;
}

LevelSequence FreeTreeCursor::levels() const {
  std::vector<int> seq(static_cast<std::size_t>(n_));
  for (int i = 1; i <= n_; ++i) seq[i - 1] = l_[i] - 1;
  return LevelSequence(std::move(seq));
}

Tree FreeTreeCursor::tree() const {
  const auto parent = parents();
  return Tree::from_parents(parent);
}

void FreeTreeCursor::degrees(std::vector<int>& out) const {
  out.assign(static_cast<std::size_t>(n_), 0);
  for (int i = 2; i <= n_; ++i) {
    ++out[i - 1];
    ++out[w_[i] - 1];
  }
}

void FreeTreeCursor::parent_pairs(std::vector<Edge>& out) const {
  out.clear();
  for (int i = 2; i <= n_; ++i) out.emplace_back(i - 1, w_[i] - 1);
}

std::uint64_t count_free_trees(int n) {
  FreeTreeCursor cur(n);
  std::uint64_t count = 0;
  for (; !cur.done(); cur.next()) ++count;
  return count;
}

std::vector<Tree> free_trees(int n) {
  std::vector<Tree> out;
  for (FreeTreeCursor cur(n); !cur.done(); cur.next()) out.push_back(cur.tree());
  return out;
}

}  // namespace abc
