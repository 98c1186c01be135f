#include "oracles.hpp"

#include <algorithm>

namespace symbreak::oracles {

OraclePoset to_poset(const FaceLattice& l) {
  OraclePoset p;
  p.rank.resize(l.face_count());
  p.up.resize(l.face_count());
  p.down.resize(l.face_count());
  for (FaceIndex f = 0; f < l.face_count(); ++f) {
    p.rank[f] = l.rank_of(f);
    for (FaceIndex g : l.up(f)) {
      p.up[f].push_back(static_cast<int>(g));
      p.down[g].push_back(static_cast<int>(f));
    }
  }
  return p;
}

OraclePoset template_poset(const GadgetTemplate& t, std::vector<int>* boundary_elems) {
  OraclePoset p;
  const std::size_t ni = t.interior_count();
  // boundary nodes indexed by mask, appended after the interior block
  std::vector<int> mask_node(1u << t.d, -1);
  p.rank.assign(ni, 0);
  for (std::size_t i = 0; i < ni; ++i) p.rank[i] = t.rank[i];
  p.up.resize(ni);
  p.down.resize(ni);
  auto boundary = [&](std::uint32_t mask) {
    if (mask_node[mask] < 0) {
      mask_node[mask] = static_cast<int>(p.rank.size());
      p.rank.push_back(__builtin_popcount(mask) - 1);
      p.up.emplace_back();
      p.down.emplace_back();
      if (boundary_elems) boundary_elems->push_back(mask_node[mask]);
    }
    return mask_node[mask];
  };
  // frame simplex structure among boundary masks
  const std::uint32_t full = (1u << t.d) - 1u;
  for (std::uint32_t mask = 1; mask < full; ++mask) boundary(mask);
  for (std::uint32_t mask = 1; mask < full; ++mask)
    for (int i = 0; i < t.d; ++i) {
      std::uint32_t bigger = mask | (1u << i);
      if (bigger != mask && bigger != full) {
        p.up[static_cast<std::size_t>(boundary(mask))].push_back(boundary(bigger));
        p.down[static_cast<std::size_t>(boundary(bigger))].push_back(boundary(mask));
      }
    }
  for (const auto& [lo, hi] : t.covers_int) {
    p.up[lo].push_back(static_cast<int>(hi));
    p.down[hi].push_back(static_cast<int>(lo));
  }
  for (const auto& [mask, hi] : t.covers_bnd) {
    int b = boundary(mask);
    p.up[static_cast<std::size_t>(b)].push_back(static_cast<int>(hi));
    p.down[hi].push_back(b);
  }
  return p;
}

std::uint64_t count_maximal_chains(const FaceLattice& l) {
  std::vector<std::uint64_t> ways(l.face_count(), 0);
  if (l.bottom() == kNoFace || l.top() == kNoFace) return 0;
  ways[l.bottom()] = 1;
  // faces are rank-sorted, so a single sweep is a topological order
  for (FaceIndex f = 0; f < l.face_count(); ++f)
    for (FaceIndex g : l.up(f)) ways[g] += ways[f];
  return ways[l.top()];
}

namespace {

struct Backtracker {
  const OraclePoset& a;
  const OraclePoset& b;
  std::vector<int> image, used;
  std::vector<int> order;  // elements of a in assignment order
  std::uint64_t found = 0, limit;

  Backtracker(const OraclePoset& a_, const OraclePoset& b_, std::uint64_t limit_)
      : a(a_), b(b_), image(a_.size(), -1), used(b_.size(), 0), limit(limit_) {
    // assign elements in a connectivity-greedy order so every step is
    // constrained by already-placed neighbors as soon as possible
    std::vector<int> score(a.size(), 0);
    std::vector<char> placed(a.size(), 0);
    for (std::size_t step = 0; step < a.size(); ++step) {
      int best = -1;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (placed[i]) continue;
        if (best < 0 || score[i] > score[static_cast<std::size_t>(best)] ||
            (score[i] == score[static_cast<std::size_t>(best)] &&
             a.rank[i] < a.rank[static_cast<std::size_t>(best)]))
          best = static_cast<int>(i);
      }
      placed[static_cast<std::size_t>(best)] = 1;
      order.push_back(best);
      for (int n : a.up[static_cast<std::size_t>(best)]) ++score[static_cast<std::size_t>(n)];
      for (int n : a.down[static_cast<std::size_t>(best)]) ++score[static_cast<std::size_t>(n)];
    }
  }

  bool compatible(int x, int y) const {
    if (a.rank[static_cast<std::size_t>(x)] != b.rank[static_cast<std::size_t>(y)]) return false;
    if (a.up[static_cast<std::size_t>(x)].size() != b.up[static_cast<std::size_t>(y)].size()) return false;
    if (a.down[static_cast<std::size_t>(x)].size() != b.down[static_cast<std::size_t>(y)].size()) return false;
    for (int dc : a.down[static_cast<std::size_t>(x)]) {
      if (image[static_cast<std::size_t>(dc)] < 0) continue;
      const auto& dn = b.down[static_cast<std::size_t>(y)];
      if (std::find(dn.begin(), dn.end(), image[static_cast<std::size_t>(dc)]) == dn.end()) return false;
    }
    for (int uc : a.up[static_cast<std::size_t>(x)]) {
      if (image[static_cast<std::size_t>(uc)] < 0) continue;
      const auto& un = b.up[static_cast<std::size_t>(y)];
      if (std::find(un.begin(), un.end(), image[static_cast<std::size_t>(uc)]) == un.end()) return false;
    }
    return true;
  }

  void run(std::size_t depth) {
    if (found >= limit) return;
    if (depth == order.size()) {
      ++found;
      return;
    }
    int x = order[depth];
    if (image[static_cast<std::size_t>(x)] >= 0) {  // pinned
      run(depth + 1);
      return;
    }
    for (std::size_t y = 0; y < b.size(); ++y) {
      if (used[y] || !compatible(x, static_cast<int>(y))) continue;
      image[static_cast<std::size_t>(x)] = static_cast<int>(y);
      used[y] = 1;
      run(depth + 1);
      image[static_cast<std::size_t>(x)] = -1;
      used[y] = 0;
      if (found >= limit) return;
    }
  }
};

}  // namespace

std::uint64_t count_automorphisms(const OraclePoset& p,
                                  const std::vector<std::pair<int, int>>& pinned,
                                  std::uint64_t limit) {
  Backtracker bt(p, p, limit);
  for (const auto& [x, y] : pinned) {
    bt.image[static_cast<std::size_t>(x)] = y;
    bt.used[static_cast<std::size_t>(y)] = 1;
  }
  bt.run(0);
  return bt.found;
}

std::uint64_t count_isomorphisms(const OraclePoset& a, const OraclePoset& b,
                                 std::uint64_t limit) {
  if (a.size() != b.size()) return 0;
  Backtracker bt(a, b, limit);
  bt.run(0);
  return bt.found;
}

}  // namespace symbreak::oracles
