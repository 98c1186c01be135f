#include "symbreak/order_complex.hpp"

#include <algorithm>

namespace symbreak {

std::uint32_t LabelledComplex::vertex_of_face(FaceIndex q_face) const {
  auto it = std::lower_bound(vertex_source.begin(), vertex_source.end(), q_face);
  if (it == vertex_source.end() || *it != q_face)
    fail(ErrorKind::input, "face has no subdivision vertex");
  return static_cast<std::uint32_t>(it - vertex_source.begin());
}

LabelledComplex subdivide(const FaceLattice& q) {
  if (q.rank() < 2) fail(ErrorKind::input, "subdivision requires rank at least 2");
  if (!q.is_validated()) fail(ErrorKind::input, "subdivision requires a validated lattice");
  if (q.proper_face_count() > 65536) fail(ErrorKind::capacity, "too many faces to subdivide");

  LabelledComplex c;
  c.d = q.rank();
  // proper faces in index order (= sorted by rank then id)
  for (FaceIndex f = 0; f < q.face_count(); ++f) {
    int r = q.rank_of(f);
    if (r < 0 || r >= q.rank()) continue;
    c.vertex_source.push_back(f);
    c.vertex_label.push_back(r);
  }

  // comparability by upward closure, restricted to proper faces
  const std::size_t nv = c.vertex_source.size();
  std::vector<std::vector<std::uint32_t>> strictly_above(nv);
  {
    std::vector<char> mark(q.face_count(), 0);
    std::vector<FaceIndex> stack;
    for (std::size_t v = 0; v < nv; ++v) {
      stack.assign(1, c.vertex_source[v]);
      std::vector<FaceIndex> seen;
      while (!stack.empty()) {
        FaceIndex x = stack.back();
        stack.pop_back();
        for (FaceIndex y : q.up(x)) {
          if (q.rank_of(y) >= q.rank() || mark[y]) continue;
          mark[y] = 1;
          seen.push_back(y);
          stack.push_back(y);
        }
      }
      for (FaceIndex y : seen) {
        mark[y] = 0;
        strictly_above[v].push_back(c.vertex_of_face(y));
      }
      std::sort(strictly_above[v].begin(), strictly_above[v].end());
    }
  }

  // chains by DFS; extending by a face above the current maximum keeps each
  // tuple sorted by rank and the enumeration lexicographic
  c.simplices_by_dim.assign(static_cast<std::size_t>(c.d), {});
  std::vector<std::uint32_t> chain;
  auto emit = [&](const std::vector<std::uint32_t>& ch) {
    c.simplices_by_dim[ch.size() - 1].insert(c.simplices_by_dim[ch.size() - 1].end(), ch.begin(),
                                             ch.end());
  };
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  for (std::uint32_t v = 0; v < nv; ++v) {
    chain.assign(1, v);
    emit(chain);
    stack.assign(1, {v, 0});
    while (!stack.empty()) {
      auto& [cur, pos] = stack.back();
      if (pos == strictly_above[cur].size()) {
        stack.pop_back();
        chain.pop_back();
        continue;
      }
      std::uint32_t next = strictly_above[cur][pos++];
      chain.push_back(next);
      emit(chain);
      if (chain.size() < static_cast<std::size_t>(c.d)) {
        stack.push_back({next, 0});
      } else {
        chain.pop_back();
      }
    }
  }

  c.chambers = build_flag_graph(q);
  return c;
}

ValencyTable valencies(const LabelledComplex& c) {
  ValencyTable t;
  t.val.assign(c.vertex_count(), 0);
  t.s.assign(c.vertex_count(), 0);
  const auto& edges = c.simplices_by_dim[1];
  for (std::size_t i = 0; i < edges.size(); i += 2) {
    ++t.val[edges[i]];
    ++t.val[edges[i + 1]];
  }
  const int d = c.chambers.degree;
  for (std::size_t i = 0; i < c.chambers.flag_count; ++i) {
    auto f = c.chambers.flag(i);
    for (int r = 0; r < d; ++r) ++t.s[c.vertex_of_face(f[r])];
  }
  return t;
}

ChamberOrbits chamber_action(const LabelledComplex& c, const PermGroup& gamma) {
  // a validated automorphism is automatically rank- (= label-) preserving;
  // the action on chambers is the flag action
  const FlagGraph& fg = c.chambers;
  auto act = [&](const Permutation& p, std::uint32_t chamber) {
    return map_flag(fg, p, chamber);
  };
  ChamberOrbits out;
  out.orbits = orbits(gamma, fg.flag_count, act);
  const auto& els = gamma.closure();
  // freeness: orbit sizes must equal the group order
  for (const auto& mem : out.orbits.members)
    if (mem.size() != els.size())
      fail(ErrorKind::internal, "chamber action is not free");
  out.transfer.assign(fg.flag_count, 0);
  for (const auto& mem : out.orbits.members) {
    std::uint32_t rep = mem.front();
    std::vector<char> used(mem.size(), 0);
    for (std::uint32_t e = 0; e < els.size(); ++e) {
      std::uint32_t img = act(els[e], rep);
      out.transfer[img] = e;
    }
  }
  return out;
}

nlohmann::ordered_json LabelledComplex::to_json(const FaceLattice& q) const {
  nlohmann::ordered_json j;
  j["dimension"] = d - 1;
  auto& verts = j["vertices"] = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < vertex_count(); ++v)
    verts.push_back({{"id", q.id_of(vertex_source[v])},
                     {"label", vertex_label[v]},
                     {"source-face", q.id_of(vertex_source[v])}});
  auto& chs = j["chambers"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < chamber_count(); ++i) {
    auto f = chambers.flag(i);
    nlohmann::ordered_json ch = nlohmann::ordered_json::array();
    for (int r = 0; r < chambers.degree; ++r) ch.push_back(q.id_of(f[r]));
    chs.push_back(std::move(ch));
  }
  return j;
}

}  // namespace symbreak
