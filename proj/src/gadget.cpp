#include "symbreak/gadget.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "symbreak/shapes.hpp"

namespace symbreak {

CrosspolytopeDiagram crosspolytope_diagram(int d) {
  if (d < 3) fail(ErrorKind::input, "crosspolytope diagram requires rank >= 3");
  if (d > 12) fail(ErrorKind::capacity, "crosspolytope diagram rank too large");
  CrosspolytopeDiagram out;
  out.d = d;
  out.lattice = crosspolytope_lattice(d);
  const FaceId span = (1 << d);
  auto id_of = [&](unsigned support, unsigned signs) {
    return static_cast<FaceId>(support) * span + static_cast<FaceId>(signs);
  };
  const unsigned full = (1u << d) - 1u;
  out.outer_facet = id_of(full, full);
  out.central_tile = id_of(full, 0);
  for (int i = 0; i < d; ++i) {
    out.u_vertex.push_back(id_of(1u << i, 1u << i));
    out.z_vertex.push_back(id_of(1u << i, 0));
    out.f_u.push_back(id_of(full, 1u << i));
  }
  out.tile_count = (1u << d) - 1u;
  return out;
}

int feasible_apex_valency(int d, int want) {
  if (d == 3) return std::max(want, 3);
  if (want <= d) return d;
  int k = (want - d + d - 3) / (d - 2);
  return d + k * (d - 2);
}

PyramidGadget make_pyramid_gadget(int d, int m) {
  if (d < 3) fail(ErrorKind::input, "pyramid gadget requires rank >= 3");
  if (feasible_apex_valency(d, m) != m)
    fail(ErrorKind::input, "apex valency " + std::to_string(m) + " not attainable at rank " +
                               std::to_string(d) + "; nearest feasible value is " +
                               std::to_string(feasible_apex_valency(d, m)));
  PyramidGadget out;
  out.d = d;
  out.m = m;

  FaceLattice base;
  FaceId protected_facet;
  if (d == 3) {
    base = polygon_lattice(m);
    protected_facet = m;  // edge {v0, v1}
  } else {
    base = simplex_lattice(d - 1);
    protected_facet = static_cast<FaceId>(((1u << d) - 1u) ^ (1u << (d - 1)));
    std::set<FaceId> shielded;
    for (int v = 0; v < d - 1; ++v) shielded.insert(static_cast<FaceId>(1u << v));
    auto vertex_count = [&](const FaceLattice& l) {
      return static_cast<int>(l.rank_end(0) - l.rank_begin(0));
    };
    while (vertex_count(base) < m) {
      FaceId victim = -1;
      for (FaceIndex f = base.rank_begin(0); f < base.rank_end(0); ++f) {
        FaceId id = base.id_of(f);
        if (!shielded.count(id)) {
          victim = id;
          break;
        }
      }
      if (victim < 0) fail(ErrorKind::internal, "no free vertex to truncate");
      base = truncate_vertex(base, victim);
    }
  }
  FaceId apex = 0;
  out.lattice = pyramid_lattice(base, &apex);
  out.apex = apex;
  // the outer facet is the pyramid over the protected simplex facet, i.e. the
  // companion face of the base facet
  FaceId max_id = 0;
  for (FaceIndex f = 0; f < base.face_count(); ++f)
    max_id = std::max(max_id, std::abs(base.id_of(f)));
  out.outer_facet = 2 * (protected_facet + max_id + 1) + 1;

  // sanity: apex valency equals m, outer facet is a simplex through the apex
  FaceIndex av = out.lattice.require_index(apex);
  if (static_cast<int>(out.lattice.up(av).size()) != m)
    fail(ErrorKind::internal, "apex valency mismatch");
  return out;
}

// ---------------------------------------------------------------------------

StackedPolytope make_stacked(int d, int n) {
  if (d < 2) fail(ErrorKind::input, "stacked polytope requires rank >= 2");
  if (n < d + 1) fail(ErrorKind::input, "stacked polytope needs at least d+1 vertices");
  if (n > 100000) fail(ErrorKind::capacity, "stacked polytope too large");
  StackedPolytope out;
  out.d = d;
  out.n = n;
  // boundary of the d-simplex: facets = d-subsets of {0..d}
  for (int skip = d; skip >= 0; --skip) {
    std::vector<int> facet;
    for (int v = 0; v <= d; ++v)
      if (v != skip) facet.push_back(v);
    out.facets.push_back(std::move(facet));
  }
  out.valency.assign(static_cast<std::size_t>(d) + 1, d);
  int vertices = d + 1;
  while (vertices < n) {
    std::size_t best = 0;
    auto cost = [&](const std::vector<int>& facet) {
      int mx = 0, sum = 0;
      for (int v : facet) {
        mx = std::max(mx, out.valency[static_cast<std::size_t>(v)]);
        sum += out.valency[static_cast<std::size_t>(v)];
      }
      return std::pair<int, int>(mx, sum);
    };
    for (std::size_t i = 1; i < out.facets.size(); ++i) {
      auto ci = cost(out.facets[i]), cb = cost(out.facets[best]);
      if (ci < cb || (ci == cb && out.facets[i] < out.facets[best])) best = i;
    }
    std::vector<int> target = out.facets[best];
    out.facets.erase(out.facets.begin() + static_cast<std::ptrdiff_t>(best));
    int apex = vertices++;
    out.valency.push_back(d);
    for (int t : target) ++out.valency[static_cast<std::size_t>(t)];
    for (std::size_t skip = 0; skip < target.size(); ++skip) {
      std::vector<int> facet;
      for (std::size_t j = 0; j < target.size(); ++j)
        if (j != skip) facet.push_back(target[j]);
      facet.push_back(apex);
      std::sort(facet.begin(), facet.end());
      out.facets.push_back(std::move(facet));
    }
  }
  std::sort(out.facets.begin(), out.facets.end());
  out.outer_facet = out.facets.front();
  out.max_valency = *std::max_element(out.valency.begin(), out.valency.end());

  // face lattice: all nonempty vertex subsets of facets (the polytope is
  // simplicial), ids in (size, lex) order
  std::set<std::vector<int>> all;
  for (const auto& facet : out.facets) {
    unsigned k = static_cast<unsigned>(facet.size());
    for (unsigned s = 1; s < (1u << k); ++s) {
      std::vector<int> sub;
      for (unsigned j = 0; j < k; ++j)
        if (s & (1u << j)) sub.push_back(facet[static_cast<std::size_t>(j)]);
      all.insert(std::move(sub));
    }
  }
  std::vector<std::vector<int>> ordered(all.begin(), all.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::map<std::vector<int>, FaceId> face_id;
  std::vector<FaceEntry> faces;
  std::vector<std::pair<FaceId, FaceId>> covers;
  faces.push_back({-1, -1});
  faces.push_back({-2, d});
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    FaceId id = static_cast<FaceId>(i);
    face_id[ordered[i]] = id;
    faces.push_back({id, static_cast<int>(ordered[i].size()) - 1});
    if (ordered[i].size() == 1) covers.emplace_back(-1, id);
    if (static_cast<int>(ordered[i].size()) == d) covers.emplace_back(id, -2);
    if (ordered[i].size() >= 2) {
      for (std::size_t skip = 0; skip < ordered[i].size(); ++skip) {
        std::vector<int> sub;
        for (std::size_t j = 0; j < ordered[i].size(); ++j)
          if (j != skip) sub.push_back(ordered[i][j]);
        covers.emplace_back(face_id.at(sub), id);
      }
    }
  }
  out.lattice = FaceLattice::from_parts(d, std::move(faces), covers);
  return out;
}

int interior_valency_bound(int d, const StackedPolytope& L) {
  // vertex ids of the stacked lattice are the vertex numbers 0..n-1
  std::set<int> outer(L.outer_facet.begin(), L.outer_facet.end());
  int bound = d;
  for (FaceIndex f = L.lattice.rank_begin(0); f < L.lattice.rank_end(0); ++f) {
    int val = static_cast<int>(L.lattice.up(f).size());
    bool on_outer = outer.count(static_cast<int>(L.lattice.id_of(f))) > 0;
    bound = std::max(bound, on_outer ? val + 2 * (d - 1) : val);
  }
  return bound;
}

// ---------------------------------------------------------------------------
// template assembly

namespace {

struct ComplexBuilder {
  int d;
  std::vector<std::int8_t> rank;
  std::vector<std::vector<std::uint32_t>> up, down;
  std::vector<char> alive;
  std::vector<std::int32_t> bnd_mask;  // u-label set for boundary faces, -1 interior
  std::map<std::pair<unsigned, unsigned>, std::uint32_t> cross_node;  // (support, signs)

  std::uint32_t add(int r, std::int32_t mask) {
    rank.push_back(static_cast<std::int8_t>(r));
    up.emplace_back();
    down.emplace_back();
    alive.push_back(1);
    bnd_mask.push_back(mask);
    return static_cast<std::uint32_t>(rank.size() - 1);
  }
  void cover(std::uint32_t lo, std::uint32_t hi) {
    up[lo].push_back(hi);
    down[hi].push_back(lo);
  }
  void kill(std::uint32_t node) {
    alive[node] = 0;
    for (std::uint32_t lo : down[node]) {
      auto& u = up[lo];
      u.erase(std::remove(u.begin(), u.end(), node), u.end());
    }
    down[node].clear();
  }
};

// Vertex sets of all faces below `top_face` (inclusive), via downward DFS.
std::map<FaceIndex, std::vector<FaceIndex>> vertex_sets_below(const FaceLattice& l,
                                                              FaceIndex top_face) {
  std::map<FaceIndex, std::vector<FaceIndex>> verts;
  std::vector<FaceIndex> order{top_face};
  std::set<FaceIndex> seen{top_face};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (FaceIndex g : l.down(order[i]))
      if (l.rank_of(g) >= 0 && seen.insert(g).second) order.push_back(g);
  std::sort(order.begin(), order.end());  // ranks ascend with index order
  for (FaceIndex f : order) {
    if (l.rank_of(f) == 0) {
      verts[f] = {f};
      continue;
    }
    std::set<FaceIndex> acc;
    for (FaceIndex g : l.down(f)) {
      if (l.rank_of(g) < 0) continue;
      const auto& vs = verts.at(g);
      acc.insert(vs.begin(), vs.end());
    }
    verts[f] = std::vector<FaceIndex>(acc.begin(), acc.end());
  }
  return verts;
}

// Replace a simplex tile of the crosspolytope diagram by the Schlegel diagram
// of `poly` with `outer` as its frame; `position_of` sends each vertex of the
// outer facet to a coordinate position 0..d-1 of the tile.
void splice(ComplexBuilder& b, const FaceLattice& poly, FaceIndex outer, unsigned tile_signs,
            const std::map<FaceIndex, int>& position_of) {
  const int d = b.d;
  const unsigned full = (1u << d) - 1u;
  std::uint32_t tile = b.cross_node.at({full, tile_signs});

  auto below = vertex_sets_below(poly, outer);
  std::vector<std::uint32_t> node(poly.face_count(), 0xffffffffu);
  for (FaceIndex f = 0; f < poly.face_count(); ++f) {
    int r = poly.rank_of(f);
    if (r < 0 || r == poly.rank() || f == outer) continue;
    auto it = below.find(f);
    if (it != below.end()) {
      unsigned support = 0;
      for (FaceIndex v : it->second) support |= 1u << position_of.at(v);
      node[f] = b.cross_node.at({support, tile_signs & support});
    } else {
      node[f] = b.add(r, -1);
    }
  }
  for (FaceIndex f = 0; f < poly.face_count(); ++f) {
    if (node[f] == 0xffffffffu) continue;
    bool f_old = below.count(f) > 0;
    for (FaceIndex g : poly.up(f)) {
      if (g == outer || poly.rank_of(g) == poly.rank()) continue;
      if (f_old && below.count(g) > 0) continue;  // both on the frame, already present
      b.cover(node[f], node[g]);
    }
  }
  b.kill(tile);
}

}  // namespace

GadgetTemplate assemble_gadget(int d, const std::vector<PyramidGadget>& pyramids,
                               const StackedPolytope& L) {
  if (static_cast<int>(pyramids.size()) != d)
    fail(ErrorKind::input, "need one pyramid gadget per label");
  if (L.d != d) fail(ErrorKind::input, "L must have the ambient rank");
  ComplexBuilder b;
  b.d = d;
  const unsigned full = (1u << d) - 1u;

  // crosspolytope diagram scaffold: all proper sign faces except the all-plus
  // outer facet, in deterministic (support, signs) order
  for (unsigned support = 1; support <= full; ++support) {
    for (unsigned signs = 0;; signs = (signs - support) & support) {
      if (!(support == full && signs == full)) {
        bool boundary = (signs == support);
        int r = __builtin_popcount(support) - 1;
        b.cross_node[{support, signs}] = b.add(r, boundary ? static_cast<std::int32_t>(support) : -1);
      }
      if (signs == support) break;
    }
  }
  for (const auto& [key, lo] : b.cross_node) {
    auto [support, signs] = key;
    for (int i = 0; i < d; ++i) {
      if (support & (1u << i)) continue;
      for (unsigned sign_bit : {0u, 1u << i}) {
        unsigned sup2 = support | (1u << i), sig2 = signs | sign_bit;
        if (sup2 == full && sig2 == full) continue;
        b.cover(lo, b.cross_node.at({sup2, sig2}));
      }
    }
  }

  // pyramid diagrams into the F_{u_i}; apex to position i (the u_i slot),
  // remaining outer vertices to the other positions in id order
  for (int i = 0; i < d; ++i) {
    const PyramidGadget& p = pyramids[static_cast<std::size_t>(i)];
    FaceIndex outer = p.lattice.require_index(p.outer_facet);
    FaceIndex apex = p.lattice.require_index(p.apex);
    auto below = vertex_sets_below(p.lattice, outer);
    std::vector<FaceIndex> outer_verts = below.at(outer);
    std::map<FaceIndex, int> position_of;
    position_of[apex] = i;
    int pos = 0;
    for (FaceIndex v : outer_verts) {
      if (v == apex) continue;
      if (pos == i) ++pos;
      position_of[v] = pos++;
    }
    splice(b, p.lattice, outer, 1u << i, position_of);
  }

  // L diagram into the central tile; lattice ids are (size, lex)-ordered so
  // the lex-min facet is the first face of rank d-1
  {
    FaceIndex outer = L.lattice.rank_begin(d - 1);
    auto below = vertex_sets_below(L.lattice, outer);
    std::map<FaceIndex, int> position_of;
    int pos = 0;
    for (FaceIndex v : below.at(outer)) position_of[v] = pos++;
    splice(b, L.lattice, outer, 0u, position_of);
  }

  // finalize: interior faces grouped by rank, boundary compiled to masks
  GadgetTemplate t;
  t.d = d;
  for (const PyramidGadget& p : pyramids) t.m.push_back(p.m);
  t.L_vertices = L.n;

  std::size_t n = b.rank.size();
  std::vector<std::uint32_t> interior;
  for (std::uint32_t x = 0; x < n; ++x)
    if (b.alive[x] && b.bnd_mask[x] < 0) interior.push_back(x);
  std::stable_sort(interior.begin(), interior.end(),
                   [&](std::uint32_t a, std::uint32_t c) { return b.rank[a] < b.rank[c]; });
  std::vector<std::uint32_t> new_index(n, 0xffffffffu);
  for (std::uint32_t i = 0; i < interior.size(); ++i) new_index[interior[i]] = i;
  t.rank.reserve(interior.size());
  for (std::uint32_t x : interior) t.rank.push_back(b.rank[x]);
  t.rank_begin.assign(static_cast<std::size_t>(d) + 1, 0);
  for (std::int8_t r : t.rank) ++t.rank_begin[static_cast<std::size_t>(r) + 1];
  for (std::size_t r = 1; r < t.rank_begin.size(); ++r) t.rank_begin[r] += t.rank_begin[r - 1];

  std::size_t boundary_faces = 0;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (!b.alive[x]) continue;
    bool x_bnd = b.bnd_mask[x] >= 0;
    if (x_bnd) ++boundary_faces;
    for (std::uint32_t y : b.up[x]) {
      if (!b.alive[y]) fail(ErrorKind::internal, "cover into a removed tile");
      bool y_bnd = b.bnd_mask[y] >= 0;
      if (y_bnd && !x_bnd) fail(ErrorKind::internal, "interior face below the frame");
      if (x_bnd && y_bnd) continue;  // unrefined frame, lives in the ambient complex
      if (x_bnd)
        t.covers_bnd.emplace_back(static_cast<std::uint32_t>(b.bnd_mask[x]), new_index[y]);
      else
        t.covers_int.emplace_back(new_index[x], new_index[y]);
    }
  }
  std::sort(t.covers_int.begin(), t.covers_int.end());
  std::sort(t.covers_bnd.begin(), t.covers_bnd.end());
  if (boundary_faces != (1u << d) - 2u)
    fail(ErrorKind::internal, "frame of the outer simplex was refined");

  // valency ledger
  std::vector<int> val(interior.size(), 0);
  t.u_valency.assign(static_cast<std::size_t>(d), d - 1);  // frame edges to the other u's
  for (const auto& [lo, hi] : t.covers_int)
    if (t.rank[hi] == 1 && t.rank[lo] == 0) ++val[lo];
  for (const auto& [mask, hi] : t.covers_bnd)
    if (t.rank[hi] == 1 && __builtin_popcount(mask) == 1)
      ++t.u_valency[static_cast<std::size_t>(__builtin_ctz(mask))];
  t.max_interior_valency = 0;
  for (std::uint32_t i = t.rank_begin[0]; i < t.rank_begin[1]; ++i)
    t.max_interior_valency = std::max(t.max_interior_valency, val[i]);
  for (int i = 0; i < d; ++i)
    if (t.u_valency[static_cast<std::size_t>(i)] != t.m[static_cast<std::size_t>(i)] + d - 1)
      fail(ErrorKind::internal, "outer vertex valency is off the ledger");

  // face-to-face ball checks: interior ridges in two tiles, frame ridges in one
  {
    std::vector<int> cells_over(interior.size(), 0);
    for (const auto& [lo, hi] : t.covers_int)
      if (t.rank[hi] == d - 1) ++cells_over[lo];
    for (std::uint32_t i = t.rank_begin[static_cast<std::size_t>(d) - 2];
         i < t.rank_begin[static_cast<std::size_t>(d) - 1]; ++i)
      if (cells_over[i] != 2) fail(ErrorKind::internal, "interior ridge not in two tiles");
    std::map<std::uint32_t, int> frame_ridge;
    for (const auto& [mask, hi] : t.covers_bnd)
      if (t.rank[hi] == d - 1) ++frame_ridge[mask];
    for (const auto& [mask, cnt] : frame_ridge)
      if (__builtin_popcount(mask) == d - 1 && cnt != 1)
        fail(ErrorKind::internal, "frame ridge not in exactly one tile");
  }
  return t;
}

nlohmann::ordered_json GadgetTemplate::to_json() const {
  nlohmann::ordered_json j;
  j["rank"] = d;
  j["apex-valency-targets"] = m;
  j["L-vertices"] = L_vertices;
  nlohmann::ordered_json per_rank = nlohmann::ordered_json::array();
  for (int r = 0; r < d; ++r)
    per_rank.push_back(rank_begin[static_cast<std::size_t>(r) + 1] -
                       rank_begin[static_cast<std::size_t>(r)]);
  j["interior-faces-by-rank"] = per_rank;
  j["tiles"] = rank_begin[static_cast<std::size_t>(d)] - rank_begin[static_cast<std::size_t>(d) - 1];
  j["outer-vertex-valencies"] = u_valency;
  j["max-interior-valency"] = max_interior_valency;
  return j;
}

}  // namespace symbreak
