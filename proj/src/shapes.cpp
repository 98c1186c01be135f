#include "symbreak/shapes.hpp"

#include <algorithm>
#include <map>

namespace symbreak {

FaceLattice simplex_lattice(int d) {
  if (d < 0 || d > 20) fail(ErrorKind::input, "simplex rank out of range");
  // faces = subsets of the d+1 vertices; id = bitmask, bottom = 0, top = full
  std::vector<FaceEntry> faces;
  std::vector<std::pair<FaceId, FaceId>> covers;
  const unsigned full = (1u << (d + 1)) - 1u;
  for (unsigned s = 0; s <= full; ++s) {
    int rank = __builtin_popcount(s) - 1;
    faces.push_back({static_cast<FaceId>(s), rank});
    for (int v = 0; v <= d; ++v)
      if (!(s & (1u << v)) && (s | (1u << v)) <= full)
        covers.emplace_back(static_cast<FaceId>(s), static_cast<FaceId>(s | (1u << v)));
  }
  return FaceLattice::from_parts(d, std::move(faces), covers);
}

FaceLattice segment_lattice() { return simplex_lattice(1); }

FaceLattice cube_lattice() {
  // faces encoded over {0,1,*}^3 in base 3 (digit 2 = *), plus empty face
  std::vector<FaceEntry> faces;
  std::vector<std::pair<FaceId, FaceId>> covers;
  const FaceId empty = -1;
  faces.push_back({empty, -1});
  auto digits = [](int code) {
    return std::array<int, 3>{code % 3, (code / 3) % 3, (code / 9) % 3};
  };
  for (int code = 0; code < 27; ++code) {
    auto dg = digits(code);
    int stars = static_cast<int>(std::count(dg.begin(), dg.end(), 2));
    faces.push_back({code, stars});
    if (stars == 0) covers.emplace_back(empty, code);
    for (int axis = 0; axis < 3; ++axis) {
      if (dg[axis] == 2) continue;
      int up = code + (2 - dg[axis]) * (axis == 0 ? 1 : axis == 1 ? 3 : 9);
      covers.emplace_back(code, up);
    }
  }
  return FaceLattice::from_parts(3, std::move(faces), covers);
}

FaceLattice crosspolytope_lattice(int d) {
  if (d < 1 || d > 15) fail(ErrorKind::input, "crosspolytope rank out of range");
  // proper faces = partial sign vectors: support mask + sign mask (subset of
  // support); id = support * 2^d + signs. Improper faces get ids -1 and -2.
  std::vector<FaceEntry> faces;
  std::vector<std::pair<FaceId, FaceId>> covers;
  faces.push_back({-1, -1});
  faces.push_back({-2, d});
  const unsigned full = (1u << d) - 1u;
  auto id_of = [&](unsigned support, unsigned signs) {
    return static_cast<FaceId>(support) * (full + 1) + static_cast<FaceId>(signs);
  };
  for (unsigned support = 1; support <= full; ++support) {
    for (unsigned signs = 0;; signs = (signs - support) & support) {
      int rank = __builtin_popcount(support) - 1;
      faces.push_back({id_of(support, signs), rank});
      if (rank == 0) covers.emplace_back(-1, id_of(support, signs));
      if (rank == d - 1) covers.emplace_back(id_of(support, signs), -2);
      for (int i = 0; i < d; ++i)
        if (!(support & (1u << i))) {
          covers.emplace_back(id_of(support, signs), id_of(support | (1u << i), signs));
          covers.emplace_back(id_of(support, signs),
                              id_of(support | (1u << i), signs | (1u << i)));
        }
      if (signs == support) break;
    }
  }
  return FaceLattice::from_parts(d, std::move(faces), covers);
}

FaceLattice polygon_lattice(int n) {
  if (n < 3) fail(ErrorKind::input, "polygon needs at least 3 vertices");
  std::vector<FaceEntry> faces;
  std::vector<std::pair<FaceId, FaceId>> covers;
  faces.push_back({-1, -1});
  faces.push_back({-2, 2});
  for (int v = 0; v < n; ++v) {
    faces.push_back({v, 0});
    covers.emplace_back(-1, v);
  }
  for (int e = 0; e < n; ++e) {
    FaceId eid = n + e;
    faces.push_back({eid, 1});
    covers.emplace_back(e, eid);
    covers.emplace_back((e + 1) % n, eid);
    covers.emplace_back(eid, -2);
  }
  return FaceLattice::from_parts(2, std::move(faces), covers);
}

FaceLattice hemicube_lattice() {
  // 4 vertices, 6 edges, 3 square faces: each pair of vertices spans exactly
  // one edge, each square is a 4-cycle missing one perfect matching.
  std::vector<FaceEntry> faces;
  std::vector<std::pair<FaceId, FaceId>> covers;
  faces.push_back({-1, -1});
  faces.push_back({-2, 3});
  for (int v = 0; v < 4; ++v) {
    faces.push_back({v, 0});
    covers.emplace_back(-1, v);
  }
  int eid = 4;
  std::map<std::pair<int, int>, FaceId> edge_id;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      faces.push_back({eid, 1});
      covers.emplace_back(a, eid);
      covers.emplace_back(b, eid);
      edge_id[{a, b}] = eid++;
    }
  // the 6 edges split into 3 perfect matchings {0f, rest}; square f is the
  // 4-cycle on the other four edges
  int fid = 10;
  for (int f = 1; f <= 3; ++f) {
    faces.push_back({fid, 2});
    covers.emplace_back(fid, -2);
    int others[2], k = 0;
    for (int v = 1; v <= 3; ++v)
      if (v != f) others[k++] = v;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        bool in_matching = (a == 0 && b == f) || (a == others[0] && b == others[1]);
        if (!in_matching) covers.emplace_back(edge_id[{a, b}], fid);
      }
    ++fid;
  }
  return FaceLattice::from_parts(3, std::move(faces), covers);
}

FaceLattice bipyramid_lattice(int n) {
  if (n < 3) fail(ErrorKind::input, "bipyramid base needs at least 3 vertices");
  std::vector<FaceEntry> faces;
  std::vector<std::pair<FaceId, FaceId>> covers;
  faces.push_back({-1, -1});
  faces.push_back({-2, 3});
  for (int v = 0; v < n + 2; ++v) {  // ring 0..n-1, apexes n and n+1
    faces.push_back({v, 0});
    covers.emplace_back(-1, v);
  }
  // ring edges, then spokes to each apex
  for (int e = 0; e < n; ++e) {
    FaceId eid = n + 2 + e;
    faces.push_back({eid, 1});
    covers.emplace_back(e, eid);
    covers.emplace_back((e + 1) % n, eid);
  }
  for (int apex = 0; apex < 2; ++apex)
    for (int v = 0; v < n; ++v) {
      FaceId eid = n + 2 + n + apex * n + v;
      faces.push_back({eid, 1});
      covers.emplace_back(v, eid);
      covers.emplace_back(n + apex, eid);
    }
  // triangles (ring edge, apex)
  for (int apex = 0; apex < 2; ++apex)
    for (int e = 0; e < n; ++e) {
      FaceId fid = n + 2 + 3 * n + apex * n + e;
      faces.push_back({fid, 2});
      covers.emplace_back(n + 2 + e, fid);
      covers.emplace_back(n + 2 + n + apex * n + e, fid);
      covers.emplace_back(n + 2 + n + apex * n + (e + 1) % n, fid);
      covers.emplace_back(fid, -2);
    }
  return FaceLattice::from_parts(3, std::move(faces), covers);
}

FaceLattice pyramid_lattice(const FaceLattice& base, FaceId* apex_id) {
  const int p = base.rank();
  // id scheme: base face f keeps id_of(f)*2, companion f+apex gets id*2+1;
  // improper base faces map to the apex (bottom) and the new top (top).
  FaceId max_id = 0;
  for (FaceIndex f = 0; f < base.face_count(); ++f)
    max_id = std::max(max_id, std::abs(base.id_of(f)));
  auto keep = [&](FaceIndex f) { return 2 * (base.id_of(f) + max_id + 1); };
  auto companion = [&](FaceIndex f) { return 2 * (base.id_of(f) + max_id + 1) + 1; };

  std::vector<FaceEntry> faces;
  std::vector<std::pair<FaceId, FaceId>> covers;
  for (FaceIndex f = 0; f < base.face_count(); ++f) {
    int r = base.rank_of(f);
    if (r == -1) {
      faces.push_back({keep(f), -1});
      faces.push_back({companion(f), 0});  // the apex
      covers.emplace_back(keep(f), companion(f));
      if (apex_id) *apex_id = companion(f);
    } else if (r == p) {
      faces.push_back({keep(f), p});       // base polytope becomes a facet
      faces.push_back({companion(f), p + 1});  // new top
      covers.emplace_back(keep(f), companion(f));
    } else {
      faces.push_back({keep(f), r});
      faces.push_back({companion(f), r + 1});
      covers.emplace_back(keep(f), companion(f));
    }
    for (FaceIndex g : base.up(f)) {
      covers.emplace_back(keep(f), keep(g));
      covers.emplace_back(companion(f), companion(g));
    }
  }
  return FaceLattice::from_parts(p + 1, std::move(faces), covers);
}

FaceLattice truncate_vertex(const FaceLattice& l, FaceId vertex,
                            std::vector<std::pair<FaceId, FaceId>>* cut_ids) {
  FaceIndex v = l.require_index(vertex);
  if (l.rank_of(v) != 0) fail(ErrorKind::input, "can only truncate a vertex");
  const std::size_t n = l.face_count();
  std::vector<char> above(n, 0);
  {
    std::vector<FaceIndex> stack{v};
    above[v] = 1;
    while (!stack.empty()) {
      FaceIndex x = stack.back();
      stack.pop_back();
      for (FaceIndex y : l.up(x))
        if (!above[y]) {
          above[y] = 1;
          stack.push_back(y);
        }
    }
  }
  FaceId next_id = 0;
  for (FaceIndex f = 0; f < n; ++f) next_id = std::max(next_id, l.id_of(f) + 1);
  std::vector<FaceId> cut(n, -1);
  std::vector<FaceEntry> faces;
  std::vector<std::pair<FaceId, FaceId>> covers;
  for (FaceIndex f = 0; f < n; ++f) {
    if (f == v) continue;
    faces.push_back({l.id_of(f), l.rank_of(f)});
  }
  for (FaceIndex f = 0; f < n; ++f) {
    if (!above[f] || f == v) continue;  // strictly above v, rank >= 1
    cut[f] = next_id++;
    faces.push_back({cut[f], l.rank_of(f) - 1});
    if (cut_ids) cut_ids->emplace_back(l.id_of(f), cut[f]);
    if (l.rank_of(f) - 1 == 0) covers.emplace_back(l.id_of(l.bottom()), cut[f]);
    covers.emplace_back(cut[f], l.id_of(f));
  }
  for (FaceIndex f = 0; f < n; ++f) {
    if (f == v) continue;
    for (FaceIndex g : l.up(f)) {
      if (g == v) continue;
      covers.emplace_back(l.id_of(f), l.id_of(g));
      if (cut[f] >= 0 && cut[g] >= 0) covers.emplace_back(cut[f], cut[g]);
    }
  }
  // the cut of an edge at v is a vertex already linked above; edges v--w lost
  // their cover from v, which is exactly the trimming.
  return FaceLattice::from_parts(l.rank(), std::move(faces), covers);
}

}  // namespace symbreak
