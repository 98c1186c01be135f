#include "symbreak/breaker.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>

namespace symbreak {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace

ParameterPlan plan_parameters(const LabelledComplex& c, const ValencyTable& vt,
                              const std::vector<StackedPolytope>& Ls) {
  const int d = c.d;
  ParameterPlan plan;
  plan.d = d;
  for (const StackedPolytope& L : Ls) plan.L_vertex_counts.push_back(L.n);
  {
    std::map<int, int> counts;
    for (int n : plan.L_vertex_counts)
      if (++counts[n] > 1) fail(ErrorKind::internal, "duplicate L vertex count");
  }
  plan.bound_m = 0;
  for (const StackedPolytope& L : Ls)
    plan.bound_m = std::max(plan.bound_m, interior_valency_bound(d, L));

  auto interval_for = [&](int label, int m_val) {
    std::array<int, 2> ab{INT_MAX, 0};
    for (std::size_t v = 0; v < c.vertex_count(); ++v) {
      if (c.vertex_label[v] != label) continue;
      int t = vt.val[v] + vt.s[v] * m_val;
      ab[0] = std::min(ab[0], t);
      ab[1] = std::max(ab[1], t);
    }
    if (ab[0] == INT_MAX) fail(ErrorKind::internal, "no vertex with the label");
    return ab;
  };

  plan.m.assign(static_cast<std::size_t>(d), 0);
  plan.intervals.assign(static_cast<std::size_t>(d), {0, 0});
  plan.m[static_cast<std::size_t>(d - 1)] = feasible_apex_valency(d, plan.bound_m);
  plan.intervals[static_cast<std::size_t>(d - 1)] =
      interval_for(d - 1, plan.m[static_cast<std::size_t>(d - 1)]);
  for (int j = d - 1; j >= 1; --j) {
    int bj = plan.intervals[static_cast<std::size_t>(j)][1];
    long long need = 0;
    for (std::size_t v = 0; v < c.vertex_count(); ++v) {
      if (c.vertex_label[v] != j - 1) continue;
      need = std::max(need, floor_div(bj - vt.val[v], vt.s[v]) + 1);
    }
    plan.m[static_cast<std::size_t>(j - 1)] =
        feasible_apex_valency(d, static_cast<int>(std::max<long long>(need, 1)));
    plan.intervals[static_cast<std::size_t>(j - 1)] =
        interval_for(j - 1, plan.m[static_cast<std::size_t>(j - 1)]);
  }
  // the separating chain the parameters were chosen for
  if (plan.bound_m >= plan.intervals[static_cast<std::size_t>(d - 1)][0])
    fail(ErrorKind::internal, "interior bound not separated from the top label");
  for (int j = d - 1; j >= 1; --j)
    if (plan.intervals[static_cast<std::size_t>(j)][1] >=
        plan.intervals[static_cast<std::size_t>(j - 1)][0])
      fail(ErrorKind::internal, "label intervals not separated");
  return plan;
}

nlohmann::ordered_json ParameterPlan::to_json() const {
  nlohmann::ordered_json j;
  j["rank"] = d;
  j["interior-bound"] = bound_m;
  j["apex-valency"] = m;
  nlohmann::ordered_json iv = nlohmann::ordered_json::array();
  for (const auto& ab : intervals) iv.push_back({ab[0], ab[1]});
  j["label-intervals"] = iv;
  j["L-vertex-counts"] = L_vertex_counts;
  return j;
}

// ---------------------------------------------------------------------------

BrokenPolytope::Provenance BrokenPolytope::provenance(FaceIndex f) const {
  Provenance out;
  int r = p.rank_of(f);
  if (r < 0 || r == p.rank()) fail(ErrorKind::input, "improper face has no provenance");
  std::uint64_t pos = f - rank_face_start[static_cast<std::size_t>(r)];
  if (pos < chain_count[static_cast<std::size_t>(r)]) {
    out.is_chain = true;
    out.chain_pos = static_cast<std::uint32_t>(pos);
    return out;
  }
  pos -= chain_count[static_cast<std::size_t>(r)];
  const auto& starts = gadget_start[static_cast<std::size_t>(r)];
  auto it = std::upper_bound(starts.begin(), starts.end(), pos);
  std::uint32_t chamber = static_cast<std::uint32_t>(it - starts.begin()) - 1;
  out.chamber = chamber;
  const GadgetTemplate& t = templates[chambers.orbits.orbit_of[chamber]];
  out.tmpl_face =
      t.rank_begin[static_cast<std::size_t>(r)] + static_cast<std::uint32_t>(pos - starts[chamber]);
  return out;
}

FaceIndex BrokenPolytope::chain_face(int dim, std::uint32_t pos) const {
  return rank_face_start[static_cast<std::size_t>(dim)] + pos;
}

BrokenPolytope break_polytope(const FaceLattice& q_in, const PermGroup& gamma_in,
                              const BreakOptions& opt) {
  if (q_in.rank() < 3)
    fail(ErrorKind::input,
         "refinement requires rank >= 3 (rank-2 automorphism groups are always dihedral)");
  BrokenPolytope b;
  b.q = q_in;
  if (!b.q.is_validated()) {
    ValidationReport rep = validate(b.q);
    if (!rep.ok()) fail(ErrorKind::input, "input lattice is not a polytope: " + rep.summary());
  }
  for (const Permutation& g : gamma_in.generators()) b.gamma_q.push_back(g);
  PermGroup gamma = PermGroup::from_generators(b.q, b.gamma_q);

  const int d = b.q.rank();
  b.complex = subdivide(b.q);
  b.vt = valencies(b.complex);
  b.chambers = chamber_action(b.complex, gamma);

  const std::size_t n_orbits = b.chambers.orbits.count();
  std::vector<StackedPolytope> Ls;
  Ls.reserve(n_orbits);
  for (std::size_t o = 0; o < n_orbits; ++o)
    Ls.push_back(make_stacked(d, d + 1 + static_cast<int>(o)));
  b.plan = plan_parameters(b.complex, b.vt, Ls);

  std::map<int, PyramidGadget> pyramid_by_m;
  std::vector<PyramidGadget> pyramids;
  for (int mi : b.plan.m) {
    if (!pyramid_by_m.count(mi)) pyramid_by_m[mi] = make_pyramid_gadget(d, mi);
    pyramids.push_back(pyramid_by_m[mi]);
  }
  b.templates.reserve(n_orbits);
  for (std::size_t o = 0; o < n_orbits; ++o)
    b.templates.push_back(assemble_gadget(d, pyramids, Ls[o]));

  // ---- face table: per rank, chains first, then per-chamber gadget blocks
  const std::size_t n_chambers = b.complex.chamber_count();
  b.chain_count.assign(static_cast<std::size_t>(d), 0);
  for (int r = 0; r + 1 < d; ++r)
    b.chain_count[static_cast<std::size_t>(r)] =
        static_cast<std::uint32_t>(b.complex.simplex_count(r));
  b.gadget_start.assign(static_cast<std::size_t>(d), {});
  std::vector<std::uint64_t> rank_total(static_cast<std::size_t>(d), 0);
  for (int r = 0; r < d; ++r) {
    auto& starts = b.gadget_start[static_cast<std::size_t>(r)];
    starts.resize(n_chambers + 1, 0);
    for (std::size_t c = 0; c < n_chambers; ++c) {
      const GadgetTemplate& t = b.templates[b.chambers.orbits.orbit_of[c]];
      std::uint32_t cnt = t.rank_begin[static_cast<std::size_t>(r) + 1] -
                          t.rank_begin[static_cast<std::size_t>(r)];
      starts[c + 1] = starts[c] + cnt;
    }
    rank_total[static_cast<std::size_t>(r)] =
        b.chain_count[static_cast<std::size_t>(r)] + starts[n_chambers];
  }
  b.rank_face_start.assign(static_cast<std::size_t>(d), 0);
  std::uint64_t acc = 1;  // index 0 is the bottom face
  for (int r = 0; r < d; ++r) {
    b.rank_face_start[static_cast<std::size_t>(r)] = static_cast<std::uint32_t>(acc);
    acc += rank_total[static_cast<std::size_t>(r)];
  }
  const std::uint64_t n_faces = acc + 1;
  if (n_faces > opt.face_cap)
    fail(ErrorKind::capacity,
         "refined polytope would have " + std::to_string(n_faces) + " faces (cap " +
             std::to_string(opt.face_cap) + ")");
  const FaceIndex top_index = static_cast<FaceIndex>(n_faces - 1);

  auto inst = [&](int r, std::size_t chamber, std::uint32_t tmpl_face) -> FaceIndex {
    const GadgetTemplate& t = b.templates[b.chambers.orbits.orbit_of[chamber]];
    return static_cast<FaceIndex>(b.rank_face_start[static_cast<std::size_t>(r)] +
                                  b.chain_count[static_cast<std::size_t>(r)] +
                                  b.gadget_start[static_cast<std::size_t>(r)][chamber] +
                                  (tmpl_face - t.rank_begin[static_cast<std::size_t>(r)]));
  };

  // chain lookup: tuples of complex vertices, lex-sorted per dimension
  auto chain_index = [&](int dim, std::span<const std::uint32_t> tuple) -> std::uint32_t {
    const auto& flat = b.complex.simplices_by_dim[static_cast<std::size_t>(dim)];
    const std::size_t stride = static_cast<std::size_t>(dim) + 1;
    std::size_t lo = 0, hi = flat.size() / stride;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      const std::uint32_t* t = flat.data() + mid * stride;
      int cmp = 0;
      for (std::size_t k = 0; k < stride; ++k)
        if (t[k] != tuple[k]) {
          cmp = t[k] < tuple[k] ? -1 : 1;
          break;
        }
      if (cmp < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    const std::uint32_t* t = flat.data() + lo * stride;
    for (std::size_t k = 0; k < stride; ++k)
      if (t[k] != tuple[k]) fail(ErrorKind::internal, "chain not found");
    return static_cast<std::uint32_t>(lo);
  };

  // per chamber, the chain face realizing each u-label subset
  const std::uint32_t n_masks = 1u << d;
  std::vector<FaceIndex> mask_chain(n_chambers * n_masks, kNoFace);
  {
    std::vector<std::uint32_t> tuple;
    for (std::size_t c = 0; c < n_chambers; ++c) {
      auto flag = b.complex.chambers.flag(c);
      for (std::uint32_t mask = 1; mask < n_masks - 1; ++mask) {
        tuple.clear();
        for (int l = 0; l < d; ++l)
          if (mask & (1u << l)) tuple.push_back(b.complex.vertex_of_face(flag[l]));
        int dim = __builtin_popcount(mask) - 1;
        mask_chain[c * n_masks + mask] =
            b.chain_face(dim, chain_index(dim, tuple));
      }
    }
  }

  std::vector<std::pair<FaceIndex, FaceIndex>> covers;
  {
    std::uint64_t estimate = 0;
    for (std::size_t c = 0; c < n_chambers; ++c) {
      const GadgetTemplate& t = b.templates[b.chambers.orbits.orbit_of[c]];
      estimate += t.covers_int.size() + t.covers_bnd.size();
    }
    for (int r = 0; r + 1 < d; ++r)
      estimate += static_cast<std::uint64_t>(b.complex.simplex_count(r + 1)) *
                  static_cast<std::uint64_t>(r + 2);
    estimate += rank_total[0] + rank_total[static_cast<std::size_t>(d - 1)];
    covers.reserve(estimate);
  }
  // bottom and top
  for (std::uint64_t i = 0; i < rank_total[0]; ++i)
    covers.emplace_back(0, static_cast<FaceIndex>(b.rank_face_start[0] + i));
  for (std::uint64_t i = 0; i < rank_total[static_cast<std::size_t>(d - 1)]; ++i)
    covers.emplace_back(
        static_cast<FaceIndex>(b.rank_face_start[static_cast<std::size_t>(d - 1)] + i), top_index);
  // chain inclusions (drop one element)
  {
    std::vector<std::uint32_t> sub;
    for (int dim = 1; dim + 1 < d; ++dim) {
      const auto& flat = b.complex.simplices_by_dim[static_cast<std::size_t>(dim)];
      const std::size_t stride = static_cast<std::size_t>(dim) + 1;
      for (std::size_t i = 0; i < flat.size(); i += stride) {
        FaceIndex hi = b.chain_face(dim, static_cast<std::uint32_t>(i / stride));
        for (std::size_t drop = 0; drop < stride; ++drop) {
          sub.clear();
          for (std::size_t k = 0; k < stride; ++k)
            if (k != drop) sub.push_back(flat[i + k]);
          covers.emplace_back(b.chain_face(dim - 1, chain_index(dim - 1, sub)), hi);
        }
      }
    }
  }
  // gadget blocks
  for (std::size_t c = 0; c < n_chambers; ++c) {
    const GadgetTemplate& t = b.templates[b.chambers.orbits.orbit_of[c]];
    for (const auto& [lo, hi] : t.covers_int)
      covers.emplace_back(inst(t.rank[lo], c, lo), inst(t.rank[hi], c, hi));
    for (const auto& [mask, hi] : t.covers_bnd)
      covers.emplace_back(mask_chain[c * n_masks + mask], inst(t.rank[hi], c, hi));
  }

  // ids: bottom -1, proper faces 0.., top INT32_MAX
  std::vector<FaceId> ids(n_faces);
  std::vector<std::int8_t> ranks(n_faces);
  ids[0] = -1;
  ranks[0] = -1;
  for (std::uint64_t i = 1; i + 1 < n_faces; ++i) ids[i] = static_cast<FaceId>(i - 1);
  ids[top_index] = 2147483647;
  ranks[top_index] = static_cast<std::int8_t>(d);
  for (int r = 0; r < d; ++r)
    for (std::uint64_t i = 0; i < rank_total[static_cast<std::size_t>(r)]; ++i)
      ranks[b.rank_face_start[static_cast<std::size_t>(r)] + i] = static_cast<std::int8_t>(r);
  b.p = FaceLattice::from_indexed(d, std::move(ids), std::move(ranks), std::move(covers));

  // the group, re-expressed on P: chains map through the face permutation,
  // gadget faces ride along with their chamber
  for (const Permutation& g : b.gamma_q) {
    Permutation pg = identity_permutation(b.p.face_count());
    std::vector<std::uint32_t> chamber_image(n_chambers);
    for (std::size_t c = 0; c < n_chambers; ++c)
      chamber_image[c] = map_flag(b.complex.chambers, g, static_cast<std::uint32_t>(c));
    std::vector<std::uint32_t> tuple;
    for (int r = 0; r < d; ++r) {
      // chains
      const auto& flat = b.complex.simplices_by_dim[static_cast<std::size_t>(r)];
      const std::size_t stride = static_cast<std::size_t>(r) + 1;
      if (r + 1 < d) {
        for (std::size_t i = 0; i < flat.size(); i += stride) {
          tuple.clear();
          for (std::size_t k = 0; k < stride; ++k)
            tuple.push_back(b.complex.vertex_of_face(g.map[b.complex.vertex_source[flat[i + k]]]));
          pg.map[b.chain_face(r, static_cast<std::uint32_t>(i / stride))] =
              b.chain_face(r, chain_index(r, tuple));
        }
      }
      // gadget blocks
      for (std::size_t c = 0; c < n_chambers; ++c) {
        const GadgetTemplate& t = b.templates[b.chambers.orbits.orbit_of[c]];
        for (std::uint32_t tf = t.rank_begin[static_cast<std::size_t>(r)];
             tf < t.rank_begin[static_cast<std::size_t>(r) + 1]; ++tf)
          pg.map[inst(r, c, tf)] = inst(r, chamber_image[c], tf);
      }
    }
    b.gamma_p.push_back(std::move(pg));
  }
  return b;
}

// ---------------------------------------------------------------------------

VerificationReport verify_broken(const BrokenPolytope& b, const BreakOptions& opt) {
  VerificationReport rep;
  const int d = b.p.rank();
  ValidateOptions vopt;
  vopt.flag_cap = opt.flag_cap;
  FlagGraph fg;
  ValidationReport vr = validate_keeping_graph(b.p, &fg, vopt);
  rep.validates = vr.ok();
  if (!rep.validates) {
    rep.witness = vr.summary();
    return rep;
  }

  // skeleton of C(Q) sits unrefined inside P: covers between chain faces are
  // exactly the drop-one inclusions, and all chains of length <= d-1 appear
  rep.skeleton_intact = true;
  for (int r = 0; r + 1 < d; ++r) {
    if (b.chain_count[static_cast<std::size_t>(r)] != b.complex.simplex_count(r)) {
      rep.skeleton_intact = false;
      rep.witness = "chain face count mismatch";
      break;
    }
    const auto& flat = b.complex.simplices_by_dim[static_cast<std::size_t>(r)];
    const std::size_t stride = static_cast<std::size_t>(r) + 1;
    std::vector<std::uint32_t> sub;
    for (std::uint32_t pos = 0; pos < b.chain_count[static_cast<std::size_t>(r)]; ++pos) {
      FaceIndex f = b.chain_face(r, pos);
      std::size_t chain_downs = 0;
      for (FaceIndex g : b.p.down(f))
        if (b.p.rank_of(g) >= 0 && b.provenance(g).is_chain) ++chain_downs;
      std::size_t expected = r == 0 ? 0 : stride;
      bool all_subchains_covered = true;
      if (r >= 1) {
        // each drop-one subchain must itself be a cover of f in P; together
        // with the count this pins the chain covers exactly
        const std::uint32_t* tuple = flat.data() + pos * stride;
        for (std::size_t drop = 0; drop < stride && all_subchains_covered; ++drop) {
          sub.clear();
          for (std::size_t k = 0; k < stride; ++k)
            if (k != drop) sub.push_back(tuple[k]);
          const std::size_t sub_stride = stride - 1;
        const auto& sflat = b.complex.simplices_by_dim[static_cast<std::size_t>(r - 1)];
          auto begin = sflat.data();
          std::size_t lo = 0, hi = sflat.size() / sub_stride;
          // binary search over the lex-sorted (r-1)-tuples
          while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            const std::uint32_t* t = begin + mid * sub_stride;
            int cmp = 0;
            for (std::size_t k = 0; k < sub_stride; ++k)
              if (t[k] != sub[k]) {
                cmp = t[k] < sub[k] ? -1 : 1;
                break;
              }
            if (cmp < 0)
              lo = mid + 1;
            else
              hi = mid;
          }
          if (!b.p.covers_pair(b.chain_face(r - 1, static_cast<std::uint32_t>(lo)), f))
            all_subchains_covered = false;
        }
      }
      if (chain_downs != expected || !all_subchains_covered) {
        rep.skeleton_intact = false;
        rep.witness = "chain face " + std::to_string(b.p.id_of(f)) + " has refined boundary";
        break;
      }
    }
    if (!rep.skeleton_intact) break;
  }

  // vertexwise valency equation and the interior bound
  rep.valency_equation = true;
  std::vector<std::array<int, 2>> found(static_cast<std::size_t>(d), {INT_MAX, 0});
  for (std::uint32_t v = 0; v < b.complex.vertex_count(); ++v) {
    FaceIndex f = b.chain_face(0, v);
    int val_p = static_cast<int>(b.p.up(f).size());
    int label = b.complex.vertex_label[v];
    int expect = b.vt.val[v] + b.vt.s[v] * b.plan.m[static_cast<std::size_t>(label)];
    if (val_p != expect) {
      rep.valency_equation = false;
      rep.witness = "vertex " + std::to_string(b.p.id_of(f)) + ": valency " +
                    std::to_string(val_p) + ", expected " + std::to_string(expect);
    }
    auto& ab = found[static_cast<std::size_t>(label)];
    ab[0] = std::min(ab[0], val_p);
    ab[1] = std::max(ab[1], val_p);
  }
  rep.interior_bound = true;
  rep.max_interior_found = 0;
  for (FaceIndex f = b.p.rank_begin(0); f < b.p.rank_end(0); ++f) {
    if (b.provenance(f).is_chain) continue;
    int val = static_cast<int>(b.p.up(f).size());
    rep.max_interior_found = std::max(rep.max_interior_found, val);
    if (val > b.plan.bound_m) {
      rep.interior_bound = false;
      rep.witness = "gadget vertex " + std::to_string(b.p.id_of(f)) + " has valency " +
                    std::to_string(val) + " above the bound " + std::to_string(b.plan.bound_m);
    }
  }
  rep.interval_chain = true;
  for (int i = 0; i < d; ++i)
    if (found[static_cast<std::size_t>(i)] != b.plan.intervals[static_cast<std::size_t>(i)])
      rep.interval_chain = false;
  if (b.plan.bound_m >= found[static_cast<std::size_t>(d - 1)][0]) rep.interval_chain = false;
  for (int j = d - 1; j >= 1; --j)
    if (found[static_cast<std::size_t>(j)][1] >= found[static_cast<std::size_t>(j - 1)][0])
      rep.interval_chain = false;

  // the automorphism group, recomputed from scratch and pulled back through
  // the provenance map
  PermGroup gamma_p = PermGroup::from_generators(b.p, b.gamma_p);
  PermGroup found_group = automorphisms(b.p, fg);
  rep.group_order_expected = gamma_p.order();
  rep.group_order_found = found_group.order();
  rep.group_match = rep.group_order_expected == rep.group_order_found;
  if (rep.group_match) {
    std::vector<Permutation> expect = gamma_p.closure();
    std::vector<Permutation> got = found_group.closure();
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    rep.group_match = expect == got;
    if (!rep.group_match) rep.witness = "automorphism group differs from the prescribed one";
  }
  if (rep.group_match) {
    // provenance map: restriction to the singleton chains must land in Gamma
    PermGroup gamma_q = PermGroup::from_generators(b.q, b.gamma_q);
    std::vector<Permutation> q_els = gamma_q.closure();
    std::sort(q_els.begin(), q_els.end());
    std::vector<Permutation> restricted;
    for (const Permutation& pg : found_group.closure()) {
      Permutation qg = identity_permutation(b.q.face_count());
      for (std::uint32_t v = 0; v < b.complex.vertex_count(); ++v) {
        FaceIndex img = pg.map[b.chain_face(0, v)];
        auto prov = b.provenance(img);
        if (!prov.is_chain || b.p.rank_of(img) != 0) {
          rep.group_match = false;
          rep.witness = "automorphism does not preserve the subdivision vertices";
          break;
        }
        qg.map[b.complex.vertex_source[v]] = b.complex.vertex_source[prov.chain_pos];
      }
      if (!rep.group_match) break;
      restricted.push_back(std::move(qg));
    }
    if (rep.group_match) {
      std::sort(restricted.begin(), restricted.end());
      restricted.erase(std::unique(restricted.begin(), restricted.end()), restricted.end());
      if (restricted != q_els) {
        rep.group_match = false;
        rep.witness = "restriction to Q is not the prescribed group";
      }
    }
  }
  return rep;
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  auto word = [](bool v) { return v ? "pass" : "FAIL"; };
  os << "validates: " << word(validates) << "; skeleton intact: " << word(skeleton_intact)
     << "; valency equation: " << word(valency_equation) << "; interior bound: "
     << word(interior_bound) << " (max " << max_interior_found << ")"
     << "; interval chain: " << word(interval_chain) << "; group: " << word(group_match) << " ("
     << group_order_found << " of " << group_order_expected << ")";
  if (!witness.empty()) os << "\n  witness: " << witness;
  return os.str();
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["validates"] = validates;
  j["skeleton-intact"] = skeleton_intact;
  j["valency-equation"] = valency_equation;
  j["interior-bound"] = interior_bound;
  j["max-interior-valency"] = max_interior_found;
  j["interval-chain"] = interval_chain;
  j["group-match"] = group_match;
  j["group-order-expected"] = group_order_expected;
  j["group-order-found"] = group_order_found;
  if (!witness.empty()) j["witness"] = witness;
  j["ok"] = ok();
  return j;
}

nlohmann::ordered_json BrokenPolytope::provenance_json() const {
  nlohmann::ordered_json j;
  j["chain-faces-by-rank"] = chain_count;
  nlohmann::ordered_json chs = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < complex.chamber_count(); ++c) {
    std::uint32_t orbit = chambers.orbits.orbit_of[static_cast<std::uint32_t>(c)];
    chs.push_back({{"chamber", c},
                   {"orbit", orbit},
                   {"transfer-element", chambers.transfer[c]},
                   {"L-vertices", plan.L_vertex_counts[orbit]}});
  }
  j["chambers"] = chs;
  nlohmann::ordered_json faces = nlohmann::ordered_json::array();
  for (FaceIndex f = 0; f < p.face_count(); ++f) {
    int r = p.rank_of(f);
    if (r < 0 || r == p.rank()) continue;
    auto prov = provenance(f);
    if (prov.is_chain)
      faces.push_back({p.id_of(f), "chain", prov.chain_pos});
    else
      faces.push_back({p.id_of(f), "gadget", prov.chamber, prov.tmpl_face});
  }
  j["faces"] = std::move(faces);
  return j;
}

}  // namespace symbreak
