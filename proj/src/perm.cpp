#include "symbreak/perm.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace symbreak {

Permutation identity_permutation(std::size_t n) {
  Permutation p;
  p.map.resize(n);
  for (FaceIndex i = 0; i < n; ++i) p.map[i] = i;
  return p;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r;
  r.map.resize(p.map.size());
  for (std::size_t i = 0; i < q.map.size(); ++i) r.map[i] = p.map[q.map[i]];
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r;
  r.map.resize(p.map.size());
  for (FaceIndex i = 0; i < p.map.size(); ++i) r.map[p.map[i]] = i;
  return r;
}

std::optional<std::string> automorphism_defect(const FaceLattice& l, const Permutation& p) {
  if (p.map.size() != l.face_count()) return "permutation size does not match the lattice";
  std::vector<char> hit(l.face_count(), 0);
  for (FaceIndex i = 0; i < p.map.size(); ++i) {
    FaceIndex j = p.map[i];
    if (j >= l.face_count() || hit[j]) return "not a bijection";
    hit[j] = 1;
    if (l.rank_of(i) != l.rank_of(j))
      return "face " + std::to_string(l.id_of(i)) + " changes rank";
  }
  for (FaceIndex i = 0; i < p.map.size(); ++i)
    for (FaceIndex g : l.up(i))
      if (!l.covers_pair(p.map[i], p.map[g]))
        return "cover (" + std::to_string(l.id_of(i)) + ", " + std::to_string(l.id_of(g)) +
               ") is not carried to a cover";
  return std::nullopt;
}

PermGroup PermGroup::trivial(const FaceLattice& base) {
  PermGroup g;
  g.base_ = &base;
  return g;
}

PermGroup PermGroup::from_generators(const FaceLattice& base, std::vector<Permutation> gens) {
  for (const Permutation& p : gens)
    if (auto defect = automorphism_defect(base, p))
      fail(ErrorKind::input, "generator is not a lattice automorphism: " + *defect);
  PermGroup g;
  g.base_ = &base;
  g.gens_ = std::move(gens);
  return g;
}

PermGroup PermGroup::from_elements(const FaceLattice& base, std::vector<Permutation> elements) {
  PermGroup g;
  g.base_ = &base;
  for (const Permutation& p : elements)
    if (!p.is_identity()) g.gens_.push_back(p);
  g.elements_ = std::move(elements);
  g.closed_ = true;
  return g;
}

namespace {

struct PermHash {
  std::size_t operator()(const Permutation& p) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (FaceIndex v : p.map) h = hash_combine(h, v);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

const std::vector<Permutation>& PermGroup::closure() const {
  if (closed_) return elements_;
  std::size_t n = base_ ? base_->face_count() : 0;
  elements_.clear();
  elements_.push_back(identity_permutation(n));
  std::unordered_set<Permutation, PermHash> seen;
  seen.insert(elements_.front());
  for (std::size_t head = 0; head < elements_.size(); ++head) {
    // copy: elements_ may reallocate while we append
    Permutation cur = elements_[head];
    for (const Permutation& g : gens_) {
      Permutation next = compose(cur, g);
      if (seen.insert(next).second) {
        if (elements_.size() >= element_cap)
          fail(ErrorKind::capacity, "group closure exceeds cap of " + std::to_string(element_cap));
        elements_.push_back(std::move(next));
      }
    }
  }
  closed_ = true;
  return elements_;
}

bool PermGroup::contains(const Permutation& p) const {
  const auto& els = closure();
  return std::find(els.begin(), els.end(), p) != els.end();
}

bool is_subgroup(const PermGroup& candidate, const PermGroup& ambient) {
  if (&candidate.base() != &ambient.base() &&
      candidate.base().face_count() != ambient.base().face_count())
    fail(ErrorKind::input, "subgroup test requires a common base lattice");
  for (const Permutation& g : candidate.generators())
    if (!ambient.contains(g)) return false;
  return true;
}

nlohmann::ordered_json PermGroup::to_json() const {
  nlohmann::ordered_json j;
  auto& gens = j["generators"] = nlohmann::ordered_json::array();
  for (const Permutation& p : gens_) {
    nlohmann::ordered_json fm = nlohmann::ordered_json::object();
    for (FaceIndex i = 0; i < p.map.size(); ++i) {
      if (base_->rank_of(i) == -1 || base_->rank_of(i) == base_->rank()) continue;
      fm[std::to_string(base_->id_of(i))] = base_->id_of(p.map[i]);
    }
    gens.push_back({{"face-map", std::move(fm)}});
  }
  return j;
}

PermGroup PermGroup::from_json(const FaceLattice& base, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("generators"))
    fail(ErrorKind::input, "group json must have a generators list");
  std::vector<Permutation> gens;
  for (const auto& g : j.at("generators")) {
    Permutation p = identity_permutation(base.face_count());
    for (const auto& [key, value] : g.at("face-map").items()) {
      FaceId from = std::stoll(key);
      FaceId to = value.get<FaceId>();
      p.map[base.require_index(from)] = base.require_index(to);
    }
    gens.push_back(std::move(p));
  }
  return from_generators(base, std::move(gens));
}

Orbits orbits(const PermGroup& group, std::size_t n_items,
              const std::function<std::uint32_t(const Permutation&, std::uint32_t)>& act) {
  const auto& els = group.closure();
  Orbits out;
  out.orbit_of.assign(n_items, 0xffffffffu);
  for (std::uint32_t seed = 0; seed < n_items; ++seed) {
    if (out.orbit_of[seed] != 0xffffffffu) continue;
    std::uint32_t orbit = static_cast<std::uint32_t>(out.members.size());
    std::vector<std::uint32_t> mem;
    for (const Permutation& e : els) {
      std::uint32_t img = act(e, seed);
      if (img >= n_items) fail(ErrorKind::input, "group action leaves the item set");
      if (out.orbit_of[img] == 0xffffffffu) {
        out.orbit_of[img] = orbit;
        mem.push_back(img);
      } else if (out.orbit_of[img] != orbit) {
        fail(ErrorKind::internal, "inconsistent orbit partition");
      }
    }
    std::sort(mem.begin(), mem.end());
    out.members.push_back(std::move(mem));
  }
  return out;
}

// ---------------------------------------------------------------------------
// automorphism search

std::uint32_t map_flag(const FlagGraph& fg, const Permutation& p, std::uint32_t flag) {
  std::vector<FaceIndex> tuple(static_cast<std::size_t>(fg.degree));
  auto f = fg.flag(flag);
  for (int r = 0; r < fg.degree; ++r) tuple[static_cast<std::size_t>(r)] = p.map[f[r]];
  std::uint32_t img = fg.find(tuple);
  if (img == FlagGraph::kNoFlag) fail(ErrorKind::internal, "flag image missing");
  return img;
}

namespace {

// First-stage flag key: degree signature of each face in the flag. Sound
// (automorphisms preserve it), cheap, and after gadget insertion the vertex
// valencies dominate and make it highly selective.
std::vector<std::uint64_t> flag_keys(const FaceLattice& l, const FlagGraph& fg) {
  std::vector<std::uint64_t> face_sig(l.face_count());
  for (FaceIndex f = 0; f < l.face_count(); ++f)
    face_sig[f] = hash_mix((static_cast<std::uint64_t>(l.up(f).size()) << 24) ^
                           (static_cast<std::uint64_t>(l.down(f).size()) << 2) ^
                           static_cast<std::uint64_t>(l.rank_of(f) + 1));
  std::vector<std::uint64_t> keys(fg.flag_count);
  for (std::size_t i = 0; i < fg.flag_count; ++i) {
    std::uint64_t h = 0x853c49e6748fea9bULL;
    auto f = fg.flag(i);
    for (int r = 0; r < fg.degree; ++r) h = hash_combine(h, face_sig[f[r]]);
    keys[i] = h;
  }
  return keys;
}

// Second-stage refinement: multiset of valencies over the neighbors of the
// flag's vertex. Only computed for surviving candidates.
std::uint64_t neighbor_valency_profile(const FaceLattice& l, std::span<const FaceIndex> flag) {
  FaceIndex v = flag[0];
  std::vector<std::uint32_t> vals;
  for (FaceIndex e : l.up(v)) {
    for (FaceIndex w : l.down(e))
      if (w != v) vals.push_back(static_cast<std::uint32_t>(l.up(w).size()));
  }
  std::sort(vals.begin(), vals.end());
  std::uint64_t h = 0xda942042e4dd58b5ULL;
  for (std::uint32_t x : vals) h = hash_combine(h, x);
  return h;
}

constexpr std::uint32_t kUnset = 0xffffffffu;

struct PropagationScratch {
  std::vector<std::uint32_t> flag_img, face_img;
  std::vector<std::uint32_t> touched_flags, touched_faces;
  std::vector<std::uint32_t> queue;

  void init(std::size_t flags, std::size_t faces) {
    flag_img.assign(flags, kUnset);
    face_img.assign(faces, kUnset);
  }
  void clear() {
    for (std::uint32_t i : touched_flags) flag_img[i] = kUnset;
    for (std::uint32_t i : touched_faces) face_img[i] = kUnset;
    touched_flags.clear();
    touched_faces.clear();
    queue.clear();
  }
};

// Propagate base -> target through the matchings; returns the face bijection
// or nullopt on conflict. `must_be_free` asserts no fixed flag when the pair
// differs (the flag action of any polytope automorphism group is free).
std::optional<Permutation> propagate(const FaceLattice& l, const FlagGraph& fg,
                                     std::uint32_t base, std::uint32_t target,
                                     PropagationScratch& scratch) {
  const int d = fg.degree;
  scratch.clear();
  auto assign_faces = [&](std::uint32_t flag, std::uint32_t img) -> bool {
    const FaceIndex* f = fg.faces.data() + static_cast<std::size_t>(flag) * d;
    const FaceIndex* g = fg.faces.data() + static_cast<std::size_t>(img) * d;
    for (int r = 0; r < d; ++r) {
      if (scratch.face_img[f[r]] == kUnset) {
        scratch.face_img[f[r]] = g[r];
        scratch.touched_faces.push_back(f[r]);
      } else if (scratch.face_img[f[r]] != g[r]) {
        return false;
      }
    }
    return true;
  };
  scratch.flag_img[base] = target;
  scratch.touched_flags.push_back(base);
  scratch.queue.push_back(base);
  if (!assign_faces(base, target)) return std::nullopt;
  for (std::size_t head = 0; head < scratch.queue.size(); ++head) {
    std::uint32_t cur = scratch.queue[head];
    std::uint32_t img = scratch.flag_img[cur];
    for (int c = 0; c < d; ++c) {
      std::uint32_t next = fg.adjacent[static_cast<std::size_t>(c)][cur];
      std::uint32_t next_img = fg.adjacent[static_cast<std::size_t>(c)][img];
      if (scratch.flag_img[next] == kUnset) {
        scratch.flag_img[next] = next_img;
        scratch.touched_flags.push_back(next);
        scratch.queue.push_back(next);
        if (!assign_faces(next, next_img)) return std::nullopt;
      } else if (scratch.flag_img[next] != next_img) {
        return std::nullopt;
      }
    }
  }
  if (scratch.queue.size() != fg.flag_count)
    fail(ErrorKind::internal, "flag graph is not connected");
  if (base != target) {
    for (std::uint32_t i : scratch.touched_flags)
      if (scratch.flag_img[i] == i)
        fail(ErrorKind::internal, "non-identity automorphism fixes a flag");
  }
  Permutation p = identity_permutation(l.face_count());
  bool complete = true;
  for (FaceIndex f = 0; f < l.face_count(); ++f) {
    int r = l.rank_of(f);
    if (r == -1 || r == l.rank()) continue;
    if (scratch.face_img[f] == kUnset) {
      complete = false;
      break;
    }
    p.map[f] = scratch.face_img[f];
  }
  if (!complete) return std::nullopt;
  // bijectivity per rank
  std::vector<char> hit(l.face_count(), 0);
  for (FaceIndex f = 0; f < l.face_count(); ++f) {
    if (hit[p.map[f]]) return std::nullopt;
    hit[p.map[f]] = 1;
  }
  return p;
}

}  // namespace

PermGroup automorphisms(const FaceLattice& l, const FlagGraph& fg) {
  if (!l.is_validated()) fail(ErrorKind::input, "automorphism search requires a validated lattice");
  if (fg.degree == 0) return PermGroup::from_elements(l, {identity_permutation(l.face_count())});

  auto keys = flag_keys(l, fg);
  // rarest key, ties by the smallest owning flag
  std::unordered_map<std::uint64_t, std::uint32_t> histogram;
  for (std::uint64_t k : keys) ++histogram[k];
  std::uint32_t base = 0;
  std::uint32_t best = 0xffffffffu;
  for (std::uint32_t i = 0; i < fg.flag_count; ++i) {
    std::uint32_t c = histogram[keys[i]];
    if (c < best) {
      best = c;
      base = i;
    }
  }
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t i = 0; i < fg.flag_count; ++i)
    if (keys[i] == keys[base]) candidates.push_back(i);
  if (candidates.size() > 64) {
    std::uint64_t base_profile = neighbor_valency_profile(l, fg.flag(base));
    std::vector<std::uint32_t> kept;
    for (std::uint32_t c : candidates)
      if (neighbor_valency_profile(l, fg.flag(c)) == base_profile) kept.push_back(c);
    candidates = std::move(kept);
  }

  PropagationScratch scratch;
  scratch.init(fg.flag_count, l.face_count());
  std::vector<Permutation> found;
  for (std::uint32_t target : candidates)
    if (auto p = propagate(l, fg, base, target, scratch)) found.push_back(std::move(*p));
  std::sort(found.begin(), found.end());
  return PermGroup::from_elements(l, std::move(found));
}

PermGroup automorphisms(const FaceLattice& l) {
  FlagGraph fg = build_flag_graph(l);
  return automorphisms(l, fg);
}

}  // namespace symbreak
