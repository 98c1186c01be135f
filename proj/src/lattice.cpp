#include "symbreak/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace symbreak {

namespace {

std::string face_name(const FaceLattice& l, FaceIndex f) {
  std::ostringstream os;
  os << "face " << l.id_of(f) << " (rank " << l.rank_of(f) << ")";
  return os.str();
}

}  // namespace

FaceLattice FaceLattice::from_parts(int rank, std::vector<FaceEntry> faces,
                                    const std::vector<std::pair<FaceId, FaceId>>& covers) {
  if (rank < -1) fail(ErrorKind::input, "lattice rank must be at least -1");
  std::sort(faces.begin(), faces.end(), [](const FaceEntry& a, const FaceEntry& b) {
    return a.rank != b.rank ? a.rank < b.rank : a.id < b.id;
  });
  for (std::size_t i = 1; i < faces.size(); ++i)
    if (faces[i].id == faces[i - 1].id)
      fail(ErrorKind::input, "duplicate face id " + std::to_string(faces[i].id));
  FaceLattice l;
  l.d_ = rank;
  l.ids_.reserve(faces.size());
  l.ranks_.reserve(faces.size());
  for (const FaceEntry& f : faces) {
    if (f.rank < -1 || f.rank > rank)
      fail(ErrorKind::input, "face " + std::to_string(f.id) + " has rank " +
                                 std::to_string(f.rank) + " outside [-1, " + std::to_string(rank) +
                                 "]");
    l.ids_.push_back(f.id);
    l.ranks_.push_back(static_cast<std::int8_t>(f.rank));
  }
  // ids_ is sorted by (rank, id) but not by id; index lookup searches the
  // whole array via a sorted permutation built below in build_index.
  std::vector<std::pair<FaceIndex, FaceIndex>> idx_covers;
  idx_covers.reserve(covers.size());
  {
    // temporary id -> index map via sort
    std::vector<FaceIndex> order(l.ids_.size());
    for (FaceIndex i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](FaceIndex a, FaceIndex b) { return l.ids_[a] < l.ids_[b]; });
    auto lookup = [&](FaceId id) -> FaceIndex {
      auto it = std::lower_bound(order.begin(), order.end(), id,
                                 [&](FaceIndex a, FaceId v) { return l.ids_[a] < v; });
      if (it == order.end() || l.ids_[*it] != id)
        fail(ErrorKind::input, "cover refers to unknown face id " + std::to_string(id));
      return *it;
    };
    for (const auto& [lo_id, hi_id] : covers) {
      FaceIndex lo = lookup(lo_id), hi = lookup(hi_id);
      if (l.ranks_[hi] != l.ranks_[lo] + 1)
        fail(ErrorKind::input, "cover (" + std::to_string(lo_id) + ", " + std::to_string(hi_id) +
                                   ") does not step rank by one");
      idx_covers.emplace_back(lo, hi);
    }
  }
  l.build_index(std::move(idx_covers));
  return l;
}

FaceLattice FaceLattice::from_indexed(int rank, std::vector<FaceId> ids,
                                      std::vector<std::int8_t> ranks,
                                      std::vector<std::pair<FaceIndex, FaceIndex>>&& covers) {
  FaceLattice l;
  l.d_ = rank;
  l.ids_ = std::move(ids);
  l.ranks_ = std::move(ranks);
  for (std::size_t i = 1; i < l.ids_.size(); ++i) {
    bool sorted = l.ranks_[i - 1] < l.ranks_[i] ||
                  (l.ranks_[i - 1] == l.ranks_[i] && l.ids_[i - 1] < l.ids_[i]);
    if (!sorted) fail(ErrorKind::internal, "from_indexed: faces not sorted by (rank, id)");
  }
  l.build_index(std::move(covers));
  return l;
}

void FaceLattice::build_index(std::vector<std::pair<FaceIndex, FaceIndex>>&& covers) {
  const std::size_t n = ids_.size();
  // dedupe covers
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());

  up_off_.assign(n + 1, 0);
  down_off_.assign(n + 1, 0);
  for (const auto& [lo, hi] : covers) {
    ++up_off_[lo + 1];
    ++down_off_[hi + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    up_off_[i + 1] += up_off_[i];
    down_off_[i + 1] += down_off_[i];
  }
  up_.resize(covers.size());
  down_.resize(covers.size());
  {
    std::vector<std::uint32_t> ucur(up_off_.begin(), up_off_.end() - 1);
    std::vector<std::uint32_t> dcur(down_off_.begin(), down_off_.end() - 1);
    for (const auto& [lo, hi] : covers) {
      up_[ucur[lo]++] = hi;
      down_[dcur[hi]++] = lo;
    }
  }
  for (std::size_t f = 0; f < n; ++f) {
    std::sort(up_.begin() + up_off_[f], up_.begin() + up_off_[f + 1]);
    std::sort(down_.begin() + down_off_[f], down_.begin() + down_off_[f + 1]);
  }

  // after the prefix sum, rank_off_[r+1] begins and rank_off_[r+2] ends rank r
  rank_off_.assign(static_cast<std::size_t>(d_) + 3, 0);
  for (std::size_t f = 0; f < n; ++f) ++rank_off_[static_cast<std::size_t>(ranks_[f] + 2)];
  for (std::size_t r = 1; r < rank_off_.size(); ++r) rank_off_[r] += rank_off_[r - 1];

  bottom_ = (rank_end(-1) - rank_begin(-1) == 1) ? rank_begin(-1) : kNoFace;
  top_ = (rank_end(d_) - rank_begin(d_) == 1) ? rank_begin(d_) : kNoFace;
}

std::size_t FaceLattice::proper_face_count() const {
  return face_count() - (rank_end(-1) - rank_begin(-1)) - (rank_end(d_) - rank_begin(d_));
}

FaceIndex FaceLattice::index_of(FaceId id) const {
  // faces sorted by (rank, id): search each rank segment
  for (int r = -1; r <= d_; ++r) {
    FaceIndex lo = rank_begin(r), hi = rank_end(r);
    auto begin = ids_.begin() + lo, end = ids_.begin() + hi;
    auto it = std::lower_bound(begin, end, id);
    if (it != end && *it == id) return static_cast<FaceIndex>(it - ids_.begin());
  }
  return kNoFace;
}

FaceIndex FaceLattice::require_index(FaceId id) const {
  FaceIndex f = index_of(id);
  if (f == kNoFace) fail(ErrorKind::input, "unknown face id " + std::to_string(id));
  return f;
}

bool FaceLattice::covers_pair(FaceIndex lo, FaceIndex hi) const {
  auto u = up(lo);
  return std::binary_search(u.begin(), u.end(), hi);
}

nlohmann::ordered_json FaceLattice::to_json() const {
  nlohmann::ordered_json j;
  j["rank"] = d_;
  auto& faces = j["faces"] = nlohmann::ordered_json::array();
  for (std::size_t f = 0; f < face_count(); ++f)
    faces.push_back({{"id", ids_[f]}, {"rank", ranks_[f]}});
  auto& covers = j["covers"] = nlohmann::ordered_json::array();
  for (std::size_t f = 0; f < face_count(); ++f)
    for (FaceIndex g : up(static_cast<FaceIndex>(f))) covers.push_back({ids_[f], ids_[g]});
  return j;
}

FaceLattice FaceLattice::from_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("lattice") && !j.contains("faces"))
    return from_json(j.at("lattice"));  // refinement output files nest the lattice
  if (!j.is_object() || !j.contains("rank") || !j.contains("faces") || !j.contains("covers"))
    fail(ErrorKind::input, "lattice json must have rank, faces, covers");
  std::vector<FaceEntry> faces;
  for (const auto& f : j.at("faces"))
    faces.push_back({f.at("id").get<FaceId>(), f.at("rank").get<int>()});
  std::vector<std::pair<FaceId, FaceId>> covers;
  for (const auto& c : j.at("covers")) {
    if (!c.is_array() || c.size() != 2) fail(ErrorKind::input, "cover entries must be pairs");
    covers.emplace_back(c.at(0).get<FaceId>(), c.at(1).get<FaceId>());
  }
  return from_parts(j.at("rank").get<int>(), std::move(faces), covers);
}

// ---------------------------------------------------------------------------
// flag enumeration and matchings

std::vector<FaceIndex> enumerate_flags(const FaceLattice& l, std::size_t flag_cap) {
  const int d = l.rank();
  std::vector<FaceIndex> flat;
  if (l.bottom() == kNoFace || l.top() == kNoFace)
    fail(ErrorKind::input, "flag enumeration requires unique improper faces");
  if (d == 0) return flat;  // single flag, no proper faces

  // DFS over up-covers; faces are index-sorted so the result is lexicographic
  // in the face-id tuple.
  std::vector<FaceIndex> path(static_cast<std::size_t>(d));
  std::vector<std::size_t> pos(static_cast<std::size_t>(d), 0);
  int depth = 0;
  auto choices = [&](int r) -> std::span<const FaceIndex> {
    return r == 0 ? l.up(l.bottom()) : l.up(path[static_cast<std::size_t>(r - 1)]);
  };
  while (depth >= 0) {
    auto c = choices(depth);
    if (pos[static_cast<std::size_t>(depth)] == c.size()) {
      pos[static_cast<std::size_t>(depth)] = 0;
      --depth;
      if (depth >= 0) ++pos[static_cast<std::size_t>(depth)];
      continue;
    }
    FaceIndex f = c[pos[static_cast<std::size_t>(depth)]];
    if (l.rank_of(f) != depth) fail(ErrorKind::internal, "cover skips a rank");
    path[static_cast<std::size_t>(depth)] = f;
    if (depth == d - 1) {
      if (flat.size() / d >= flag_cap) fail(ErrorKind::capacity, "flag count exceeds cap");
      flat.insert(flat.end(), path.begin(), path.end());
      ++pos[static_cast<std::size_t>(depth)];
    } else {
      ++depth;
    }
  }
  return flat;
}

std::uint32_t FlagGraph::find(std::span<const FaceIndex> tuple) const {
  const int d = degree;
  std::size_t lo = 0, hi = flag_count;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    const FaceIndex* m = faces.data() + mid * static_cast<std::size_t>(d);
    int cmp = 0;
    for (int r = 0; r < d; ++r) {
      if (m[r] != tuple[static_cast<std::size_t>(r)]) {
        cmp = m[r] < tuple[static_cast<std::size_t>(r)] ? -1 : 1;
        break;
      }
    }
    if (cmp < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < flag_count) {
    const FaceIndex* m = faces.data() + lo * static_cast<std::size_t>(d);
    bool eq = true;
    for (int r = 0; r < d; ++r)
      if (m[r] != tuple[static_cast<std::size_t>(r)]) eq = false;
    if (eq) return static_cast<std::uint32_t>(lo);
  }
  return kNoFlag;
}

FlagGraph build_flag_graph_unchecked(const FaceLattice& l, std::vector<FaceIndex>&& flat) {
  const int d = l.rank();
  FlagGraph fg;
  fg.degree = d;
  fg.faces = std::move(flat);
  fg.flag_count = d > 0 ? fg.faces.size() / static_cast<std::size_t>(d) : 1;
  if (d == 0) return fg;

  fg.adjacent.assign(static_cast<std::size_t>(d), std::vector<std::uint32_t>(fg.flag_count));
  std::vector<FaceIndex> tuple(static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c) {
    auto& match = fg.adjacent[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < fg.flag_count; ++i) {
      const FaceIndex* f = fg.faces.data() + i * static_cast<std::size_t>(d);
      FaceIndex lo = (c == 0) ? l.bottom() : f[c - 1];
      FaceIndex partner = kNoFace;
      int middles = 0;
      if (c < d - 1) {
        for (FaceIndex g : l.down(f[c + 1])) {
          if (c == 0 || l.covers_pair(lo, g)) {
            ++middles;
            if (g != f[c]) partner = g;
          }
        }
      } else {
        for (FaceIndex g : l.up(lo)) {
          if (l.rank_of(g) == d - 1) {
            ++middles;
            if (g != f[c]) partner = g;
          }
        }
      }
      if (middles != 2 || partner == kNoFace)
        fail(ErrorKind::input,
             "matching for color " + std::to_string(c) + " is not perfect at flag " +
                 std::to_string(i) + " (diamond count " + std::to_string(middles) + ")");
      std::copy(f, f + d, tuple.begin());
      tuple[static_cast<std::size_t>(c)] = partner;
      std::uint32_t j = fg.find(tuple);
      if (j == FlagGraph::kNoFlag) fail(ErrorKind::internal, "adjacent flag missing");
      match[i] = j;
    }
  }
  return fg;
}

FlagGraph build_flag_graph(const FaceLattice& l, std::size_t flag_cap) {
  if (!l.is_validated())
    fail(ErrorKind::input, "build_flag_graph requires a validated lattice");
  return build_flag_graph_unchecked(l, enumerate_flags(l, flag_cap));
}

// ---------------------------------------------------------------------------
// validation

namespace {

AxiomResult check_bounded(const FaceLattice& l) {
  AxiomResult r;
  std::size_t nbot = l.rank_end(-1) - l.rank_begin(-1);
  std::size_t ntop = l.rank_end(l.rank()) - l.rank_begin(l.rank());
  if (nbot == 1 && ntop == 1) {
    r.status = AxiomResult::Status::pass;
  } else {
    r.status = AxiomResult::Status::fail;
    r.witness = "found " + std::to_string(nbot) + " faces of rank -1 and " + std::to_string(ntop) +
                " of rank " + std::to_string(l.rank());
  }
  return r;
}

AxiomResult check_graded(const FaceLattice& l) {
  AxiomResult r;
  r.status = AxiomResult::Status::pass;
  for (FaceIndex f = 0; f < l.face_count(); ++f) {
    int rk = l.rank_of(f);
    if (rk > -1 && l.down(f).empty()) {
      r.status = AxiomResult::Status::fail;
      r.witness = face_name(l, f) + " has no lower cover";
      return r;
    }
    if (rk < l.rank() && l.up(f).empty()) {
      r.status = AxiomResult::Status::fail;
      r.witness = face_name(l, f) + " has no upper cover";
      return r;
    }
  }
  return r;
}

AxiomResult check_diamond(const FaceLattice& l) {
  AxiomResult r;
  r.status = AxiomResult::Status::pass;
  std::vector<FaceIndex> grand;
  for (FaceIndex g = 0; g < l.face_count(); ++g) {
    if (l.rank_of(g) < 1) continue;
    grand.clear();
    for (FaceIndex h : l.down(g))
      for (FaceIndex f : l.down(h)) grand.push_back(f);
    std::sort(grand.begin(), grand.end());
    for (std::size_t i = 0; i < grand.size();) {
      std::size_t j = i;
      while (j < grand.size() && grand[j] == grand[i]) ++j;
      if (j - i != 2) {
        r.status = AxiomResult::Status::fail;
        r.witness = "between " + face_name(l, grand[i]) + " and " + face_name(l, g) + ": " +
                    std::to_string(j - i) + " faces instead of 2";
        return r;
      }
      i = j;
    }
  }
  return r;
}

// Strong flag-connectedness. For every contiguous color interval [a, b] with
// b > a, flags that agree on ranks a-1..b+1 represent the same section flag
// and may be identified; the classes reachable through colors a..b must then
// exhaust every (face@a-1, face@b+1) fiber. Ranges with a single color are
// covered by the diamond condition.
AxiomResult check_flag_connected(const FlagGraph& fg) {
  AxiomResult r;
  r.status = AxiomResult::Status::pass;
  const int d = fg.degree;
  const std::size_t n = fg.flag_count;
  if (d <= 1 || n == 0) return r;

  Dsu dsu;
  std::vector<std::uint32_t> order(n);
  auto face_at = [&](std::size_t flag, int rank) {
    return fg.faces[flag * static_cast<std::size_t>(d) + static_cast<std::size_t>(rank)];
  };

  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      dsu.reset(n);
      int wlo = std::max(a - 1, 0), whi = std::min(b + 1, d - 1);
      bool whole_window = (wlo == 0 && whi == d - 1);
      if (!whole_window) {
        for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
          for (int rk = wlo; rk <= whi; ++rk) {
            FaceIndex fx = face_at(x, rk), fy = face_at(y, rk);
            if (fx != fy) return fx < fy;
          }
          return false;
        });
        for (std::size_t i = 1; i < n; ++i) {
          bool same = true;
          for (int rk = wlo; rk <= whi; ++rk)
            if (face_at(order[i - 1], rk) != face_at(order[i], rk)) same = false;
          if (same) dsu.unite(order[i - 1], order[i]);
        }
      }
      for (int c = a; c <= b; ++c) {
        const auto& match = fg.adjacent[static_cast<std::size_t>(c)];
        for (std::uint32_t i = 0; i < n; ++i) dsu.unite(i, match[i]);
      }
      // fibers keyed by the section ends
      bool key_lo = a - 1 >= 0, key_hi = b + 1 <= d - 1;
      for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
      if (key_lo || key_hi) {
        std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
          if (key_lo) {
            FaceIndex fx = face_at(x, a - 1), fy = face_at(y, a - 1);
            if (fx != fy) return fx < fy;
          }
          if (key_hi) {
            FaceIndex fx = face_at(x, b + 1), fy = face_at(y, b + 1);
            if (fx != fy) return fx < fy;
          }
          return false;
        });
      }
      for (std::size_t i = 1; i < n; ++i) {
        bool same = true;
        if (key_lo && face_at(order[i - 1], a - 1) != face_at(order[i], a - 1)) same = false;
        if (key_hi && face_at(order[i - 1], b + 1) != face_at(order[i], b + 1)) same = false;
        if (same && dsu.find(order[i - 1]) != dsu.find(order[i])) {
          r.status = AxiomResult::Status::fail;
          std::ostringstream os;
          os << "section over ranks [" << a - 1 << ", " << b + 1
             << "] is not flag-connected; flags " << order[i - 1] << " and " << order[i]
             << " share it but are not joined";
          r.witness = os.str();
          return r;
        }
      }
    }
  }
  return r;
}

}  // namespace

ValidationReport validate_keeping_graph(const FaceLattice& l, FlagGraph* out,
                                        const ValidateOptions& opt) {
  ValidationReport rep;
  rep.bounded = check_bounded(l);
  if (!rep.bounded.passed()) return rep;
  rep.graded = check_graded(l);
  if (!rep.graded.passed()) return rep;
  rep.diamond = check_diamond(l);
  if (!rep.diamond.passed()) return rep;

  auto flat = enumerate_flags(l, opt.flag_cap);
  FlagGraph fg = build_flag_graph_unchecked(l, std::move(flat));
  rep.flag_count = fg.flag_count;
  rep.flag_connected = check_flag_connected(fg);
  if (rep.ok()) l.mark_validated();
  if (out) *out = std::move(fg);
  return rep;
}

ValidationReport validate(const FaceLattice& l, const ValidateOptions& opt) {
  return validate_keeping_graph(l, nullptr, opt);
}

std::string ValidationReport::summary() const {
  auto word = [](const AxiomResult& a) {
    switch (a.status) {
      case AxiomResult::Status::pass:
        return "pass";
      case AxiomResult::Status::fail:
        return "FAIL";
      default:
        return "skipped";
    }
  };
  std::ostringstream os;
  os << "bounded: " << word(bounded) << "; graded: " << word(graded)
     << "; diamond: " << word(diamond) << "; strongly flag-connected: " << word(flag_connected);
  for (const AxiomResult* a : {&bounded, &graded, &diamond, &flag_connected})
    if (a->status == AxiomResult::Status::fail) os << "\n  witness: " << a->witness;
  return os.str();
}

nlohmann::ordered_json ValidationReport::to_json() const {
  auto one = [](const AxiomResult& a) {
    nlohmann::ordered_json j;
    j["status"] = a.status == AxiomResult::Status::pass   ? "pass"
                  : a.status == AxiomResult::Status::fail ? "fail"
                                                          : "skipped";
    if (!a.witness.empty()) j["witness"] = a.witness;
    return j;
  };
  nlohmann::ordered_json j;
  j["bounded"] = one(bounded);
  j["graded"] = one(graded);
  j["diamond"] = one(diamond);
  j["strongly-flag-connected"] = one(flag_connected);
  j["flags"] = flag_count;
  j["ok"] = ok();
  return j;
}

// ---------------------------------------------------------------------------
// skeleton and section

PosetFragment skeleton(const FaceLattice& l, int k) {
  if (k < -1 || k >= l.rank()) fail(ErrorKind::input, "skeleton rank out of range");
  PosetFragment frag;
  for (FaceIndex f = 0; f < l.face_count(); ++f) {
    int r = l.rank_of(f);
    if (r < 0 || r > k) continue;
    frag.faces.push_back({l.id_of(f), r});
    if (r == k) continue;
    for (FaceIndex g : l.up(f)) frag.covers.emplace_back(l.id_of(f), l.id_of(g));
  }
  return frag;
}

FaceLattice section(const FaceLattice& l, FaceId f_id, FaceId g_id) {
  FaceIndex f = l.require_index(f_id), g = l.require_index(g_id);
  const std::size_t n = l.face_count();
  std::vector<char> above(n, 0), below(n, 0);
  {
    std::vector<FaceIndex> stack{f};
    above[f] = 1;
    while (!stack.empty()) {
      FaceIndex x = stack.back();
      stack.pop_back();
      for (FaceIndex y : l.up(x))
        if (!above[y]) {
          above[y] = 1;
          stack.push_back(y);
        }
    }
    stack.assign(1, g);
    below[g] = 1;
    while (!stack.empty()) {
      FaceIndex x = stack.back();
      stack.pop_back();
      for (FaceIndex y : l.down(x))
        if (!below[y]) {
          below[y] = 1;
          stack.push_back(y);
        }
    }
  }
  if (!above[g]) fail(ErrorKind::input, "section requires comparable faces");
  int shift = l.rank_of(f) + 1;
  std::vector<FaceEntry> faces;
  std::vector<std::pair<FaceId, FaceId>> covers;
  for (FaceIndex x = 0; x < n; ++x) {
    if (!above[x] || !below[x]) continue;
    faces.push_back({l.id_of(x), l.rank_of(x) - shift});
    for (FaceIndex y : l.up(x))
      if (above[y] && below[y]) covers.emplace_back(l.id_of(x), l.id_of(y));
  }
  return FaceLattice::from_parts(l.rank_of(g) - shift, std::move(faces), covers);
}

}  // namespace symbreak
