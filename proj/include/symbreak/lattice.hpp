#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "symbreak/util.hpp"

namespace symbreak {

using FaceId = std::int64_t;
using FaceIndex = std::uint32_t;
inline constexpr FaceIndex kNoFace = 0xffffffffu;

struct FaceEntry {
  FaceId id;
  int rank;
};

// Ranked face poset given by cover relations. Faces are indexed 0..n-1 in
// (rank, id) order; improper faces (rank -1 and rank d) are stored explicitly.
// Immutable after construction; validation result is cached.
class FaceLattice {
 public:
  FaceLattice() = default;

  // id-based construction. Throws Error(input) on structural defects:
  // duplicate ids, dangling cover endpoints, covers whose rank step is not 1.
  static FaceLattice from_parts(int rank, std::vector<FaceEntry> faces,
                                const std::vector<std::pair<FaceId, FaceId>>& covers);

  // index-based fast path; `faces` must already be sorted by (rank, id).
  static FaceLattice from_indexed(int rank, std::vector<FaceId> ids, std::vector<std::int8_t> ranks,
                                  std::vector<std::pair<FaceIndex, FaceIndex>>&& covers);

  int rank() const { return d_; }
  std::size_t face_count() const { return ids_.size(); }
  std::size_t proper_face_count() const;

  FaceId id_of(FaceIndex f) const { return ids_[f]; }
  int rank_of(FaceIndex f) const { return ranks_[f]; }
  FaceIndex index_of(FaceId id) const;  // kNoFace when absent
  FaceIndex require_index(FaceId id) const;

  std::span<const FaceIndex> up(FaceIndex f) const {
    return {up_.data() + up_off_[f], up_.data() + up_off_[f + 1]};
  }
  std::span<const FaceIndex> down(FaceIndex f) const {
    return {down_.data() + down_off_[f], down_.data() + down_off_[f + 1]};
  }
  bool covers_pair(FaceIndex lo, FaceIndex hi) const;
  std::size_t cover_count() const { return up_.size(); }

  // Unique extreme faces, kNoFace if missing or ambiguous.
  FaceIndex bottom() const { return bottom_; }
  FaceIndex top() const { return top_; }

  // Faces of rank r occupy the index range [rank_begin(r), rank_end(r)).
  FaceIndex rank_begin(int r) const { return rank_off_[static_cast<std::size_t>(r + 1)]; }
  FaceIndex rank_end(int r) const { return rank_off_[static_cast<std::size_t>(r + 2)]; }

  bool is_validated() const { return validated_; }
  void mark_validated() const { validated_ = true; }

  nlohmann::ordered_json to_json() const;
  static FaceLattice from_json(const nlohmann::json& j);

 private:
  void build_index(std::vector<std::pair<FaceIndex, FaceIndex>>&& covers);

  int d_ = -2;
  std::vector<FaceId> ids_;
  std::vector<std::int8_t> ranks_;
  std::vector<std::uint32_t> up_off_, down_off_;
  std::vector<FaceIndex> up_, down_;
  std::vector<FaceIndex> rank_off_;
  FaceIndex bottom_ = kNoFace, top_ = kNoFace;
  mutable bool validated_ = false;
};

struct AxiomResult {
  enum class Status { pass, fail, skipped } status = Status::skipped;
  std::string witness;
  bool passed() const { return status == Status::pass; }
};

struct ValidationReport {
  AxiomResult bounded, graded, diamond, flag_connected;
  std::size_t flag_count = 0;
  bool ok() const {
    return bounded.passed() && graded.passed() && diamond.passed() && flag_connected.passed();
  }
  std::string summary() const;
  nlohmann::ordered_json to_json() const;
};

struct ValidateOptions {
  std::size_t flag_cap = 400'000'000;
};

// Flags of the lattice with their i-adjacency matchings. Flags are stored in
// lexicographic order of the (rank 0 .. rank d-1) face tuple; the improper
// faces are implicit. adjacent[c][i] is the c-adjacent flag of flag i.
struct FlagGraph {
  int degree = 0;  // number of colors = rank of the lattice
  std::size_t flag_count = 0;
  std::vector<FaceIndex> faces;  // flag_count * degree
  std::vector<std::vector<std::uint32_t>> adjacent;

  std::span<const FaceIndex> flag(std::size_t i) const {
    return {faces.data() + i * static_cast<std::size_t>(degree), static_cast<std::size_t>(degree)};
  }
  // Binary search over the lex order; kNoFlag when absent.
  static constexpr std::uint32_t kNoFlag = 0xffffffffu;
  std::uint32_t find(std::span<const FaceIndex> tuple) const;
};

// Validates the polytope axioms in order (bounded, graded, diamond, strong
// flag-connectedness); later checks are skipped once one fails. A passing
// report marks the lattice validated.
ValidationReport validate(const FaceLattice& lattice, const ValidateOptions& opt = {});

// Same, but hands the flag graph built along the way to the caller (set only
// when the first three axioms pass). Saves re-enumerating large lattices.
ValidationReport validate_keeping_graph(const FaceLattice& lattice, FlagGraph* out,
                                        const ValidateOptions& opt = {});

// Requires a validated lattice; refuses (Error input) when some matching
// would not be perfect. Rank-0 lattices have one flag and no colors.
FlagGraph build_flag_graph(const FaceLattice& lattice, std::size_t flag_cap = 400'000'000);

// Internal building blocks, shared with validate(); the lattice only needs to
// be bounded+graded (for enumerate) resp. diamond-checked (for matchings).
std::vector<FaceIndex> enumerate_flags(const FaceLattice& lattice, std::size_t flag_cap);
FlagGraph build_flag_graph_unchecked(const FaceLattice& lattice, std::vector<FaceIndex>&& flat);

struct PosetFragment {
  std::vector<FaceEntry> faces;
  std::vector<std::pair<FaceId, FaceId>> covers;
};

// Induced subposet on proper faces of rank <= k; -1 <= k < rank.
PosetFragment skeleton(const FaceLattice& lattice, int k);

// Section G/F reranked to a polytope of rank rank(G)-rank(F)-1, keeping ids.
FaceLattice section(const FaceLattice& lattice, FaceId f_id, FaceId g_id);

}  // namespace symbreak
