#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "symbreak/gadget.hpp"
#include "symbreak/lattice.hpp"
#include "symbreak/order_complex.hpp"
#include "symbreak/perm.hpp"

namespace symbreak {

// Inductive choice of the apex-valency parameters: the interior bound first,
// then per label i (descending) the smallest feasible value separating the
// valency interval of label i from everything above it.
struct ParameterPlan {
  int d = 0;
  int bound_m = 0;                              // interior valency bound
  std::vector<int> m;                           // per label 0..d-1
  std::vector<std::array<int, 2>> intervals;    // [a_i, b_i] per label
  std::vector<int> L_vertex_counts;             // per orbit
  nlohmann::ordered_json to_json() const;
};

ParameterPlan plan_parameters(const LabelledComplex& c, const ValencyTable& vt,
                              const std::vector<StackedPolytope>& Ls);

struct BreakOptions {
  std::size_t face_cap = 40'000'000;
  std::size_t flag_cap = 400'000'000;
};

// The refined polytope P together with everything needed to verify it:
// provenance is positional (chain faces of each rank come first, then the
// per-chamber gadget blocks in chamber order).
struct BrokenPolytope {
  FaceLattice q;
  FaceLattice p;
  LabelledComplex complex;
  ValencyTable vt;
  ChamberOrbits chambers;
  ParameterPlan plan;
  std::vector<GadgetTemplate> templates;  // per orbit
  std::vector<Permutation> gamma_q;       // generators on q
  std::vector<Permutation> gamma_p;       // the same generators on p

  std::vector<std::uint32_t> rank_face_start;            // per rank 0..d-1
  std::vector<std::uint32_t> chain_count;                // per rank
  std::vector<std::vector<std::uint64_t>> gadget_start;  // [rank][chamber] block offset

  struct Provenance {
    bool is_chain = false;
    std::uint32_t chamber = 0;    // gadget faces
    std::uint32_t tmpl_face = 0;  // index into the orbit template
    std::uint32_t chain_pos = 0;  // chain faces: position within the rank
  };
  Provenance provenance(FaceIndex f) const;
  FaceIndex chain_face(int dim, std::uint32_t pos) const;

  nlohmann::ordered_json provenance_json() const;
};

BrokenPolytope break_polytope(const FaceLattice& q, const PermGroup& gamma,
                              const BreakOptions& opt = {});

struct VerificationReport {
  bool validates = false;
  bool skeleton_intact = false;
  bool valency_equation = false;       // val_P = val_C + s*m_i, vertexwise
  bool interior_bound = false;         // all gadget vertices <= bound_m
  int max_interior_found = 0;
  bool interval_chain = false;         // m < a_{d-1} <= b_{d-1} < ... <= b_0
  bool group_match = false;            // Gamma(P) equals Gamma, via provenance
  std::size_t group_order_expected = 0, group_order_found = 0;
  std::string witness;

  bool ok() const {
    return validates && skeleton_intact && valency_equation && interior_bound &&
           interval_chain && group_match;
  }
  std::string summary() const;
  nlohmann::ordered_json to_json() const;
};

VerificationReport verify_broken(const BrokenPolytope& b, const BreakOptions& opt = {});

}  // namespace symbreak
