#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <json.hpp>

#include "symbreak/lattice.hpp"

namespace symbreak {

// Lattice automorphism as a dense array over face indices.
struct Permutation {
  std::vector<FaceIndex> map;

  bool is_identity() const {
    for (FaceIndex i = 0; i < map.size(); ++i)
      if (map[i] != i) return false;
    return true;
  }
  bool operator==(const Permutation& o) const { return map == o.map; }
  bool operator<(const Permutation& o) const { return map < o.map; }
};

Permutation identity_permutation(std::size_t n);
Permutation compose(const Permutation& p, const Permutation& q);  // p after q
Permutation inverse(const Permutation& p);

// Checks that p is a rank-preserving bijection carrying covers to covers.
// Returns an explanation when it is not.
std::optional<std::string> automorphism_defect(const FaceLattice& l, const Permutation& p);

class PermGroup {
 public:
  PermGroup() = default;
  static PermGroup trivial(const FaceLattice& base);
  // Validates each generator as a lattice automorphism (Error input if not);
  // a validated generator set is by itself proof that the group is a
  // subgroup of the full automorphism group.
  static PermGroup from_generators(const FaceLattice& base, std::vector<Permutation> gens);
  // For element sets already known to be closed (e.g. an automorphism search
  // result); skips the closure computation.
  static PermGroup from_elements(const FaceLattice& base, std::vector<Permutation> elements);

  const FaceLattice& base() const { return *base_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  // Breadth-first closure in discovery order; Error(capacity) above the cap.
  const std::vector<Permutation>& closure() const;
  std::size_t order() const { return closure().size(); }
  bool contains(const Permutation& p) const;
  std::size_t element_cap = 1'000'000;

  nlohmann::ordered_json to_json() const;
  static PermGroup from_json(const FaceLattice& base, const nlohmann::json& j);

 private:
  const FaceLattice* base_ = nullptr;
  std::vector<Permutation> gens_;
  mutable std::vector<Permutation> elements_;
  mutable bool closed_ = false;
};

bool is_subgroup(const PermGroup& candidate, const PermGroup& ambient);

struct Orbits {
  std::vector<std::uint32_t> orbit_of;          // item -> orbit number
  std::vector<std::vector<std::uint32_t>> members;  // sorted; representative = front
  std::size_t count() const { return members.size(); }
};

// Orbit partition of 0..n-1 under the group; act(element, item) -> item.
// Orbits are numbered by their minimal member, ascending.
Orbits orbits(const PermGroup& group, std::size_t n_items,
              const std::function<std::uint32_t(const Permutation&, std::uint32_t)>& act);

// Full automorphism group by flag propagation: fix a base flag, try target
// flags surviving a degree-profile prune, and accept those whose propagation
// through the adjacency matchings yields a consistent face bijection. The
// free flag action is asserted along the way.
PermGroup automorphisms(const FaceLattice& l, const FlagGraph& fg);
PermGroup automorphisms(const FaceLattice& l);

// Image of a flag under an automorphism, via the flag graph lookup.
std::uint32_t map_flag(const FlagGraph& fg, const Permutation& p, std::uint32_t flag);

}  // namespace symbreak
