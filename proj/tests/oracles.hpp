#pragma once

// Independent brute-force oracles for the test suite. Nothing here may call
// into the flag-propagation engine or the assembly code it checks.

#include <cstdint>
#include <vector>

#include "symbreak/gadget.hpp"
#include "symbreak/lattice.hpp"

namespace symbreak::oracles {

struct OraclePoset {
  std::vector<int> rank;
  std::vector<std::vector<int>> up, down;
  std::size_t size() const { return rank.size(); }
};

OraclePoset to_poset(const FaceLattice& l);

// Template complex as a poset; boundary nodes are appended after the interior
// ones and their indices are returned through boundary_elems.
OraclePoset template_poset(const GadgetTemplate& t, std::vector<int>* boundary_elems);

// Number of maximal bottom-to-top chains, by path counting over covers.
std::uint64_t count_maximal_chains(const FaceLattice& l);

// Rank-preserving cover-preserving bijections by backtracking; `pinned` holds
// (element, image) constraints; stops early at `limit`.
std::uint64_t count_automorphisms(const OraclePoset& p,
                                  const std::vector<std::pair<int, int>>& pinned = {},
                                  std::uint64_t limit = ~0ull);

std::uint64_t count_isomorphisms(const OraclePoset& a, const OraclePoset& b,
                                 std::uint64_t limit = ~0ull);

}  // namespace symbreak::oracles
