#pragma once

#include "cplx1/data.hpp"

#include <vector>

namespace cplx1 {

// gcd profile of type-2 exponent data.
struct InvariantProfile {
  IntVec frakl_i;                  // gcd of block i
  Int frakl;                       // gcd of all frakl_i
  std::vector<IntVec> frakl_ij;    // gcd(frakl_i / frakl, frakl_j / frakl), diagonal 0
  Int lbar;                        // lcm of the frakl_i
  IntVec b;                        // lbar / frakl_i
  IntVec b_of_i;                   // gcd of b_j, j != i
};

InvariantProfile profile(const ExponentData& data);

// Reciprocal sum of the tuple exceeds (length - 2).
bool is_platonic_tuple(const IntVec& t);
// Every cross-block choice is platonic; equivalently the tuple of block maxima.
bool is_platonic_ring(const ExponentData& data);
bool is_factorial(const ExponentData& data);
bool is_factorial(const RingState& state);

// Genus of the curve Y associated with the ring (exact; throws std::logic_error if not integral).
Int genus(const ExponentData& data);
bool is_total_space_rational(const ExponentData& data);

// Torsion part of Z^{n+m} / im(P0^T).
IntVec k0_torsion(const ExponentData& data);
// Closed form C(l) x C(l*l01*l02*l12) for r = 2, as invariant factors > 1.
IntVec k0_torsion_trinomial(const Int& l0, const Int& l1, const Int& l2);

// Number of irreducible components of V(Xbar, T_ij) for a variable of the given block.
Int component_count(const ExponentData& data, std::size_t block);

}  // namespace cplx1
