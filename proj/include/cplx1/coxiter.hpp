#pragma once

#include "cplx1/data.hpp"

#include <string>
#include <vector>

namespace cplx1 {

struct IterationStep {
  ExponentData input;                   // ordered input
  std::vector<std::size_t> block_permutation;  // perm[new] = old, relative to the given data
  IntVec c;                             // component counts per block
  IntMatrix p1;                         // row lattice of the kernel to K0 / torsion
  std::string p1_source;                // "lemma" or "saturation"
  ExponentData raw_output;              // block i repeated c(i) times, gcd exponents
  RingState normalized_output;
};

// Requires type 2, platonic, not factorial.
IterationStep iterate_step(const ExponentData& data);

struct Chain {
  std::vector<RingState> states;  // normalized; first is the starting Cox ring
  std::vector<IterationStep> steps;
  std::string terminal;           // "factorial" or "polynomial"
};

// Requires platonic data; throws std::runtime_error past max_steps.
Chain iterate_chain(const ExponentData& start, int max_steps = 10);
Chain iterate_chain(const DefiningData& start, int max_steps = 10);

// Exponents of the next Cox ring read off the table for the leading platonic triple.
// Requires ordered, platonic, non-factorial data; throws std::logic_error if no row applies.
ExponentData ithelp_oracle(const ExponentData& data);

// Sort blocks descending inside and by block order, without dropping blocks.
ExponentData order_blocks(const ExponentData& data, std::vector<std::size_t>* perm = nullptr);

}  // namespace cplx1
