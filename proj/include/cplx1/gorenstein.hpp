#pragma once

#include "cplx1/data.hpp"

#include <array>
#include <string>
#include <vector>

namespace cplx1 {

struct GorensteinData {
  bool q_gorenstein = false;
  Int iota = 0;
  Int zeta = 0;
  IntVec mu;   // first r coordinates of iota*u
  IntVec eta;  // last s coordinates of iota*u (canonical divisor)
  RatVec u;    // P^T u = w, w the canonical multiplicity vector
};

// Multiplicities of a canonical divisor: -1 everywhere, plus (r-1)*l on the alpha block.
IntVec canonical_vector(const DefiningData& data, std::size_t alpha_block = 0);

// Requires type 2 and a pointed cone (PreconditionError otherwise).
GorensteinData gorenstein_data(const DefiningData& data, std::size_t alpha_block = 0);

struct ZetaNormalForm {
  DefiningData data;
  Int iota;
  Int zeta;
  IntVec mu;  // mu_0 .. mu_r with zeta*nu_ij + mu_i*l_ij = iota
  std::vector<std::string> log;
};

// Last row (nu_0, .., nu_r, nu') with zeta*nu_ij + mu_i*l_ij = iota; for zeta = 1 the
// last row is (iota - iota(r-1)l_0, iota, .., iota).
ZetaNormalForm normal_form_zeta(const DefiningData& data);

enum class ZetaCase { i, ii, iii, iv, v, vi };
std::string to_string(ZetaCase c);

struct ZetaCaseResult {
  ZetaCase tag;
  DefiningData data;
  std::array<IntVec, 3> nu;
  Int iota;
  Int zeta;
  std::vector<std::string> log;
};

// Requires zeta > 1.
ZetaCaseResult zeta_case(const DefiningData& data);

struct LeadingBlockData {
  std::array<Int, 3> triple;
  std::array<Int, 3> d_triple;
  int case_id = 0;  // 1..9
  DefiningData data;
  IntVec a;                   // coefficients applied to the penultimate row
  std::array<Int, 3> d_before;  // leading entries before applying a
  std::string swap;           // "", "0-1" or "1-2"
  bool negated = false;
  std::vector<std::string> log;
};

// Requires iota = zeta = 1, log terminal, s = 2.
LeadingBlockData leading_block_data(const DefiningData& data);

// Log terminal in the sense of the Cox ring being platonic.
bool is_log_terminal_type2(const DefiningData& data);

}  // namespace cplx1
