#pragma once
// Defining matrices shared by several test suites.

#include "cplx1/data.hpp"

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <random>

namespace fx {

using cplx1::DefiningData;
using cplx1::ExponentData;
using cplx1::Int;
using cplx1::IntMatrix;
using cplx1::IntVec;

inline ExponentData ex(std::initializer_list<std::initializer_list<long>> blocks, long m = 0, int variant = 2) {
  ExponentData e;
  e.variant = variant;
  for (const auto& b : blocks) {
    IntVec v;
    for (long x : b) v.emplace_back(x);
    e.blocks.push_back(v);
  }
  e.m = m;
  return e;
}

inline DefiningData dd(std::initializer_list<std::initializer_list<long>> blocks, long m,
                       std::initializer_list<std::initializer_list<long>> p) {
  return DefiningData::from_matrix(ex(blocks, m), IntMatrix(p));
}

// Running E6 surface example.
inline DefiningData e6() { return dd({{3}, {3}, {2}}, 0, {{-3, 3, 0}, {-3, 0, 2}, {-2, 1, 1}}); }
inline DefiningData m8() {
  return dd({{5}, {3}, {2}}, 1, {{-5, 3, 0, 0}, {-5, 0, 2, 0}, {0, 0, 0, 1}, {-4, 1, 1, 1}});
}
inline DefiningData m7() {
  return dd({{4}, {3}, {2}}, 1, {{-4, 3, 0, 0}, {-4, 0, 2, 0}, {0, 0, 0, 1}, {-3, 1, 1, 1}});
}
inline DefiningData m18() {
  return dd({{4, 1}, {3}, {2}}, 0, {{-4, -1, 3, 0}, {-4, -1, 0, 2}, {1, 3, 0, 0}, {-3, 0, 1, 1}});
}
inline DefiningData m10e(long k) {
  return DefiningData::from_matrix(
      ex({{k}, {2, 1}, {2, 1}}),
      IntMatrix{{-k, 2, 1, 0, 0}, {-k, 0, 0, 2, 1}, {1, 0, 0, 0, 0}, {1 - k, 1, 1, 1, 1}});
}
inline DefiningData p1_rational() { return dd({{3}, {3}, {4}}, 0, {{-3, 3, 0}, {-3, 0, 4}, {-2, 1, 1}}); }
inline DefiningData p2_irrational() { return dd({{4}, {4}, {4}}, 0, {{-4, 4, 0}, {-4, 0, 4}, {-3, 1, 1}}); }

inline DefiningData m4(long k) {
  return dd({{k}, {2}, {2}}, 1, {{-k, 2, 0, 0}, {-k, 0, 2, 0}, {0, 0, 0, 1}, {1 - k, 1, 1, 1}});
}
inline DefiningData m13e(long z) {
  return dd({{2 * z - 1}, {1, 1}, {1, 1}}, 0,
            {{-2 * z + 1, 1, 1, 0, 0}, {-2 * z + 1, 0, 0, 1, 1}, {0, 0, 1, 0, 1}, {2, 0, 0, 0, 0}});
}
inline DefiningData m13o(long z) {
  return dd({{2 * z - 2}, {2}, {1, 1}}, 0,
            {{-2 * z + 2, 2, 0, 0}, {-2 * z + 2, 0, 1, 1}, {0, 0, 0, 1}, {z, -1, 0, 0}});
}
inline DefiningData m14() {
  return dd({{3}, {3}, {1, 1}}, 0, {{-3, 3, 0, 0}, {-3, 0, 1, 1}, {0, 0, 0, 1}, {-1, 2, 0, 0}});
}

// Series with canonical multiplicity zeta > 1; ds holds d_0..d_r.
inline DefiningData m9(long z, long k, const std::vector<long>& ds) {
  std::size_t r = ds.size() - 1;
  long mu = 1;
  while ((1 - mu * k) % z != 0) ++mu;
  ExponentData e;
  e.blocks.push_back({Int(k), Int(k)});
  e.blocks.push_back({Int(z - k), Int(z - k)});
  for (std::size_t i = 2; i <= r; ++i) e.blocks.push_back({Int(1), Int(1)});
  IntMatrix d(2, e.cols());
  for (std::size_t i = 0; i <= r; ++i) d(0, 2 * i + 1) = ds[i];
  long base = (1 - mu * k) / z;
  d(1, 0) = d(1, 1) = base;
  d(1, 2) = d(1, 3) = base + mu;
  DefiningData out;
  out.exponents = e;
  out.d = d;
  return out;
}

// Random admissible operations: block permutations, swaps inside blocks, row operations on d.
inline DefiningData scramble(DefiningData d, std::mt19937& rng, int steps = 4) {
  for (int k = 0; k < steps; ++k) {
    switch (rng() % 4) {
      case 0: {
        std::vector<std::size_t> perm(d.exponents.block_count());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        d = cplx1::permute_blocks(d, perm);
        break;
      }
      case 1: {
        std::size_t blk = rng() % d.exponents.block_count();
        if (d.exponents.blocks[blk].size() > 1) d = cplx1::swap_in_block(d, blk, 0, 1);
        break;
      }
      case 2:
        if (d.r() > 0) d = cplx1::add_p0_row(d, rng() % d.s(), rng() % d.r(), Int(int(rng() % 5) - 2));
        break;
      default:
        if (d.s() > 1) d = cplx1::add_d_row(d, 0, 1, Int(int(rng() % 5) - 2));
    }
  }
  return d;
}

}  // namespace fx
