#include "cplx1/coxiter.hpp"

#include "cplx1/invariants.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace cplx1 {

namespace {

Int gcd2(const Int& a, const Int& b) { return gcd(IntVec{a, b}); }

IntVec ones(std::size_t n) { return IntVec(n, Int(1)); }

IntVec divided(const IntVec& v, const Int& g) {
  IntVec out;
  for (const auto& x : v) out.push_back(x / g);
  return out;
}

// Closed-form generator matrix of the saturated lattice; the caller guarantees gcd(fl1, fl2) = gcd(fl0, fl1, fl2).
IntMatrix lemma_p1(const ExponentData& e) {
  std::size_t r = e.r();
  IntVec fl;
  for (const auto& b : e.blocks) fl.push_back(gcd(b));
  IntMatrix p(r, e.cols());
  std::array<Int, 3> g{Int(0), gcd2(fl[0], fl[1]), gcd2(fl[0], fl[2])};
  for (std::size_t row = 0; row < r; ++row) {
    std::size_t i = row + 1;
    Int f = i <= 2 ? g[i] : Int(1);
    for (std::size_t j = 0; j < e.blocks[0].size(); ++j) p(row, j) = -e.blocks[0][j] / f;
    for (std::size_t j = 0; j < e.blocks[i].size(); ++j)
      p(row, e.offset(i) + j) = i <= 2 ? e.blocks[i][j] / f : Int(1);
  }
  return p;
}

}  // namespace

ExponentData order_blocks(const ExponentData& data, std::vector<std::size_t>* perm) {
  ExponentData e = data;
  for (auto& b : e.blocks) std::sort(b.begin(), b.end(), std::greater<>());
  std::vector<std::size_t> p(e.block_count());
  std::iota(p.begin(), p.end(), 0);
  std::stable_sort(p.begin(), p.end(),
                   [&](std::size_t a, std::size_t b) { return block_less(e.blocks[a], e.blocks[b]); });
  if (perm) *perm = p;
  return permute_blocks(e, p);
}

IterationStep iterate_step(const ExponentData& data) {
  if (data.variant != 2) throw PreconditionError("iterate_step: requires type 2 data");
  if (data.block_count() < 3) throw PreconditionError("iterate_step: no relations");
  if (!is_platonic_ring(data)) throw PreconditionError("iterate_step: ring is not platonic");
  if (is_factorial(data)) throw PreconditionError("iterate_step: ring is factorial");
  IterationStep st;
  std::vector<std::size_t> order;
  ExponentData e = order_blocks(data, &order);
  st.input = e;
  // choose blocks 1, 2 with gcd equal to the gcd of the leading three
  IntVec fl;
  for (const auto& b : e.blocks) fl.push_back(gcd(b));
  Int g3 = gcd(IntVec{fl[0], fl[1], fl[2]});
  std::vector<std::size_t> lead{0, 1, 2};
  bool found = false;
  for (std::size_t zero = 0; zero < 3 && !found; ++zero) {
    std::size_t a = zero == 0 ? 1 : 0, b = zero == 2 ? 1 : 2;
    if (gcd2(fl[a], fl[b]) == g3) {
      lead = {zero, a, b};
      found = true;
    }
  }
  std::vector<std::size_t> perm(e.block_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::copy(lead.begin(), lead.end(), perm.begin());
  e = permute_blocks(e, perm);
  st.block_permutation.resize(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) st.block_permutation[k] = order[perm[k]];

  IntMatrix sat = saturation(e.p0());
  if (found) {
    st.p1 = lemma_p1(e);
    st.p1_source = "lemma";
    if (hermite_form(st.p1) != hermite_form(sat))
      throw std::logic_error("iterate_step: lemma matrix differs from the saturated lattice");
  } else {
    st.p1 = sat;
    st.p1_source = "saturation";
  }
  st.raw_output.variant = 2;
  st.raw_output.m = e.m;
  for (std::size_t i = 0; i < e.block_count(); ++i) {
    Int c = component_count(e, i);
    st.c.push_back(c);
    IntVec block;
    for (std::size_t j = 0; j < e.blocks[i].size(); ++j) block.push_back(gcd(st.p1.col(e.offset(i) + j)));
    for (Int k = 0; k < c; ++k) st.raw_output.blocks.push_back(block);
  }
  st.input = e;
  st.normalized_output = normalize(st.raw_output).state;
  return st;
}

Chain iterate_chain(const ExponentData& start, int max_steps) {
  if (start.variant != 2) throw PreconditionError("iterate_chain: requires type 2 data");
  Chain ch;
  RingState s = normalize(start).state;
  if (!s.polynomial && !is_platonic_ring(s.data)) throw PreconditionError("iterate_chain: ring is not platonic");
  ch.states.push_back(s);
  while (!is_factorial(s)) {
    if (static_cast<int>(ch.steps.size()) >= max_steps)
      throw std::runtime_error("iterate_chain: no factorial ring after " + std::to_string(max_steps) + " steps");
    IterationStep st = iterate_step(s.data);
    s = st.normalized_output;
    ch.steps.push_back(std::move(st));
    ch.states.push_back(s);
  }
  ch.terminal = s.polynomial ? "polynomial" : "factorial";
  return ch;
}

Chain iterate_chain(const DefiningData& start, int max_steps) {
  return iterate_chain(cox_exponents(start), max_steps);
}

ExponentData ithelp_oracle(const ExponentData& data) {
  if (data.block_count() < 3) throw std::logic_error("ithelp_oracle: no relations");
  ExponentData e = data;
  const auto& b = e.blocks;
  std::array<Int, 3> t{b[0][0], b[1][0], b[2][0]};
  IntVec fl;
  for (const auto& x : b) fl.push_back(gcd(x));
  ExponentData out;
  out.variant = 2;
  out.m = e.m;
  auto push = [&](const IntVec& v, long times = 1) {
    for (long k = 0; k < times; ++k) out.blocks.push_back(v);
  };
  auto tail = [&](long times) {
    for (std::size_t i = 3; i < b.size(); ++i) push(ones(b[i].size()), times);
  };
  if (t == std::array<Int, 3>{4, 3, 2}) {
    push(b[1], 2);
    push(divided(b[0], 2));
    push(ones(b[2].size()));
    tail(2);
  } else if (t == std::array<Int, 3>{3, 3, 2}) {
    push(b[2], 3);
    push(ones(b[0].size()));
    push(ones(b[1].size()));
    tail(3);
  } else if (t[1] == 2 && t[2] == 2) {
    Int g3 = gcd(IntVec{fl[0], fl[1], fl[2]});
    if (g3 == 2) {
      push(divided(b[0], 2), 2);
      push(ones(b[1].size()), 2);
      push(ones(b[2].size()));
      tail(4);
    } else if (fl[0] % 2 != 0) {
      push(b[0], 2);
      push(ones(b[1].size()));
      push(ones(b[2].size()));
      tail(2);
    } else if (fl[1] == 1 || fl[2] == 1) {
      // the table names the block with gcd one as block 2
      std::size_t one = fl[2] == 1 ? 2 : 1, two = 3 - one;
      push(divided(b[0], 2));
      push(b[one], 2);
      push(ones(b[two].size()));
      tail(2);
    } else {
      throw std::logic_error("ithelp_oracle: no row for " + e.str());
    }
  } else if (t[2] == 1) {
    Int g = gcd2(fl[0], fl[1]);
    push(divided(b[0], g));
    push(divided(b[1], g));
    for (std::size_t i = 2; i < b.size(); ++i) push(ones(b[i].size()), g.get_si());
  } else {
    throw std::logic_error("ithelp_oracle: no row for " + e.str());
  }
  return out;
}

}  // namespace cplx1
