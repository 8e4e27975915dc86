#include "cplx1/invariants.hpp"

#include <algorithm>
#include <stdexcept>

namespace cplx1 {

namespace {

void require_type2(const ExponentData& e, const char* what) {
  if (e.variant != 2) throw PreconditionError(std::string(what) + ": type 2 data required");
  if (e.block_count() < 2) throw PreconditionError(std::string(what) + ": at least two blocks required");
}

Int gcd2(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

InvariantProfile profile(const ExponentData& e) {
  require_type2(e, "profile");
  InvariantProfile p;
  const std::size_t k = e.block_count();
  for (const auto& b : e.blocks) p.frakl_i.push_back(gcd(b));
  p.frakl = gcd(p.frakl_i);
  p.frakl_ij.assign(k, IntVec(k, Int(0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) p.frakl_ij[i][j] = gcd2(p.frakl_i[i] / p.frakl, p.frakl_i[j] / p.frakl);
  p.lbar = lcm(p.frakl_i);
  for (std::size_t i = 0; i < k; ++i) p.b.push_back(p.lbar / p.frakl_i[i]);
  for (std::size_t i = 0; i < k; ++i) {
    Int g = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) g = gcd2(g, p.b[j]);
    p.b_of_i.push_back(g);
  }
  return p;
}

bool is_platonic_tuple(const IntVec& t) {
  if (t.empty()) throw std::invalid_argument("is_platonic_tuple: empty tuple");
  Rat s = 0;
  for (const auto& x : t) {
    if (x < 1) throw std::invalid_argument("is_platonic_tuple: entries must be positive");
    s += Rat(1) / Rat(x);
  }
  return s > Rat(static_cast<long>(t.size()) - 2);
}

bool is_platonic_ring(const ExponentData& e) {
  require_type2(e, "is_platonic_ring");
  IntVec maxima;
  for (const auto& b : e.blocks) maxima.push_back(*std::max_element(b.begin(), b.end()));
  return is_platonic_tuple(maxima);
}

bool is_factorial(const ExponentData& e) {
  IntVec f;
  for (const auto& b : e.blocks) f.push_back(gcd(b));
  if (e.variant == 1) return std::all_of(f.begin(), f.end(), [](const Int& x) { return x == 1; });
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (gcd2(f[i], f[j]) != 1) return false;
  return true;
}

bool is_factorial(const RingState& s) { return s.polynomial || is_factorial(s.data); }

Int genus(const ExponentData& e) {
  InvariantProfile p = profile(e);
  Int prod = 1;
  for (const auto& x : p.frakl_i) prod *= x;
  Rat sum = 0;
  for (std::size_t i = 0; i < p.frakl_i.size(); ++i) sum += frac(p.b_of_i[i], p.frakl_i[i]);
  Rat r1 = Rat(static_cast<long>(e.r()) - 1);
  Rat g = frac(prod, 2 * p.lbar) * (r1 - sum) + 1;
  if (g.get_den() != 1 || g < 0) throw std::logic_error("genus: non-integral or negative value " + to_string(g));
  return g.get_num();
}

bool is_total_space_rational(const ExponentData& e) {
  InvariantProfile p = profile(e);
  const std::size_t k = p.frakl_i.size();
  auto g = [&](std::size_t a, std::size_t b) { return gcd2(p.frakl_i[a], p.frakl_i[b]); };
  // all pairs outside the given index set coprime
  auto coprime_outside = [&](const std::vector<std::size_t>& keep) {
    for (std::size_t u = 0; u < k; ++u)
      for (std::size_t v = u + 1; v < k; ++v) {
        bool inside = std::find(keep.begin(), keep.end(), u) != keep.end() &&
                      std::find(keep.begin(), keep.end(), v) != keep.end();
        if (!inside && g(u, v) != 1) return false;
      }
    return true;
  };
  if (coprime_outside({})) return true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (g(i, j) > 1 && coprime_outside({i, j})) return true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l)
        if (g(i, j) == 2 && g(i, l) == 2 && g(j, l) == 2 && coprime_outside({i, j, l})) return true;
  return false;
}

IntVec k0_torsion(const ExponentData& e) {
  require_type2(e, "k0_torsion");
  return cokernel_structure(e.p0().transpose()).torsion;
}

IntVec k0_torsion_trinomial(const Int& l0, const Int& l1, const Int& l2) {
  Int l = gcd2(gcd2(l0, l1), l2);
  Int a = gcd2(l0 / l, l1 / l), b = gcd2(l0 / l, l2 / l), c = gcd2(l1 / l, l2 / l);
  IntVec out;
  for (const Int& x : {l, Int(l * a * b * c)})
    if (x > 1) out.push_back(x);
  return out;
}

Int component_count(const ExponentData& e, std::size_t block) {
  require_type2(e, "component_count");
  if (block >= e.block_count()) throw std::out_of_range("component_count: block index");
  IntVec f;
  for (std::size_t i = 0; i < e.block_count(); ++i)
    if (i != block) f.push_back(gcd(e.blocks[i]));
  if (f.size() < 2) return 1;
  IntMatrix m(f.size() - 1, f.size());
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    m(i, 0) = -f[0];
    m(i, i + 1) = f[i + 1];
  }
  Int prod = 1;
  for (const auto& d : invariant_factors(m)) prod *= d;
  return prod;
}

}  // namespace cplx1
