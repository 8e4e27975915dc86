#include "cplx1/polyhedra.hpp"

#include <algorithm>
#include <stdexcept>

namespace cplx1 {

namespace {

IntVec combine(const Int& fa, const IntVec& a, const Int& fb, const IntVec& b) {
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = fa * a[i] - fb * b[i];
  return primitive(c);
}

IntVec negate(const IntVec& v) {
  IntVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
  return w;
}

bool subset(const std::vector<char>& a, const std::vector<char>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

}  // namespace

DDResult double_description(const std::vector<IntVec>& ineqs, const std::vector<IntVec>& eqs,
                            std::size_t dim) {
  std::vector<IntVec> L;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVec e(dim, Int(0));
    e[i] = 1;
    L.push_back(e);
  }
  std::vector<IntVec> R;
  std::vector<IntVec> done;  // processed inequalities

  auto process = [&](const IntVec& a, bool equality) {
    if (a.size() != dim) throw std::invalid_argument("double_description: constraint length");
    for (std::size_t k = 0; k < L.size(); ++k) {
      Int al0 = dot(a, L[k]);
      if (al0 == 0) continue;
      IntVec l0 = L[k];
      if (al0 < 0) {
        l0 = negate(l0);
        al0 = -al0;
      }
      L.erase(L.begin() + k);
      for (auto& l : L) {
        Int al = dot(a, l);
        if (al != 0) l = combine(al0, l, al, l0);
      }
      for (auto& r : R) {
        Int ar = dot(a, r);
        if (ar != 0) r = combine(al0, r, ar, l0);
      }
      if (!equality) {
        R.push_back(primitive(l0));
        done.push_back(a);
      }
      return;
    }
    std::vector<Int> s(R.size());
    for (std::size_t i = 0; i < R.size(); ++i) s[i] = dot(a, R[i]);
    std::vector<std::vector<char>> Z(R.size(), std::vector<char>(done.size(), 0));
    for (std::size_t i = 0; i < R.size(); ++i)
      for (std::size_t j = 0; j < done.size(); ++j) Z[i][j] = dot(done[j], R[i]) == 0;
    std::vector<IntVec> next;
    for (std::size_t i = 0; i < R.size(); ++i)
      if (s[i] == 0 || (!equality && s[i] > 0)) next.push_back(R[i]);
    for (std::size_t p = 0; p < R.size(); ++p) {
      if (s[p] <= 0) continue;
      for (std::size_t n = 0; n < R.size(); ++n) {
        if (s[n] >= 0) continue;
        std::vector<char> common(done.size());
        for (std::size_t j = 0; j < done.size(); ++j) common[j] = Z[p][j] && Z[n][j];
        bool adjacent = true;
        for (std::size_t q = 0; q < R.size() && adjacent; ++q)
          if (q != p && q != n && subset(common, Z[q])) adjacent = false;
        if (!adjacent) continue;
        IntVec c = combine(s[p], R[n], s[n], R[p]);
        if (!is_zero(c)) next.push_back(c);
      }
    }
    R = std::move(next);
    if (!equality) done.push_back(a);
  };

  for (const auto& e : eqs) process(e, true);
  for (const auto& a : ineqs) process(a, false);

  std::sort(R.begin(), R.end());
  R.erase(std::unique(R.begin(), R.end()), R.end());
  return {L, R};
}

std::vector<std::size_t> RatCone::tight_facets(const IntVec& x) const {
  std::vector<std::size_t> t;
  for (std::size_t i = 0; i < facets.size(); ++i)
    if (dot(facets[i], x) == 0) t.push_back(i);
  return t;
}

RatCone cone_hull(const std::vector<IntVec>& rays, std::size_t dim) {
  RatCone c;
  c.dim = dim;
  c.generators = rays;
  DDResult dual = double_description(rays, {}, dim);
  c.facets = dual.rays;
  c.equations = dual.lineality;
  std::vector<IntVec> all = c.equations;
  all.insert(all.end(), c.facets.begin(), c.facets.end());
  c.pointed = rank(all, dim) == dim;
  if (!c.pointed) return c;
  for (const auto& g : rays) {
    if (is_zero(g)) continue;
    std::vector<IntVec> t = c.equations;
    for (auto i : c.tight_facets(g)) t.push_back(c.facets[i]);
    if (rank(t, dim) + 1 != dim) continue;
    IntVec p = primitive(g);
    if (std::find(c.extremal_rays.begin(), c.extremal_rays.end(), p) == c.extremal_rays.end())
      c.extremal_rays.push_back(p);
  }
  return c;
}

bool contains(const RatCone& c, const RatVec& x, Region region) {
  if (x.size() != c.dim) throw std::invalid_argument("contains: dimension mismatch");
  for (const auto& e : c.equations)
    if (dot(e, x) != 0) return false;
  for (const auto& f : c.facets) {
    Rat v = dot(f, x);
    if (v < 0 || (region == Region::relative_interior && v == 0)) return false;
  }
  return true;
}

bool contains(const RatCone& c, const IntVec& x, Region region) {
  return contains(c, to_rat(x), region);
}

namespace {

RatVec homogenize(const RatVec& x) {
  RatVec h(x.size() + 1);
  h[0] = 1;
  std::copy(x.begin(), x.end(), h.begin() + 1);
  return h;
}

}  // namespace

bool RatPolytope::contains(const RatVec& x, Region region) const {
  if (x.size() != ambient) throw std::invalid_argument("contains: dimension mismatch");
  RatVec h = homogenize(x);
  for (const auto& e : equations)
    if (dot(e, h) != 0) return false;
  for (const auto& f : facets) {
    Rat v = dot(f, h);
    if (v < 0 || (region == Region::relative_interior && v == 0)) return false;
  }
  return true;
}

RatPolytope make_polytope(const std::vector<RatVec>& points) {
  if (points.empty()) throw std::invalid_argument("make_polytope: no points");
  RatPolytope p;
  p.ambient = points[0].size();
  std::vector<IntVec> hom;
  for (const auto& x : points) {
    if (x.size() != p.ambient) throw std::invalid_argument("make_polytope: dimension mismatch");
    hom.push_back(clear_denominators(homogenize(x)));
  }
  RatCone c = cone_hull(hom, p.ambient + 1);
  p.facets = c.facets;
  p.equations = c.equations;
  p.dimension = c.cone_dim() - 1;
  for (const auto& r : c.extremal_rays) {
    RatVec v(p.ambient);
    for (std::size_t i = 0; i < p.ambient; ++i) v[i] = frac(r[i + 1], r[0]);
    p.vertices.push_back(v);
  }
  std::sort(p.vertices.begin(), p.vertices.end());
  return p;
}

namespace {

Int floor_q(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int ceil_q(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

std::vector<IntVec> lattice_points(const RatPolytope& p, Region region) {
  if (p.dimension > 3) throw std::invalid_argument("lattice_points: dimension > 3 unsupported");
  const std::size_t n = p.ambient;
  // affine hull: f.x = -c
  IntMatrix E(p.equations.size(), n);
  IntVec b(p.equations.size());
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    b[i] = -p.equations[i][0];
    for (std::size_t j = 0; j < n; ++j) E(i, j) = p.equations[i][j + 1];
  }
  std::optional<IntVec> x0;
  std::vector<IntVec> W;
  if (p.equations.empty()) {
    x0 = IntVec(n, Int(0));
    for (std::size_t i = 0; i < n; ++i) {
      IntVec e(n, Int(0));
      e[i] = 1;
      W.push_back(e);
    }
  } else {
    x0 = solve_integer(E, b);
    if (!x0) return {};
    W = integer_kernel(E);
  }
  const std::size_t k = W.size();
  if (k != p.dimension) throw std::logic_error("lattice_points: affine hull mismatch");

  IntMatrix Wm(n, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) Wm(i, j) = W[j][i];
  std::vector<Int> lo(k), hi(k);
  bool first = true;
  for (const auto& v : p.vertices) {
    RatVec rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = v[i] - (*x0)[i];
    auto c = solve_rational(Wm, rhs);
    if (!c) throw std::logic_error("lattice_points: vertex off the affine hull");
    for (std::size_t j = 0; j < k; ++j) {
      Int f = floor_q((*c)[j]), g = ceil_q((*c)[j]);
      if (first || f < lo[j]) lo[j] = f;
      if (first || g > hi[j]) hi[j] = g;
    }
    first = false;
  }

  std::vector<IntVec> out;
  std::vector<Int> c(lo);
  for (;;) {
    IntVec x = *x0;
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) x[i] += c[j] * W[j][i];
    if (p.contains(to_rat(x), region)) out.push_back(x);
    std::size_t j = 0;
    while (j < k) {
      if (c[j] < hi[j]) {
        ++c[j];
        break;
      }
      c[j] = lo[j];
      ++j;
    }
    if (j == k) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cplx1
