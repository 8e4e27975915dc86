#include "cplx1/acomplex.hpp"

#include "cplx1/gorenstein.hpp"
#include "cplx1/invariants.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace cplx1 {

namespace {

void require_affine_type2(const DefiningData& data, const char* op) {
  if (data.exponents.variant != 2) throw PreconditionError(std::string(op) + ": requires type 2 data");
  if (!affine_profile(data).pointed) throw PreconditionError(std::string(op) + ": X is not affine");
}

bool q_gorenstein(const DefiningData& data) {
  if (data.exponents.variant == 2) return gorenstein_data(data).q_gorenstein;
  RatVec w(data.exponents.cols(), Rat(-1));
  return solve_rational(data.p().transpose(), w).has_value();
}

RatCone column_cone(const DefiningData& data) { return cone_hull(data.p().col_list(), data.p().rows()); }

// Columns of the smallest face of sigma containing the given columns.
std::vector<std::size_t> face_closure(const RatCone& sigma, const std::vector<IntVec>& cols,
                                      const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> tight;
  for (std::size_t f = 0; f < sigma.facets.size(); ++f) {
    bool all = true;
    for (std::size_t k : idx)
      if (dot(sigma.facets[f], cols[k]) != 0) all = false;
    if (all) tight.push_back(f);
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    bool all = true;
    for (std::size_t f : tight)
      if (dot(sigma.facets[f], cols[k]) != 0) all = false;
    if (all) out.push_back(k);
  }
  return out;
}

std::vector<ElementaryCone> cones_with(const DefiningData& data, const RatCone& sigma) {
  const auto& e = data.exponents;
  std::vector<IntVec> cols = data.p().col_list();
  std::size_t nb = e.block_count();
  std::size_t r = data.r();
  std::vector<ElementaryCone> out;
  std::vector<std::size_t> choice(nb, 0);
  while (true) {
    ElementaryCone t;
    t.choice = choice;
    Int prod = 1;
    for (std::size_t i = 0; i < nb; ++i) prod *= e.blocks[i][choice[i]];
    t.ell = Int(1 - static_cast<long>(r)) * prod;
    t.v = IntVec(cols[0].size(), Int(0));
    for (std::size_t i = 0; i < nb; ++i) {
      std::size_t col = e.offset(i) + choice[i];
      t.columns.push_back(col);
      Int li = prod / e.blocks[i][choice[i]];
      t.ell_i.push_back(li);
      t.ell += li;
      for (std::size_t k = 0; k < t.v.size(); ++k) t.v[k] += li * cols[col][k];
    }
    if (!is_zero(t.v)) {
      t.c = gcd(t.v);
      if (t.ell > 0) {
        RatVec vp;
        for (const auto& x : t.v) vp.push_back(frac(x, t.ell));
        t.v_prime = vp;
      }
      std::vector<std::size_t> sorted = t.columns;
      std::sort(sorted.begin(), sorted.end());
      t.face = face_closure(sigma, cols, sorted) == sorted;
      out.push_back(std::move(t));
    }
    std::size_t i = 0;
    while (i < nb && ++choice[i] == e.blocks[i].size()) choice[i++] = 0;
    if (i == nb) break;
  }
  return out;
}

// Everything the lattice tests need, computed once.
struct Complex {
  RatCone sigma;
  std::vector<ElementaryCone> cones;
  std::vector<LeafRoof> roofs;  // leaves 0..r, then the lineality piece
  Int iota;
};

bool on_plane(const LeafRoof& roof, const RatVec& x) {
  Rat s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) s += roof.plane[k] * x[k];
  return s == Rat(roof.rhs);
}

// Cyclic order of the vertices of a polygon, by angle around the centroid in a
// coordinate projection that is injective on its plane.
std::vector<RatVec> cyclic_order(std::vector<RatVec> v) {
  if (v.size() <= 2) return v;
  std::size_t n = v[0].size();
  std::size_t p = 0, q = 0;
  bool found = false;
  for (std::size_t a = 0; a < n && !found; ++a)
    for (std::size_t b = a + 1; b < n && !found; ++b)
      for (std::size_t k = 2; k < v.size() && !found; ++k) {
        Rat m = (v[1][a] - v[0][a]) * (v[k][b] - v[0][b]) - (v[1][b] - v[0][b]) * (v[k][a] - v[0][a]);
        if (m != 0) {
          p = a;
          q = b;
          found = true;
        }
      }
  if (!found) throw std::logic_error("cyclic_order: points are collinear");
  Rat cx = 0, cy = 0;
  for (const auto& x : v) {
    cx += x[p];
    cy += x[q];
  }
  cx /= Rat(static_cast<long>(v.size()));
  cy /= Rat(static_cast<long>(v.size()));
  auto half = [&](const RatVec& x) {
    Rat dx = x[p] - cx, dy = x[q] - cy;
    return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
  };
  std::sort(v.begin(), v.end(), [&](const RatVec& a, const RatVec& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    Rat cross = (a[p] - cx) * (b[q] - cy) - (a[q] - cy) * (b[p] - cx);
    return cross > 0;
  });
  return v;
}

LeafRoof make_roof(std::optional<std::size_t> leaf, const GorensteinData& g, std::vector<RatVec> points,
                   const std::vector<RatVec>& claimed, const RatCone& sigma) {
  LeafRoof roof;
  roof.leaf = leaf;
  roof.rhs = g.iota;
  for (const auto& x : g.u) {
    Rat y = -x * Rat(g.iota);
    roof.plane.push_back(y.get_num());
  }
  for (const auto& x : points)
    if (!on_plane(roof, x)) throw std::logic_error("leaf_roofs: vertex " + to_string(x) + " off the roof plane");
  roof.roof = make_polytope(points);
  for (const auto& x : claimed)
    if (!std::binary_search(roof.roof.vertices.begin(), roof.roof.vertices.end(), x))
      throw std::logic_error("leaf_roofs: " + to_string(x) + " is not a vertex of its roof");
  roof.vertices = cyclic_order(roof.roof.vertices);
  for (const auto& x : lattice_points(roof.roof))
    if (contains(sigma, x, Region::relative_interior)) roof.interior_lattice_points.push_back(x);
  return roof;
}

Complex build_complex(const DefiningData& data, const char* op) {
  require_affine_type2(data, op);
  GorensteinData g0 = gorenstein_data(data, 0);
  if (!g0.q_gorenstein) throw PreconditionError(std::string(op) + ": X is not Q-Gorenstein");
  if (!is_platonic_ring(data.exponents)) throw PreconditionError(std::string(op) + ": X is not log terminal");
  if (data.s() > 2) throw UnsupportedError(std::string(op) + ": lattice tests need dimension at most 3");
  const auto& e = data.exponents;
  Complex cx;
  cx.iota = g0.iota;
  cx.sigma = column_cone(data);
  cx.cones = cones_with(data, cx.sigma);
  std::vector<RatVec> apex;  // v' of face cones, without repetition
  for (const auto& t : cx.cones) {
    if (!t.face) continue;
    if (!t.v_prime) throw std::logic_error(std::string(op) + ": elementary face with ell <= 0");
    if (std::find(apex.begin(), apex.end(), *t.v_prime) == apex.end()) apex.push_back(*t.v_prime);
  }
  std::vector<RatVec> top;  // every v', including non-face cones
  for (const auto& t : cx.cones)
    if (t.v_prime && std::find(top.begin(), top.end(), *t.v_prime) == top.end()) top.push_back(*t.v_prime);
  std::vector<RatVec> mcols;
  for (std::size_t j = e.n(); j < e.cols(); ++j) mcols.push_back(to_rat(data.column(j)));
  for (std::size_t i = 0; i < e.block_count(); ++i) {
    GorensteinData g = i == 0 ? gorenstein_data(data, 1) : g0;
    std::vector<RatVec> claimed = mcols;
    for (std::size_t j = 0; j < e.blocks[i].size(); ++j) claimed.push_back(to_rat(data.column(e.offset(i) + j)));
    claimed.insert(claimed.end(), apex.begin(), apex.end());
    std::vector<RatVec> pts = claimed;
    pts.insert(pts.end(), top.begin(), top.end());
    cx.roofs.push_back(make_roof(i, g, pts, claimed, cx.sigma));
  }
  std::vector<RatVec> claimed = mcols;
  claimed.insert(claimed.end(), apex.begin(), apex.end());
  std::vector<RatVec> pts = claimed;
  pts.insert(pts.end(), top.begin(), top.end());
  cx.roofs.push_back(make_roof(std::nullopt, g0, pts, claimed, cx.sigma));
  return cx;
}

// conv(0, roof) for a leaf.
RatPolytope leaf_piece(const LeafRoof& roof) {
  std::vector<RatVec> pts = roof.roof.vertices;
  pts.emplace_back(roof.roof.ambient, Rat(0));
  return make_polytope(pts);
}

void sort_unique(std::vector<IntVec>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string decimal(const Rat& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", q.get_d());
  return buf;
}

}  // namespace

std::vector<ElementaryCone> elementary_cones(const DefiningData& data) {
  require_affine_type2(data, "elementary_cones");
  return cones_with(data, column_cone(data));
}

std::vector<Discrepancy> discrepancies(const DefiningData& data) {
  require_affine_type2(data, "discrepancies");
  if (!q_gorenstein(data)) throw PreconditionError("discrepancies: X is not Q-Gorenstein");
  std::vector<Discrepancy> out;
  for (const auto& t : elementary_cones(data)) {
    Discrepancy d;
    d.choice = t.choice;
    d.ray = primitive(t.v);
    if (t.ell > 0) d.value = frac(t.ell, t.c) - 1;
    out.push_back(d);
  }
  return out;
}

bool is_log_terminal(const DefiningData& data) {
  if (!q_gorenstein(data)) throw PreconditionError("is_log_terminal: X is not Q-Gorenstein");
  if (data.exponents.variant == 1) return true;
  return is_platonic_ring(data.exponents);
}

std::vector<LeafRoof> leaf_roofs(const DefiningData& data) { return build_complex(data, "leaf_roofs").roofs; }

SingularityReport singularity_type(const DefiningData& data) {
  require_affine_type2(data, "singularity_type");
  if (!q_gorenstein(data)) throw PreconditionError("singularity_type: X is not Q-Gorenstein");
  SingularityReport rep;
  rep.log_terminal = is_platonic_ring(data.exponents);
  if (!*rep.log_terminal) return rep;
  Complex cx = build_complex(data, "singularity_type");
  std::vector<IntVec> cols = data.p().col_list();
  std::sort(cols.begin(), cols.end());
  IntVec zero(data.p().rows(), Int(0));
  std::vector<IntVec> below, extra, roof_inner;
  for (const auto& roof : cx.roofs) {
    roof_inner.insert(roof_inner.end(), roof.interior_lattice_points.begin(), roof.interior_lattice_points.end());
    if (!roof.leaf) continue;
    for (const auto& x : lattice_points(leaf_piece(roof))) {
      if (x == zero) continue;
      if (!on_plane(roof, to_rat(x))) below.push_back(x);
      if (!std::binary_search(cols.begin(), cols.end(), x)) extra.push_back(x);
    }
  }
  sort_unique(below);
  sort_unique(extra);
  sort_unique(roof_inner);
  rep.canonical = below.empty();
  rep.terminal = extra.empty();
  if (!below.empty()) rep.witnesses["canonical"] = below;
  if (!extra.empty()) rep.witnesses["terminal"] = extra;
  if (data.s() == 2 && cx.iota == 1) {
    rep.cdv = roof_inner.empty();
    if (!roof_inner.empty()) rep.witnesses["cdv"] = roof_inner;
  }
  return rep;
}

CdvResult is_cdv(const DefiningData& data) {
  require_affine_type2(data, "is_cdv");
  if (data.s() != 2) throw PreconditionError("is_cdv: X is not a threefold");
  Complex cx = build_complex(data, "is_cdv");
  if (cx.iota != 1) throw PreconditionError("is_cdv: X is not Gorenstein");
  CdvResult res;
  for (const auto& roof : cx.roofs)
    res.witnesses.insert(res.witnesses.end(), roof.interior_lattice_points.begin(),
                         roof.interior_lattice_points.end());
  sort_unique(res.witnesses);
  res.verdict = res.witnesses.empty();
  return res;
}

std::string export_complex(const DefiningData& data, ExportFormat format) {
  Complex cx = build_complex(data, "export_complex");
  std::vector<RatVec> verts;
  for (const auto& c : data.p().col_list()) verts.push_back(to_rat(c));
  for (const auto& t : cx.cones)
    if (t.face && std::find(verts.begin(), verts.end(), *t.v_prime) == verts.end()) verts.push_back(*t.v_prime);
  auto index = [&](const RatVec& x) {
    auto it = std::find(verts.begin(), verts.end(), x);
    if (it == verts.end()) throw std::logic_error("export_complex: unknown vertex");
    return static_cast<std::size_t>(it - verts.begin());
  };
  std::vector<std::vector<std::size_t>> faces;
  for (const auto& roof : cx.roofs) {
    if (roof.vertices.size() < 2) continue;
    std::vector<std::size_t> f;
    for (const auto& x : roof.vertices) f.push_back(index(x));
    faces.push_back(f);
  }
  std::size_t dim = data.p().rows();
  if (format == ExportFormat::off) {
    std::ostringstream os;
    if (dim == 3)
      os << "OFF\n";
    else
      os << "nOFF\n" << dim << "\n";
    os << verts.size() << " " << faces.size() << " 0\n";
    for (const auto& v : verts) {
      for (std::size_t k = 0; k < v.size(); ++k) os << (k ? " " : "") << decimal(v[k]);
      os << "\n";
    }
    for (const auto& f : faces) {
      os << f.size();
      for (std::size_t k : f) os << " " << k;
      os << "\n";
    }
    return os.str();
  }
  nlohmann::json j;
  j["ambient_dimension"] = dim;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : verts) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : v) row.push_back(to_string(x));
    j["vertices"].push_back(row);
  }
  j["faces"] = faces;
  j["pieces"] = nlohmann::json::array();
  for (const auto& roof : cx.roofs) {
    nlohmann::json p;
    if (roof.leaf)
      p["leaf"] = *roof.leaf;
    else
      p["leaf"] = "lineality";
    nlohmann::json plane = nlohmann::json::array();
    for (const auto& x : roof.plane) plane.push_back(x.get_str());
    p["plane"] = plane;
    p["rhs"] = roof.rhs.get_str();
    std::vector<std::size_t> idx;
    for (const auto& x : roof.vertices) idx.push_back(index(x));
    p["roof"] = idx;
    p["dimension"] = roof.roof.dimension;
    j["pieces"].push_back(p);
  }
  return j.dump(2);
}

}  // namespace cplx1
