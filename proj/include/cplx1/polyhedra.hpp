#pragma once

#include "cplx1/linalg.hpp"

#include <cstddef>
#include <vector>

namespace cplx1 {

// {y : a.y >= 0 for a in ineqs, e.y = 0 for e in eqs} = lin(lineality) + cone(rays).
struct DDResult {
  std::vector<IntVec> lineality;
  std::vector<IntVec> rays;  // primitive, irredundant modulo lineality
};
DDResult double_description(const std::vector<IntVec>& ineqs, const std::vector<IntVec>& eqs,
                            std::size_t dim);

// Cone generated by integer rays, in both descriptions.
struct RatCone {
  std::size_t dim = 0;
  std::vector<IntVec> generators;
  std::vector<IntVec> facets;     // inward normals, f.x >= 0
  std::vector<IntVec> equations;  // e.x = 0 on the cone
  std::vector<IntVec> extremal_rays;
  bool pointed = false;
  std::size_t cone_dim() const { return dim - equations.size(); }
  // Tight normals (facets with f.x = 0).
  std::vector<std::size_t> tight_facets(const IntVec& x) const;
};

RatCone cone_hull(const std::vector<IntVec>& rays, std::size_t dim);

enum class Region { closed, relative_interior };

bool contains(const RatCone& c, const RatVec& x, Region region = Region::closed);
bool contains(const RatCone& c, const IntVec& x, Region region = Region::closed);

// Convex hull of finitely many rational points.
struct RatPolytope {
  std::size_t ambient = 0;
  std::size_t dimension = 0;
  std::vector<RatVec> vertices;
  // Homogenized: (c, f) means c + f.x >= 0, resp. = 0.
  std::vector<IntVec> facets;
  std::vector<IntVec> equations;
  bool contains(const RatVec& x, Region region = Region::closed) const;
};

RatPolytope make_polytope(const std::vector<RatVec>& points);

// Lattice points of a polytope of dimension <= 3 (any ambient dimension), sorted.
std::vector<IntVec> lattice_points(const RatPolytope& p, Region region = Region::closed);

}  // namespace cplx1
