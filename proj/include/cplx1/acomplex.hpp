#pragma once

#include "cplx1/data.hpp"
#include "cplx1/polyhedra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cplx1 {

// Cone over one column from each block.
struct ElementaryCone {
  std::vector<std::size_t> choice;   // j_i per block
  std::vector<std::size_t> columns;  // global column indices
  IntVec ell_i;                      // product of the l_{k j_k} over k != i
  Int ell;                           // (1-r) prod l + sum ell_i
  IntVec v;                          // sum ell_i v_{i j_i}
  Int c;                             // gcd of v
  std::optional<RatVec> v_prime;     // v / ell when ell > 0
  bool face = false;                 // a face of the cone over the columns
};

// Requires type 2 and an affine X. Choices with v = 0 are skipped.
std::vector<ElementaryCone> elementary_cones(const DefiningData& data);

struct Discrepancy {
  std::vector<std::size_t> choice;
  IntVec ray;                 // primitive generator
  std::optional<Rat> value;   // nullopt means at most -1
};

// Requires Q-Gorenstein.
std::vector<Discrepancy> discrepancies(const DefiningData& data);

// Type 1: always true. Type 2: the Cox ring is platonic. Requires Q-Gorenstein.
bool is_log_terminal(const DefiningData& data);

// Roof over a leaf, or over the lineality part when leaf is empty.
struct LeafRoof {
  std::optional<std::size_t> leaf;
  IntVec plane;  // plane.x = rhs on the roof, plane.x < rhs below it
  Int rhs;
  std::vector<RatVec> vertices;  // cyclic order for polygons
  RatPolytope roof;
  std::vector<IntVec> interior_lattice_points;  // roof lattice points inside the open cone
};

// Requires type 2, affine, Q-Gorenstein, log terminal, s <= 2.
std::vector<LeafRoof> leaf_roofs(const DefiningData& data);

struct SingularityReport {
  std::optional<bool> log_terminal;
  std::optional<bool> canonical;
  std::optional<bool> terminal;
  std::optional<bool> cdv;
  std::map<std::string, std::vector<IntVec>> witnesses;
};

// Requires type 2, affine, Q-Gorenstein; the lattice tests require s <= 2.
SingularityReport singularity_type(const DefiningData& data);

struct CdvResult {
  bool verdict = false;
  std::vector<IntVec> witnesses;
};

// Requires an affine Gorenstein log terminal threefold of type 2.
CdvResult is_cdv(const DefiningData& data);

enum class ExportFormat { json, off };
std::string export_complex(const DefiningData& data, ExportFormat format);

}  // namespace cplx1
