#pragma once

#include "cplx1/data.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cplx1 {

using Params = std::map<std::string, long>;

struct ParamSpec {
  std::string name;
  long min = 1;
  long default_max = 6;  // upper end of the default sweep
};

struct RegistryEntry {
  std::string id;
  std::vector<ParamSpec> params;    // for "9": z, k, r, d0..dr, erase2, erase4
  bool toric = false;
  std::string cdv_type;             // label of the classification table, metadata only
  std::string equation;             // metadata only
  std::optional<std::vector<std::string>> chain_expectation;  // RingState::str() per state
};

const std::vector<RegistryEntry>& registry();
const RegistryEntry& registry_entry(const std::string& id);  // PreconditionError if unknown

struct Instance {
  std::string id;
  Params params;
  std::optional<DefiningData> data;  // complexity one families
  std::optional<IntMatrix> cone;     // toric families: columns generate the cone
};

// Throws PreconditionError on unknown ids, missing or out-of-range params.
Instance instantiate(const std::string& id, const Params& params = {});

struct NearMiss {
  std::string name;
  DefiningData data;
  IntVec witness;  // lattice point in the interior of the roof
};

std::vector<NearMiss> near_misses();

// Toric cDV test: generators at height one spanning a hollow polygon.
bool toric_cdv(const IntMatrix& cone);

struct InstanceCheck {
  Params params;
  bool ok = true;
  std::string failure;  // first failed assertion
};

struct FamilyReport {
  std::string id;
  std::vector<InstanceCheck> instances;
  std::optional<InstanceCheck> first_failure;
  bool passed() const { return !first_failure; }
};

// Upper bounds per parameter name; missing names use the entry default.
using ParamBounds = std::map<std::string, long>;

// All valid parameter choices inside the bounds, in a fixed order.
std::vector<Params> parameter_grid(const std::string& id, const ParamBounds& bounds = {});

InstanceCheck check_instance(const std::string& id, const Params& params);

enum class Exec { serial, parallel };

// Stops collecting at the first failure in grid order.
FamilyReport verify_family(const std::string& id, const ParamBounds& bounds = {}, Exec exec = Exec::parallel);

struct Fingerprint {
  std::string exponents;      // normalized exponent data
  std::string class_group;
  std::string zeta;
  std::vector<std::string> discrepancies;  // sorted multiset
  std::vector<std::size_t> roof_points;    // roof lattice point count per piece, sorted
  bool operator==(const Fingerprint&) const = default;
  std::string str() const;
};

// Requires a Gorenstein log terminal affine threefold of type 2.
Fingerprint fingerprint(const DefiningData& data);

struct SearchHit {
  DefiningData data;
  Fingerprint fp;
  std::vector<std::string> matches;  // registry instances with the same fingerprint
};

struct SearchReport {
  std::size_t candidates = 0;
  std::size_t gorenstein = 0;  // affine, valid, iota = 1
  std::vector<SearchHit> hits;  // cDV survivors
  std::size_t unmatched() const;
};

// Exponent shapes of the search: platonic, entries <= 6, four columns.
std::vector<ExponentData> search_shapes();

// 4x4 matrices over the given shapes (all when empty), d entries in [-bound, bound].
SearchReport search(long bound, Exec exec = Exec::parallel, const std::vector<ExponentData>& shapes = {});

}  // namespace cplx1
