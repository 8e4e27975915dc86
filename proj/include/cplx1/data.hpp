#pragma once

#include "cplx1/linalg.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cplx1 {

struct ValidationIssue {
  std::string code;  // shape, exponent, blocks, rank, primitive, duplicate, A, format
  std::string message;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  ValidationError(const std::string& code, const std::string& message);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the implemented scope.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exponent vectors l_i of the relations and the number m of free variables.
struct ExponentData {
  int variant = 2;
  std::vector<IntVec> blocks;
  long m = 0;

  std::size_t block_count() const { return blocks.size(); }
  std::size_t n() const;
  // Number of P0 rows: blocks-1 (variant 2) or blocks (variant 1).
  std::size_t r() const;
  std::size_t cols() const { return n() + static_cast<std::size_t>(m); }
  std::size_t offset(std::size_t block) const;  // first column of a block
  std::size_t block_of(std::size_t col) const;  // block count() for free columns
  long ring_dimension() const;                  // n + m + 1 - r, both variants
  IntMatrix p0() const;
  bool operator==(const ExponentData&) const = default;
  std::string str() const;
};

// Result of normalizing exponent data: a ring or a polynomial ring marker.
struct RingState {
  bool polynomial = false;
  long dimension = 0;
  ExponentData data;  // meaningful when !polynomial
  bool operator==(const RingState& o) const;
  std::string str() const;
};

// Full defining data P = [P0; d] (and optional coefficient data A).
struct DefiningData {
  ExponentData exponents;
  IntMatrix d;
  std::optional<std::vector<RatVec>> A;

  std::size_t r() const { return exponents.r(); }
  std::size_t s() const { return d.rows(); }
  IntMatrix p() const;
  IntVec column(std::size_t j) const;
  // Rebuild from a full matrix; the leading rows must equal P0.
  static DefiningData from_matrix(const ExponentData& e, const IntMatrix& p);
  bool operator==(const DefiningData& o) const {
    return exponents == o.exponents && d == o.d && A == o.A;
  }
};

using ClassGroupDesc = Cokernel;

// Parsing (throws ValidationError with code "format" on malformed input).
DefiningData parse_defining_data(const std::string& text);
DefiningData defining_data_from_json(const nlohmann::json& j);
ExponentData exponent_data_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DefiningData& data);
nlohmann::json to_json(const ExponentData& data);

std::vector<ValidationIssue> validate(const DefiningData& data);
std::vector<ValidationIssue> validate(const ExponentData& data);
// Parse and validate; throws ValidationError.
DefiningData parse_validate(const std::string& text);

struct NormalizedExponents {
  RingState state;
  std::vector<std::string> log;
};

struct NormalizedData {
  bool polynomial = false;
  long dimension = 0;
  DefiningData data;
  std::vector<std::string> log;
};

NormalizedExponents normalize(const ExponentData& data);
NormalizedData normalize(const DefiningData& data);
bool block_less(const IntVec& a, const IntVec& b);  // order used by normalize

// Admissible operations.
DefiningData permute_blocks(const DefiningData& data, const std::vector<std::size_t>& perm);
DefiningData swap_in_block(const DefiningData& data, std::size_t block, std::size_t j, std::size_t k);
// d row `row` += f * P0 row `p0_row`.
DefiningData add_p0_row(const DefiningData& data, std::size_t row, std::size_t p0_row, const Int& f);
// d row `row` += f * d row `other`.
DefiningData add_d_row(const DefiningData& data, std::size_t row, std::size_t other, const Int& f);
ExponentData permute_blocks(const ExponentData& e, const std::vector<std::size_t>& perm);

ClassGroupDesc class_group(const DefiningData& data);

struct AffineProfile {
  bool pointed = false;
  bool q_factorial = false;
};
AffineProfile affine_profile(const DefiningData& data);

// Exponent data of the Cox ring R(A, P0).
ExponentData cox_exponents(const DefiningData& data);

// Default A: (1, i) for variant 2, i for variant 1.
std::vector<RatVec> default_A(const ExponentData& e);

}  // namespace cplx1
