#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace cplx1 {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVec row(std::size_t i) const;
  IntVec col(std::size_t j) const;
  std::vector<IntVec> row_list() const;
  std::vector<IntVec> col_list() const;
  void set_row(std::size_t i, const IntVec& v);
  void append_row(const IntVec& v);
  void erase_row(std::size_t i);
  void erase_col(std::size_t j);
  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row i += f * row j
  void add_row(std::size_t i, std::size_t j, const Int& f);
  void add_col(std::size_t i, std::size_t j, const Int& f);

  IntMatrix transpose() const;
  IntMatrix select_cols(const std::vector<std::size_t>& idx) const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;

  bool operator==(const IntMatrix& o) const;
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> a_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVec operator*(const IntMatrix& a, const IntVec& x);

// U * M * V = diag(diag); U, V unimodular.
struct SmithForm {
  IntVec diag;  // nonzero invariant factors, divisibility chain
  IntMatrix U;
  IntMatrix V;
  IntMatrix V_inv;
};

SmithForm smith_form(const IntMatrix& m);
IntVec invariant_factors(const IntMatrix& m);

// Z^rows / image of Z^cols.
struct Cokernel {
  std::size_t free_rank = 0;
  IntVec torsion;  // invariant factors > 1
  bool operator==(const Cokernel&) const = default;
};
Cokernel cokernel_structure(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);
std::size_t rank(const std::vector<IntVec>& rows, std::size_t cols);

// One solution of m x = b over Q (free variables zero), or nullopt.
std::optional<RatVec> solve_rational(const IntMatrix& m, const RatVec& b);
// One solution of m x = b over Z, or nullopt.
std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& b);

// Row-style Hermite normal form with zero rows removed.
IntMatrix hermite_form(const IntMatrix& m);
// Basis of (Q-row-span of m) ∩ Z^cols.
IntMatrix saturation(const IntMatrix& m);
// Basis of {x in Z^cols : m x = 0}.
std::vector<IntVec> integer_kernel(const IntMatrix& m);
// Unimodular matrix whose last row is the primitive vector v.
IntMatrix unimodular_completion(const IntVec& v);

Int gcd(const IntVec& v);
Int lcm(const IntVec& v);
Int dot(const IntVec& a, const IntVec& b);
Rat dot(const IntVec& a, const RatVec& b);
bool is_zero(const IntVec& v);
// Throws std::invalid_argument for the zero vector.
bool is_primitive(const IntVec& v);
IntVec primitive(const IntVec& v);
// Smallest positive multiple that is integral.
IntVec clear_denominators(const RatVec& v);
RatVec to_rat(const IntVec& v);
// Canonical n/d (the two-argument mpq_class constructor does not reduce).
Rat frac(const Int& n, const Int& d);
Int common_denominator(const RatVec& v);

std::string to_string(const Rat& q);
std::string to_string(const IntVec& v);
std::string to_string(const RatVec& v);

}  // namespace cplx1
