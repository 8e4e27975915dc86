#include "cplx1/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cplx1 {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long x : r) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVec IntMatrix::row(std::size_t i) const {
  return IntVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

IntVec IntMatrix::col(std::size_t j) const {
  IntVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<IntVec> IntMatrix::row_list() const {
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

std::vector<IntVec> IntMatrix::col_list() const {
  std::vector<IntVec> out;
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(col(j));
  return out;
}

void IntMatrix::set_row(std::size_t i, const IntVec& v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  std::copy(v.begin(), v.end(), a_.begin() + i * cols_);
}

void IntMatrix::append_row(const IntVec& v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  a_.insert(a_.end(), v.begin(), v.end());
  ++rows_;
}

void IntMatrix::erase_row(std::size_t i) {
  a_.erase(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  --rows_;
}

void IntMatrix::erase_col(std::size_t j) {
  std::vector<Int> b;
  b.reserve(rows_ * (cols_ - 1));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (k != j) b.push_back((*this)(i, k));
  a_ = std::move(b);
  --cols_;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Int& f) {
  if (f == 0) return;
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += f * (*this)(j, k);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Int& f) {
  if (f == 0) return;
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += f * (*this)(k, j);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) m.set_row(i, row(idx[i]));
  return m;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << to_string(row(i));
  }
  os << ']';
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntVec operator*(const IntMatrix& a, const IntVec& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  IntVec y(a.rows(), Int(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

namespace {

// Smallest nonzero |entry| in the block rows >= t, cols >= t.
bool find_pivot(const IntMatrix& a, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Int& x = a(i, j);
      if (x == 0) continue;
      if (!found || abs(x) < best) {
        best = abs(x);
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t R = m.rows(), C = m.cols();
  IntMatrix U = IntMatrix::identity(R);
  IntMatrix V = IntMatrix::identity(C);
  IntMatrix Vi = IntMatrix::identity(C);

  auto col_swap = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    V.swap_cols(i, j);
    Vi.swap_rows(i, j);
  };
  // col i += f * col j
  auto col_add = [&](std::size_t i, std::size_t j, const Int& f) {
    a.add_col(i, j, f);
    V.add_col(i, j, f);
    Vi.add_row(j, i, -f);
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    U.swap_rows(i, j);
  };
  auto row_add = [&](std::size_t i, std::size_t j, const Int& f) {
    a.add_row(i, j, f);
    U.add_row(i, j, f);
  };

  std::size_t t = 0;
  for (; t < std::min(R, C); ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(a, t, pi, pj)) break;
    row_swap(t, pi);
    col_swap(t, pj);
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a(i, t) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        row_add(i, t, -q);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a(t, j) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        col_add(j, t, -q);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // move the smallest remainder in row/column t to the pivot
        std::size_t bi = t, bj = t;
        Int best = abs(a(t, t));
        for (std::size_t i = t + 1; i < R; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < best) { best = abs(a(i, t)); bi = i; bj = t; }
        for (std::size_t j = t + 1; j < C; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < best) { best = abs(a(t, j)); bi = t; bj = j; }
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      // divisibility of the remaining block
      bool fixed = false;
      for (std::size_t i = t + 1; i < R && !fixed; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            row_add(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < C; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < R; ++j) U(t, j) = -U(t, j);
    }
  }
  SmithForm s;
  for (std::size_t i = 0; i < t; ++i) s.diag.push_back(a(i, i));
  s.U = std::move(U);
  s.V = std::move(V);
  s.V_inv = std::move(Vi);
  return s;
}

IntVec invariant_factors(const IntMatrix& m) { return smith_form(m).diag; }

Cokernel cokernel_structure(const IntMatrix& m) {
  IntVec d = invariant_factors(m);
  Cokernel c;
  c.free_rank = m.rows() - d.size();
  for (const auto& x : d)
    if (x > 1) c.torsion.push_back(x);
  return c;
}

namespace {

// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RatVec>& a, std::size_t cols) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[r], a[p]);
    Rat inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t k = 0; k < a[i].size(); ++k) a[i][k] -= f * a[r][k];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

std::size_t rank(const std::vector<IntVec>& rows, std::size_t cols) {
  std::vector<RatVec> a;
  for (const auto& r : rows) a.push_back(to_rat(r));
  return rref(a, cols).size();
}

std::size_t rank(const IntMatrix& m) { return rank(m.row_list(), m.cols()); }

std::optional<RatVec> solve_rational(const IntMatrix& m, const RatVec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_rational: shape mismatch");
  const std::size_t C = m.cols();
  std::vector<RatVec> a(m.rows(), RatVec(C + 1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < C; ++j) a[i][j] = m(i, j);
    a[i][C] = b[i];
  }
  auto piv = rref(a, C + 1);
  if (!piv.empty() && piv.back() == C) return std::nullopt;
  RatVec x(C, Rat(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = a[r][C];
  return x;
}

std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_integer: shape mismatch");
  SmithForm s = smith_form(m);
  IntVec c = s.U * b;
  IntVec y(m.cols(), Int(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < s.diag.size()) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), s.diag[i].get_mpz_t())) return std::nullopt;
      y[i] = c[i] / s.diag[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

IntMatrix hermite_form(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t t = 0;
  for (std::size_t c = 0; c < a.cols() && t < a.rows(); ++c) {
    for (;;) {
      std::size_t best = a.rows();
      for (std::size_t i = t; i < a.rows(); ++i)
        if (a(i, c) != 0 && (best == a.rows() || abs(a(i, c)) < abs(a(best, c)))) best = i;
      if (best == a.rows()) break;
      a.swap_rows(t, best);
      bool more = false;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, c) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(t, c).get_mpz_t());
        a.add_row(i, t, -q);
        if (a(i, c) != 0) more = true;
      }
      if (!more) break;
    }
    if (a(t, c) == 0) continue;
    if (a(t, c) < 0)
      for (std::size_t j = 0; j < a.cols(); ++j) a(t, j) = -a(t, j);
    for (std::size_t i = 0; i < t; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(t, c).get_mpz_t());
      a.add_row(i, t, -q);
    }
    ++t;
  }
  std::vector<std::size_t> keep(t);
  for (std::size_t i = 0; i < t; ++i) keep[i] = i;
  return a.select_rows(keep);
}

IntMatrix saturation(const IntMatrix& m) {
  SmithForm s = smith_form(m);
  std::vector<std::size_t> idx(s.diag.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return hermite_form(s.V_inv.select_rows(idx));
}

std::vector<IntVec> integer_kernel(const IntMatrix& m) {
  SmithForm s = smith_form(m);
  std::vector<IntVec> out;
  for (std::size_t j = s.diag.size(); j < m.cols(); ++j) out.push_back(s.V.col(j));
  return out;
}

IntMatrix unimodular_completion(const IntVec& v) {
  if (!is_primitive(v)) throw std::invalid_argument("unimodular_completion: vector not primitive");
  IntMatrix row(1, v.size());
  row.set_row(0, v);
  SmithForm s = smith_form(row);
  IntMatrix g = s.V_inv;
  // v = U^{-1} * e_0 * V^{-1}, U = (+-1)
  if (s.U(0, 0) < 0)
    for (std::size_t j = 0; j < g.cols(); ++j) g(0, j) = -g(0, j);
  for (std::size_t i = 0; i + 1 < g.rows(); ++i) g.swap_rows(i, i + 1);
  return g;
}

Int gcd(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

Int lcm(const IntVec& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_mpz_t());
  return l;
}

Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const IntVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool is_primitive(const IntVec& v) {
  if (is_zero(v)) throw std::invalid_argument("is_primitive: zero vector");
  return gcd(v) == 1;
}

IntVec primitive(const IntVec& v) {
  Int g = gcd(v);
  if (g == 0 || g == 1) return v;
  IntVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
  return w;
}

Int common_denominator(const RatVec& v) {
  Int l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

IntVec clear_denominators(const RatVec& v) {
  Int l = common_denominator(v);
  IntVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i].get_num() * (l / v[i].get_den());
  return w;
}

RatVec to_rat(const IntVec& v) {
  RatVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i];
  return w;
}

Rat frac(const Int& n, const Int& d) {
  if (d == 0) throw std::domain_error("frac: zero denominator");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string to_string(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace cplx1
