#include "cplx1/data.hpp"

#include "cplx1/polyhedra.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace cplx1 {

using nlohmann::json;

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
  std::string s;
  for (const auto& i : issues) {
    if (!s.empty()) s += "; ";
    s += i.code + ": " + i.message;
  }
  return s;
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

ValidationError::ValidationError(const std::string& code, const std::string& message)
    : ValidationError(std::vector<ValidationIssue>{{code, message}}) {}

std::size_t ExponentData::n() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  return n;
}

std::size_t ExponentData::r() const {
  if (blocks.empty()) return 0;
  return variant == 2 ? blocks.size() - 1 : blocks.size();
}

std::size_t ExponentData::offset(std::size_t block) const {
  std::size_t o = 0;
  for (std::size_t i = 0; i < block; ++i) o += blocks[i].size();
  return o;
}

std::size_t ExponentData::block_of(std::size_t col) const {
  std::size_t o = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    o += blocks[i].size();
    if (col < o) return i;
  }
  return blocks.size();
}

long ExponentData::ring_dimension() const {
  return static_cast<long>(n()) + m + 1 - static_cast<long>(r());
}

IntMatrix ExponentData::p0() const {
  IntMatrix p(r(), cols());
  if (variant == 2) {
    for (std::size_t i = 0; i < r(); ++i) {
      for (std::size_t j = 0; j < blocks[0].size(); ++j) p(i, j) = -blocks[0][j];
      std::size_t o = offset(i + 1);
      for (std::size_t j = 0; j < blocks[i + 1].size(); ++j) p(i, o + j) = blocks[i + 1][j];
    }
  } else {
    for (std::size_t i = 0; i < r(); ++i) {
      std::size_t o = offset(i);
      for (std::size_t j = 0; j < blocks[i].size(); ++j) p(i, o + j) = blocks[i][j];
    }
  }
  return p;
}

std::string ExponentData::str() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) os << ",";
    os << to_string(blocks[i]);
  }
  os << "; m=" << m;
  if (variant == 1) os << "; type 1";
  os << ">";
  return os.str();
}

bool RingState::operator==(const RingState& o) const {
  if (polynomial != o.polynomial) return false;
  if (polynomial) return dimension == o.dimension;
  return data == o.data;
}

std::string RingState::str() const {
  if (polynomial) return "polynomial(" + std::to_string(dimension) + ")";
  return data.str();
}

IntMatrix DefiningData::p() const {
  IntMatrix p = exponents.p0();
  if (p.rows() == 0) p = IntMatrix(0, exponents.cols());
  for (std::size_t i = 0; i < d.rows(); ++i) p.append_row(d.row(i));
  return p;
}

IntVec DefiningData::column(std::size_t j) const {
  return p().col(j);
}

DefiningData DefiningData::from_matrix(const ExponentData& e, const IntMatrix& p) {
  IntMatrix p0 = e.p0();
  if (p.cols() != e.cols() || p.rows() <= p0.rows())
    throw ValidationError("shape", "matrix shape does not fit the exponent data");
  for (std::size_t i = 0; i < p0.rows(); ++i)
    if (p.row(i) != p0.row(i))
      throw ValidationError("shape", "row " + std::to_string(i) + " differs from P0");
  DefiningData dd;
  dd.exponents = e;
  dd.d = IntMatrix(0, p.cols());
  for (std::size_t i = p0.rows(); i < p.rows(); ++i) dd.d.append_row(p.row(i));
  return dd;
}

// ---- JSON ----

namespace {

[[noreturn]] void format_error(const std::string& msg) { throw ValidationError("format", msg); }

Int json_int(const json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_number_unsigned()) return Int(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  format_error("expected an integer, got " + j.dump());
}

Rat json_rat(const json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rat(json_int(j));
  if (j.is_string()) {
    try {
      Rat q(j.get<std::string>());
      if (q.get_den() == 0) format_error("zero denominator");
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
    }
  }
  format_error("expected an exact rational, got " + j.dump());
}

json int_json(const Int& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

}  // namespace

ExponentData exponent_data_from_json(const json& j) {
  if (!j.is_object()) format_error("document is not an object");
  if (j.contains("format") && j["format"] != "cplx1/1") format_error("unknown format " + j["format"].dump());
  ExponentData e;
  if (j.contains("variant")) {
    if (!j["variant"].is_number_integer()) format_error("variant must be 1 or 2");
    e.variant = j["variant"].get<int>();
    if (e.variant != 1 && e.variant != 2) format_error("variant must be 1 or 2");
  }
  if (!j.contains("blocks") || !j["blocks"].is_array()) format_error("missing blocks");
  for (const auto& b : j["blocks"]) {
    if (!b.is_array()) format_error("block is not a list");
    IntVec v;
    for (const auto& x : b) v.push_back(json_int(x));
    e.blocks.push_back(v);
  }
  if (j.contains("m")) {
    if (!j["m"].is_number_integer()) format_error("m must be a nonnegative integer");
    e.m = j["m"].get<long>();
  }
  return e;
}

DefiningData defining_data_from_json(const json& j) {
  DefiningData dd;
  dd.exponents = exponent_data_from_json(j);
  if (!j.contains("d") || !j["d"].is_array()) format_error("missing d");
  std::vector<IntVec> rows;
  for (const auto& r : j["d"]) {
    if (!r.is_array()) format_error("d row is not a list");
    IntVec v;
    for (const auto& x : r) v.push_back(json_int(x));
    rows.push_back(v);
  }
  std::size_t cols = rows.empty() ? dd.exponents.cols() : rows[0].size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols) format_error("d row " + std::to_string(i) + " has wrong length");
  dd.d = IntMatrix::from_rows(rows, cols);
  if (j.contains("A") && !j["A"].is_null()) {
    json a = j["A"];
    // Accept both [c0, c1, ...] and [[c0, c1, ...]].
    if (dd.exponents.variant == 2 && a.is_array() && a.size() == 1 && a[0].is_array() && !a[0].empty() &&
        a[0][0].is_array())
      a = a[0];
    if (!a.is_array()) format_error("A must be a list");
    std::vector<RatVec> cols_a;
    for (const auto& c : a) {
      RatVec v;
      if (c.is_array())
        for (const auto& x : c) v.push_back(json_rat(x));
      else
        v.push_back(json_rat(c));
      cols_a.push_back(v);
    }
    dd.A = cols_a;
  }
  return dd;
}

DefiningData parse_defining_data(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    format_error(std::string("malformed JSON: ") + e.what());
  }
  return defining_data_from_json(j);
}

json to_json(const ExponentData& e) {
  json j;
  j["format"] = "cplx1/1";
  j["variant"] = e.variant;
  json blocks = json::array();
  for (const auto& b : e.blocks) {
    json jb = json::array();
    for (const auto& x : b) jb.push_back(int_json(x));
    blocks.push_back(jb);
  }
  j["blocks"] = blocks;
  j["m"] = e.m;
  return j;
}

json to_json(const DefiningData& data) {
  json j = to_json(data.exponents);
  json d = json::array();
  for (std::size_t i = 0; i < data.d.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < data.d.cols(); ++k) row.push_back(int_json(data.d(i, k)));
    d.push_back(row);
  }
  j["d"] = d;
  if (data.A) {
    json a = json::array();
    for (const auto& c : *data.A) {
      if (c.size() == 1) {
        a.push_back(to_string(c[0]));
      } else {
        json jc = json::array();
        for (const auto& x : c) jc.push_back(to_string(x));
        a.push_back(jc);
      }
    }
    j["A"] = a;
  }
  return j;
}

// ---- validation ----

std::vector<ValidationIssue> validate(const ExponentData& e) {
  std::vector<ValidationIssue> out;
  std::size_t min_blocks = e.variant == 2 ? 2 : 1;
  if (e.variant != 1 && e.variant != 2) out.push_back({"format", "variant must be 1 or 2"});
  if (e.blocks.size() < min_blocks)
    out.push_back({"blocks", "need at least " + std::to_string(min_blocks) + " blocks, got " +
                                 std::to_string(e.blocks.size())});
  for (std::size_t i = 0; i < e.blocks.size(); ++i) {
    if (e.blocks[i].empty()) out.push_back({"blocks", "block " + std::to_string(i) + " is empty"});
    for (std::size_t j = 0; j < e.blocks[i].size(); ++j)
      if (e.blocks[i][j] < 1)
        out.push_back({"exponent", "l[" + std::to_string(i) + "][" + std::to_string(j) + "] = " +
                                       e.blocks[i][j].get_str() + " is not positive"});
  }
  if (e.m < 0) out.push_back({"shape", "m is negative"});
  return out;
}

std::vector<ValidationIssue> validate(const DefiningData& data) {
  std::vector<ValidationIssue> out = validate(data.exponents);
  if (!out.empty()) return out;
  const ExponentData& e = data.exponents;
  const std::size_t cols = e.cols();
  if (data.d.rows() < 1) out.push_back({"shape", "d needs at least one row"});
  if (data.d.cols() != cols)
    out.push_back({"shape", "d has " + std::to_string(data.d.cols()) + " columns, expected n+m = " +
                                std::to_string(cols)});
  if (!out.empty()) return out;
  IntMatrix P = data.p();
  std::size_t rk = rank(P);
  if (rk != P.rows())
    out.push_back({"rank", "P has rank " + std::to_string(rk) + ", expected r+s = " + std::to_string(P.rows())});
  auto columns = P.col_list();
  for (std::size_t j = 0; j < cols; ++j) {
    if (is_zero(columns[j]))
      out.push_back({"primitive", "column " + std::to_string(j) + " is zero"});
    else if (!is_primitive(columns[j]))
      out.push_back({"primitive", "column " + std::to_string(j) + " " + to_string(columns[j]) + " is not primitive"});
  }
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t k = j + 1; k < cols; ++k)
      if (columns[j] == columns[k])
        out.push_back({"duplicate", "columns " + std::to_string(j) + " and " + std::to_string(k) + " coincide"});
  if (data.A) {
    const auto& A = *data.A;
    std::size_t want = e.block_count();
    if (A.size() != want) {
      out.push_back({"A", "A has " + std::to_string(A.size()) + " entries, expected " + std::to_string(want)});
    } else if (e.variant == 2) {
      for (std::size_t i = 0; i < A.size(); ++i)
        if (A[i].size() != 2) out.push_back({"A", "A column " + std::to_string(i) + " is not a pair"});
      if (out.empty() || out.back().code != "A")
        for (std::size_t i = 0; i < A.size(); ++i)
          for (std::size_t j = i + 1; j < A.size(); ++j)
            if (A[i][0] * A[j][1] - A[i][1] * A[j][0] == 0)
              out.push_back({"A", "A columns " + std::to_string(i) + " and " + std::to_string(j) +
                                      " are linearly dependent"});
    } else {
      for (std::size_t i = 0; i < A.size(); ++i)
        if (A[i].size() != 1) out.push_back({"A", "A entry " + std::to_string(i) + " is not a scalar"});
      for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = i + 1; j < A.size(); ++j)
          if (A[i] == A[j])
            out.push_back({"A", "A entries " + std::to_string(i) + " and " + std::to_string(j) + " coincide"});
    }
  }
  return out;
}

DefiningData parse_validate(const std::string& text) {
  DefiningData d = parse_defining_data(text);
  auto issues = validate(d);
  if (!issues.empty()) throw ValidationError(issues);
  return d;
}

std::vector<RatVec> default_A(const ExponentData& e) {
  std::vector<RatVec> a;
  for (std::size_t i = 0; i < e.block_count(); ++i) {
    if (e.variant == 2)
      a.push_back(RatVec{Rat(1), Rat(static_cast<long>(i))});
    else
      a.push_back(RatVec{Rat(static_cast<long>(i))});
  }
  return a;
}

// ---- admissible operations ----

bool block_less(const IntVec& a, const IntVec& b) {
  std::size_t k = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < k; ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return a.size() > b.size();
}

ExponentData permute_blocks(const ExponentData& e, const std::vector<std::size_t>& perm) {
  ExponentData out = e;
  for (std::size_t k = 0; k < perm.size(); ++k) out.blocks[k] = e.blocks[perm[k]];
  return out;
}

DefiningData permute_blocks(const DefiningData& data, const std::vector<std::size_t>& perm) {
  const ExponentData& e = data.exponents;
  if (perm.size() != e.block_count()) throw std::invalid_argument("permute_blocks: wrong permutation size");
  DefiningData out;
  out.exponents = permute_blocks(e, perm);
  std::vector<std::size_t> cols;
  for (std::size_t k = 0; k < perm.size(); ++k)
    for (std::size_t j = 0; j < e.blocks[perm[k]].size(); ++j) cols.push_back(e.offset(perm[k]) + j);
  for (std::size_t j = e.n(); j < e.cols(); ++j) cols.push_back(j);
  out.d = data.d.select_cols(cols);
  if (data.A) {
    std::vector<RatVec> a;
    for (std::size_t k = 0; k < perm.size(); ++k) a.push_back((*data.A)[perm[k]]);
    out.A = a;
  }
  return out;
}

DefiningData swap_in_block(const DefiningData& data, std::size_t block, std::size_t j, std::size_t k) {
  DefiningData out = data;
  std::swap(out.exponents.blocks[block][j], out.exponents.blocks[block][k]);
  std::size_t o = data.exponents.offset(block);
  out.d.swap_cols(o + j, o + k);
  return out;
}

DefiningData add_p0_row(const DefiningData& data, std::size_t row, std::size_t p0_row, const Int& f) {
  DefiningData out = data;
  IntVec src = data.exponents.p0().row(p0_row);
  for (std::size_t k = 0; k < src.size(); ++k) out.d(row, k) += f * src[k];
  return out;
}

DefiningData add_d_row(const DefiningData& data, std::size_t row, std::size_t other, const Int& f) {
  if (row == other) throw std::invalid_argument("add_d_row: row equals source");
  DefiningData out = data;
  out.d.add_row(row, other, f);
  return out;
}

// ---- normal forms ----

namespace {

std::vector<std::size_t> block_order(const ExponentData& e) {
  std::vector<std::size_t> perm(e.block_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return block_less(e.blocks[a], e.blocks[b]); });
  return perm;
}

bool redundant(const IntVec& b) { return b.size() == 1 && b[0] == 1; }

std::size_t min_blocks_with_relations(int variant) { return variant == 2 ? 3 : 2; }

std::string perm_str(const std::vector<std::size_t>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

}  // namespace

NormalizedExponents normalize(const ExponentData& input) {
  NormalizedExponents out;
  ExponentData e = input;
  for (std::size_t i = 0; i < e.block_count(); ++i) {
    IntVec sorted = e.blocks[i];
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    if (sorted != e.blocks[i]) {
      out.log.push_back("sort exponents in block " + std::to_string(i));
      e.blocks[i] = sorted;
    }
  }
  auto perm = block_order(e);
  if (!std::is_sorted(perm.begin(), perm.end())) {
    out.log.push_back("permute blocks " + perm_str(perm));
    e = permute_blocks(e, perm);
  }
  while (e.block_count() >= min_blocks_with_relations(e.variant) && redundant(e.blocks.back())) {
    out.log.push_back("eliminate redundant block " + std::to_string(e.block_count() - 1));
    e.blocks.pop_back();
  }
  out.state.data = e;
  if (e.block_count() < min_blocks_with_relations(e.variant)) {
    out.state.polynomial = true;
    out.state.dimension = e.ring_dimension();
    out.log.push_back("no relations left: polynomial ring of dimension " + std::to_string(out.state.dimension));
  }
  return out;
}

NormalizedData normalize(const DefiningData& input) {
  NormalizedData out;
  DefiningData d = input;
  for (std::size_t i = 0; i < d.exponents.block_count(); ++i) {
    // insertion sort by column swaps keeps the log explicit
    const std::size_t len = d.exponents.blocks[i].size();
    for (std::size_t j = 1; j < len; ++j)
      for (std::size_t k = j; k > 0 && d.exponents.blocks[i][k - 1] < d.exponents.blocks[i][k]; --k) {
        d = swap_in_block(d, i, k - 1, k);
        out.log.push_back("swap columns " + std::to_string(k - 1) + "," + std::to_string(k) + " in block " +
                          std::to_string(i));
      }
  }
  auto perm = block_order(d.exponents);
  if (!std::is_sorted(perm.begin(), perm.end())) {
    out.log.push_back("permute blocks " + perm_str(perm));
    d = permute_blocks(d, perm);
  }
  const int variant = d.exponents.variant;
  while (d.exponents.block_count() >= min_blocks_with_relations(variant) &&
         redundant(d.exponents.blocks.back())) {
    std::size_t b = d.exponents.block_count() - 1;
    std::size_t row = variant == 2 ? b - 1 : b;
    std::size_t col = d.exponents.offset(b);
    for (std::size_t k = 0; k < d.s(); ++k) {
      Int f = -d.d(k, col);
      if (f != 0) {
        d = add_p0_row(d, k, row, f);
        out.log.push_back("add " + f.get_str() + " x P0 row " + std::to_string(row) + " to d row " +
                          std::to_string(k));
      }
    }
    d.d.erase_col(col);
    d.exponents.blocks.pop_back();
    if (d.A) d.A->pop_back();
    out.log.push_back("eliminate redundant block " + std::to_string(b));
  }
  out.data = d;
  if (d.exponents.block_count() < min_blocks_with_relations(variant)) {
    out.polynomial = true;
    out.dimension = d.exponents.ring_dimension();
    out.log.push_back("no relations left: polynomial ring of dimension " + std::to_string(out.dimension));
  }
  return out;
}

ClassGroupDesc class_group(const DefiningData& data) { return cokernel_structure(data.p().transpose()); }

AffineProfile affine_profile(const DefiningData& data) {
  IntMatrix P = data.p();
  auto cols = P.col_list();
  RatCone c = cone_hull(cols, P.rows());
  AffineProfile a;
  a.pointed = c.pointed && c.equations.empty();
  if (a.pointed)
    for (const auto& v : cols)
      if (std::find(c.extremal_rays.begin(), c.extremal_rays.end(), primitive(v)) == c.extremal_rays.end())
        a.pointed = false;
  a.q_factorial = rank(P) == P.cols();
  return a;
}

ExponentData cox_exponents(const DefiningData& data) { return data.exponents; }

}  // namespace cplx1
