#include "cplx1/gorenstein.hpp"

#include "cplx1/invariants.hpp"

#include <sstream>

namespace cplx1 {

namespace {

void require_type2(const DefiningData& data, const char* op) {
  if (data.exponents.variant != 2) throw PreconditionError(std::string(op) + ": requires type 2 data");
}

bool divides(const Int& a, const Int& b) { return a != 0 && b % a == 0; }

Int exact_div(const Int& a, const Int& b) {
  if (!divides(b, a)) throw std::logic_error("inexact division");
  return a / b;
}

// mu_i from the last row: zeta*nu_i1 + mu_i*l_i1 = iota.
IntVec realized_mu(const DefiningData& data, const Int& iota, const Int& zeta) {
  const auto& e = data.exponents;
  std::size_t last = data.s() - 1;
  IntVec mu;
  for (std::size_t i = 0; i < e.block_count(); ++i) {
    std::size_t o = e.offset(i);
    mu.push_back(exact_div(iota - zeta * data.d(last, o), e.blocks[i][0]));
  }
  return mu;
}

// Checks zeta*nu_ij + mu_i*l_ij = iota on all blocks and zeta*nu' = iota on free columns.
bool has_zeta_shape(const DefiningData& data, const Int& iota, const Int& zeta, const IntVec& mu) {
  const auto& e = data.exponents;
  std::size_t last = data.s() - 1;
  for (std::size_t i = 0; i < e.block_count(); ++i)
    for (std::size_t j = 0; j < e.blocks[i].size(); ++j)
      if (zeta * data.d(last, e.offset(i) + j) + mu[i] * e.blocks[i][j] != iota) return false;
  for (std::size_t j = e.n(); j < e.cols(); ++j)
    if (zeta * data.d(last, j) != iota) return false;
  return true;
}

std::string str3(const Int& a, const Int& b, const Int& c) {
  return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")";
}

DefiningData swap_blocks(const DefiningData& data, std::size_t a, std::size_t b) {
  std::vector<std::size_t> perm(data.exponents.block_count());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  std::swap(perm[a], perm[b]);
  return permute_blocks(data, perm);
}

}  // namespace

bool is_log_terminal_type2(const DefiningData& data) {
  return is_platonic_ring(data.exponents);
}

IntVec canonical_vector(const DefiningData& data, std::size_t alpha_block) {
  const auto& e = data.exponents;
  if (alpha_block >= e.block_count()) throw std::invalid_argument("canonical_vector: no such block");
  IntVec w(e.cols(), Int(-1));
  Int r1 = Int(static_cast<long>(e.block_count()) - 2);
  std::size_t o = e.offset(alpha_block);
  for (std::size_t j = 0; j < e.blocks[alpha_block].size(); ++j) w[o + j] = r1 * e.blocks[alpha_block][j] - 1;
  return w;
}

GorensteinData gorenstein_data(const DefiningData& data, std::size_t alpha_block) {
  require_type2(data, "gorenstein_data");
  if (!affine_profile(data).pointed) throw PreconditionError("gorenstein_data: X is not affine");
  GorensteinData g;
  IntVec w = canonical_vector(data, alpha_block);
  auto u = solve_rational(data.p().transpose(), to_rat(w));
  if (!u) return g;
  g.q_gorenstein = true;
  g.u = *u;
  g.iota = common_denominator(g.u);
  std::size_t r = data.r();
  for (std::size_t k = 0; k < g.u.size(); ++k) {
    Rat x = g.u[k] * g.iota;
    Int v = x.get_num();
    (k < r ? g.mu : g.eta).push_back(v);
  }
  g.zeta = gcd(g.eta);
  return g;
}

ZetaNormalForm normal_form_zeta(const DefiningData& data) {
  require_type2(data, "normal_form_zeta");
  GorensteinData g = gorenstein_data(data);
  if (!g.q_gorenstein) throw PreconditionError("normal_form_zeta: X is not Q-Gorenstein");
  if (!is_log_terminal_type2(data)) throw PreconditionError("normal_form_zeta: X is not log terminal");
  if (g.zeta == 0) throw std::logic_error("normal_form_zeta: zeta = 0 for log terminal input");
  ZetaNormalForm out;
  out.iota = g.iota;
  out.zeta = g.zeta;
  std::size_t s = data.s();
  // Anticanonical weight, scaled to be primitive.
  IntVec w(s);
  for (std::size_t k = 0; k < s; ++k) w[k] = -g.eta[k] / g.zeta;
  IntVec unit(s, Int(0));
  unit[s - 1] = 1;
  IntMatrix G(s, s);
  if (w == unit) {
    for (std::size_t k = 0; k < s; ++k) G(k, k) = 1;
  } else {
    G = unimodular_completion(w);
    out.log.push_back("d <- G*d with last row of G = " + to_string(w));
  }
  DefiningData res = data;
  res.d = G * data.d;
  if (g.zeta == 1) {
    for (std::size_t i = 0; i < data.r(); ++i) {
      Int f = -g.iota * g.u[i].get_num() / g.u[i].get_den();
      if (f == 0) continue;
      res = add_p0_row(res, s - 1, i, f);
      out.log.push_back("last row += " + f.get_str() + " * P0 row " + std::to_string(i));
    }
  }
  out.mu = realized_mu(res, out.iota, out.zeta);
  if (!has_zeta_shape(res, out.iota, out.zeta, out.mu))
    throw std::logic_error("normal_form_zeta: result violates the zeta shape");
  out.data = std::move(res);
  return out;
}

std::string to_string(ZetaCase c) {
  switch (c) {
    case ZetaCase::i: return "i";
    case ZetaCase::ii: return "ii";
    case ZetaCase::iii: return "iii";
    case ZetaCase::iv: return "iv";
    case ZetaCase::v: return "v";
    case ZetaCase::vi: return "vi";
  }
  return "?";
}

namespace {

struct ZetaCandidate {
  ZetaCase tag;
  Int zeta;  // 0: any
  std::size_t swap_a, swap_b;  // equal: no swap
  bool mu1_free;
};

// Target (mu_1, mu_2) of a case.
std::pair<Int, Int> zeta_target(ZetaCase c, const Int& iota) {
  switch (c) {
    case ZetaCase::i: return {iota, Int(1)};
    case ZetaCase::ii: return {Int(-1), iota};
    case ZetaCase::iii: return {Int(1), Int(-1)};
    case ZetaCase::iv: return {Int(-1), iota};
    case ZetaCase::v: return {Int(1), Int(-1)};
    case ZetaCase::vi: return {Int(0), iota};
  }
  return {};
}

}  // namespace

ZetaCaseResult zeta_case(const DefiningData& input) {
  require_type2(input, "zeta_case");
  GorensteinData g0 = gorenstein_data(input);
  if (!g0.q_gorenstein) throw PreconditionError("zeta_case: X is not Q-Gorenstein");
  if (!is_log_terminal_type2(input)) throw PreconditionError("zeta_case: X is not log terminal");
  if (g0.zeta <= 1) throw PreconditionError("zeta_case: requires zeta > 1");
  NormalizedData nd = normalize(input);
  if (nd.polynomial) throw PreconditionError("zeta_case: X is an affine space");
  std::vector<std::string> log = nd.log;
  ZetaNormalForm z = normal_form_zeta(nd.data);
  log.insert(log.end(), z.log.begin(), z.log.end());
  DefiningData base = z.data;
  const auto& e = base.exponents;
  std::size_t last = base.s() - 1;
  if (base.exponents.block_count() < 3) throw PreconditionError("zeta_case: fewer than three relevant blocks");
  for (std::size_t i = 3; i < e.block_count(); ++i) {
    if (e.blocks[i] != IntVec(e.blocks[i].size(), Int(1)))
      throw std::logic_error("zeta_case: block beyond the third has exponents other than 1");
    Int f = base.d(last, e.offset(i));
    if (f != 0) {
      base = add_p0_row(base, last, i - 1, -f);
      log.push_back("last row -= " + f.get_str() + " * P0 row " + std::to_string(i - 1));
    }
  }
  const Int iota = z.iota, zeta = z.zeta;
  Int l0 = e.blocks[0][0], l1 = e.blocks[1][0], l2 = e.blocks[2][0];
  std::vector<ZetaCandidate> cands;
  if (l0 == 4 && l1 == 3 && l2 == 2) {
    cands = {{ZetaCase::i, 2, 0, 0, false}};
  } else if (l0 == 3 && l1 == 3 && l2 == 2) {
    cands = {{ZetaCase::ii, 3, 0, 0, false}, {ZetaCase::ii, 3, 0, 1, false}};
  } else if (l1 == 2 && l2 == 2) {
    if (l0 % 2 != 0)
      cands = {{ZetaCase::iii, 4, 0, 0, false}, {ZetaCase::iii, 4, 1, 2, false},
               {ZetaCase::v, 2, 0, 0, false}, {ZetaCase::v, 2, 1, 2, false}};
    else
      cands = {{ZetaCase::v, 2, 0, 0, false}, {ZetaCase::v, 2, 1, 2, false},
               {ZetaCase::iv, 2, 0, 0, false}, {ZetaCase::iv, 2, 1, 2, false}};
  } else if (l2 == 1) {
    cands = {{ZetaCase::vi, 0, 0, 0, true}};
  } else {
    throw std::logic_error("zeta_case: no case matches leading exponents " + str3(l0, l1, l2));
  }
  for (const auto& c : cands) {
    if (c.zeta != 0 && c.zeta != zeta) continue;
    DefiningData cur = base;
    std::vector<std::string> clog;
    if (c.swap_a != c.swap_b) {
      cur = swap_blocks(cur, c.swap_a, c.swap_b);
      clog.push_back("swap blocks " + std::to_string(c.swap_a) + "," + std::to_string(c.swap_b));
    }
    IntVec mu = realized_mu(cur, iota, zeta);
    auto [t1, t2] = zeta_target(c.tag, iota);
    if (c.mu1_free) t1 = mu[1];
    Int a1 = mu[1] - t1, a2 = mu[2] - t2;
    if (!divides(zeta, a1) || !divides(zeta, a2)) continue;
    a1 /= zeta;
    a2 /= zeta;
    if (a1 != 0) {
      cur = add_p0_row(cur, last, 0, a1);
      clog.push_back("last row += " + a1.get_str() + " * P0 row 0");
    }
    if (a2 != 0) {
      cur = add_p0_row(cur, last, 1, a2);
      clog.push_back("last row += " + a2.get_str() + " * P0 row 1");
    }
    IntVec m2 = realized_mu(cur, iota, zeta);
    if (!has_zeta_shape(cur, iota, zeta, m2)) continue;
    if (m2[1] != t1 || m2[2] != t2) continue;
    ZetaCaseResult res;
    res.tag = c.tag;
    res.iota = iota;
    res.zeta = zeta;
    const auto& ce = cur.exponents;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < ce.blocks[i].size(); ++j) res.nu[i].push_back(cur.d(last, ce.offset(i) + j));
    res.data = std::move(cur);
    res.log = log;
    res.log.insert(res.log.end(), clog.begin(), clog.end());
    res.log.push_back("case (" + to_string(c.tag) + ")");
    return res;
  }
  throw std::logic_error("zeta_case: no case matches (iota " + iota.get_str() + ", zeta " + zeta.get_str() +
                         ", leading exponents " + str3(l0, l1, l2) + ")");
}

namespace {

struct LbTarget {
  int case_id;
  std::array<Int, 3> d;
};

// a with d' = d + M a, M the effect of rows (P0 row 0, P0 row 1, last row) on the leading entries.
std::optional<IntVec> solve_leading(const std::array<Int, 3>& l, const std::array<Int, 3>& d,
                                    const std::array<Int, 3>& target) {
  IntMatrix M(3, 3);
  M(0, 0) = -l[0]; M(0, 1) = -l[0]; M(0, 2) = 1 - l[0];
  M(1, 0) = l[1];  M(1, 1) = 0;     M(1, 2) = 1;
  M(2, 0) = 0;     M(2, 1) = l[2];  M(2, 2) = 1;
  RatVec b(3);
  for (std::size_t k = 0; k < 3; ++k) b[k] = Rat(target[k] - d[k]);
  auto a = solve_rational(M, b);
  if (!a) return std::nullopt;
  IntVec out;
  for (const auto& x : *a) {
    if (x.get_den() != 1) return std::nullopt;
    out.push_back(x.get_num());
  }
  return out;
}

std::array<Int, 3> leading_d(const DefiningData& data) {
  const auto& e = data.exponents;
  return {data.d(0, e.offset(0)), data.d(0, e.offset(1)), data.d(0, e.offset(2))};
}

DefiningData apply_a(const DefiningData& data, const IntVec& a) {
  DefiningData out = add_p0_row(data, 0, 0, a[0]);
  out = add_p0_row(out, 0, 1, a[1]);
  out = add_d_row(out, 0, 1, a[2]);
  return out;
}

}  // namespace

LeadingBlockData leading_block_data(const DefiningData& input) {
  require_type2(input, "leading_block_data");
  if (input.s() != 2) throw PreconditionError("leading_block_data: requires a threefold (s = 2)");
  GorensteinData g0 = gorenstein_data(input);
  if (!g0.q_gorenstein || g0.iota != 1) throw PreconditionError("leading_block_data: X is not Gorenstein");
  if (g0.zeta != 1) throw PreconditionError("leading_block_data: requires zeta = 1");
  if (!is_log_terminal_type2(input)) throw PreconditionError("leading_block_data: X is not log terminal");
  NormalizedData nd = normalize(input);
  if (nd.polynomial || nd.data.exponents.block_count() < 3)
    throw PreconditionError("leading_block_data: fewer than three relevant blocks");
  if (nd.data.s() != 2) throw PreconditionError("leading_block_data: requires s = 2");
  LeadingBlockData out;
  out.log = nd.log;
  ZetaNormalForm z = normal_form_zeta(nd.data);
  out.log.insert(out.log.end(), z.log.begin(), z.log.end());
  DefiningData cur = z.data;
  std::size_t nb = cur.exponents.block_count();
  for (std::size_t i = 3; i < nb; ++i) {
    Int f = cur.d(0, cur.exponents.offset(i));
    if (f != 0) {
      cur = add_p0_row(cur, 0, i - 1, -f);
      out.log.push_back("row 0 of d -= " + f.get_str() + " * P0 row " + std::to_string(i - 1));
    }
  }
  for (std::size_t i = 3; i < nb; ++i) cur = add_p0_row(cur, 1, i - 1, -1);
  auto lead = [](const DefiningData& d) {
    const auto& e = d.exponents;
    return std::array<Int, 3>{e.blocks[0][0], e.blocks[1][0], e.blocks[2][0]};
  };
  std::array<Int, 3> l = lead(cur);
  std::vector<LbTarget> targets;
  std::vector<std::pair<std::size_t, std::size_t>> swaps{{0, 0}};
  if (l == std::array<Int, 3>{5, 3, 2}) {
    targets = {{1, {0, 0, 0}}};
  } else if (l == std::array<Int, 3>{4, 3, 2}) {
    targets = {{2, {0, 0, 0}}, {3, {1, 0, 0}}};
  } else if (l == std::array<Int, 3>{3, 3, 2}) {
    targets = {{4, {0, 0, 0}}, {5, {1, 0, 0}}};
    swaps.push_back({0, 1});
  } else if (l[1] == 2 && l[2] == 2) {
    targets = {{6, {0, 0, 0}}, {7, {1, 0, 0}}, {8, {0, 1, 0}}};
    swaps.push_back({1, 2});
  } else if (l[2] == 1) {
    targets = {};
  } else {
    throw std::logic_error("leading_block_data: leading exponents " + str3(l[0], l[1], l[2]) + " are not platonic");
  }
  bool done = false;
  if (targets.empty()) {
    std::array<Int, 3> d = leading_d(cur);
    out.d_before = d;
    IntVec a{Int(0), d[1] - d[2], -d[1]};
    cur = apply_a(cur, a);
    out.a = a;
    out.log.push_back("row 0 of d += a*(P0 row 0, P0 row 1, last row), a = " + to_string(a));
    Int L = l[0] + l[1];
    Int x = cur.d(0, cur.exponents.offset(0));
    Int rem = x % L;
    if (rem < 0) rem += L;
    if (L - rem < rem) {
      for (std::size_t j = 0; j < cur.d.cols(); ++j) cur.d(0, j) = -cur.d(0, j);
      out.negated = true;
      out.log.push_back("row 0 of d negated");
      x = -x;
      rem = L - rem;
    }
    Int k = (x - rem) / L;
    if (k != 0) {
      cur = apply_a(cur, IntVec{k, l[1] * k, -l[1] * k});
      out.log.push_back("row 0 of d reduced by " + k.get_str() + " * " + L.get_str());
    }
    out.case_id = 9;
    done = true;
  }
  for (const auto& sw : swaps) {
    if (done) break;
    DefiningData base = cur;
    std::string swap_name;
    if (sw.first != sw.second) {
      base = swap_blocks(cur, sw.first, sw.second);
      swap_name = std::to_string(sw.first) + "-" + std::to_string(sw.second);
      if (sw.first == 0) base = add_p0_row(base, 1, 0, 1);
    }
    std::array<Int, 3> d = leading_d(base);
    std::array<Int, 3> lb = lead(base);
    for (const auto& t : targets) {
      auto a = solve_leading(lb, d, t.d);
      if (!a) continue;
      cur = apply_a(base, *a);
      out.a = *a;
      out.d_before = d;
      out.swap = swap_name;
      out.case_id = t.case_id;
      if (!swap_name.empty()) out.log.push_back("swap blocks " + swap_name);
      out.log.push_back("row 0 of d += a*(P0 row 0, P0 row 1, last row), a = " + to_string(out.a));
      done = true;
      break;
    }
  }
  if (!done)
    throw std::logic_error("leading_block_data: no case matches for leading exponents " + str3(l[0], l[1], l[2]));
  for (std::size_t i = 3; i < nb; ++i) cur = add_p0_row(cur, 1, i - 1, 1);
  out.triple = lead(cur);
  out.d_triple = leading_d(cur);
  out.data = std::move(cur);
  // Sanity: still Gorenstein of index one in the canonical shape.
  IntVec mu = realized_mu(out.data, 1, 1);
  if (!has_zeta_shape(out.data, 1, 1, mu)) throw std::logic_error("leading_block_data: lost the canonical shape");
  out.log.push_back("leading block data " + str3(out.triple[0], out.triple[1], out.triple[2]) + ";" +
                    str3(out.d_triple[0], out.d_triple[1], out.d_triple[2]) + ", case " +
                    std::to_string(out.case_id));
  return out;
}

}  // namespace cplx1
