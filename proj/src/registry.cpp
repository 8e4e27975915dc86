#include "cplx1/registry.hpp"

#include "cplx1/acomplex.hpp"
#include "cplx1/gorenstein.hpp"
#include "cplx1/invariants.hpp"
#include "cplx1/polyhedra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace cplx1 {

namespace {

using Rows = std::vector<std::vector<long>>;

ExponentData exps(const std::vector<std::vector<long>>& blocks, long m) {
  ExponentData e;
  for (const auto& b : blocks) {
    IntVec v;
    for (long x : b) v.emplace_back(x);
    e.blocks.push_back(v);
  }
  e.m = m;
  return e;
}

IntMatrix matrix(const Rows& rows) {
  IntMatrix p(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) p(i, j) = rows[i][j];
  return p;
}

DefiningData make(const std::vector<std::vector<long>>& blocks, long m, const Rows& rows) {
  return DefiningData::from_matrix(exps(blocks, m), matrix(rows));
}

long ceil_div(long a, long b) { return (a + b - 1) / b; }

ParamSpec spec(const std::string& name, long min, long max) { return ParamSpec{name, min, max}; }

std::vector<RegistryEntry> build_registry() {
  using Chain = std::vector<std::string>;
  std::vector<RegistryEntry> r;
  auto add = [&](std::string id, std::vector<ParamSpec> ps, bool toric, std::string type, std::string eq,
                 std::optional<Chain> chain = std::nullopt) {
    r.push_back(RegistryEntry{std::move(id), std::move(ps), toric, std::move(type), std::move(eq), std::move(chain)});
  };
  add("toric-1", {spec("k", 2, 6)}, true, "A_l x C", "T1T2+T3^(l+1)");
  add("toric-2", {spec("k1", 1, 6), spec("k2", 1, 6)}, true, "A_{l1-1}, A_{l2-1} -> cA_{l1+l2-1}",
      "T1T2+T3^l1 T4^l2");
  add("toric-3", {}, true, "A_1, A_1, A_1 -> cD_4", "T1^2+T2T3T4");
  add("4", {spec("k", 2, 6)}, false, "D_{l+3} x C", "T1^2+T2^2T3+T3^(l+2)");
  add("5-e", {spec("k", 1, 6)}, false, "A_1, A_{l-1} -> cD_{l+4}", "T1^2+T2^2T3+T3T4^(l+2)");
  add("5-o", {spec("k", 2, 6)}, false, "A_1, A_{l-1} -> cD_{l+4}", "T1^2+T2^2T3+T3T4^(l+2)");
  add("6", {}, false, "E_6 x C", "T1^2+T2^3+T3^4");
  add("7", {}, false, "E_7 x C", "T1^2+T2^3+T2T3^3",
      Chain{"<(4),(3),(2); m=1>", "<(3),(3),(2); m=1>", "<(2),(2),(2); m=1>", "polynomial(3)"});
  add("8", {}, false, "E_8 x C", "T1^2+T2^3+T3^5", Chain{"<(5),(3),(2); m=1>"});
  add("9", {spec("zeta", 2, 5), spec("k", 1, 4), spec("r", 2, 4), spec("d", 1, 3), spec("erase2", 0, 1),
            spec("erase4", 0, 1)},
      false, "A -> cA (9a-9d)", "T1T2+prod(...)");
  add("10-e", {spec("k", 2, 6)}, false, "A_{l+1} -> cD_{l+3}", "T1^2+T2^2T3+T4^(l+2)");
  add("10-o", {spec("k", 1, 6)}, false, "A_{l+1} -> cD_{l+3}", "T1^2+T2^2T3+T4^(l+2)");
  add("11", {spec("k", 2, 6)}, false, "A_{2l+1} -> cD_{2l+2}", "T1^2+T2^2T3+T2T4^(l+1)");
  add("12-e-e", {spec("k1", 1, 6), spec("k2", 1, 6)}, false, "A_{l2-1}, D_{l1+2} -> cD_{l1+l2+2}",
      "T1^2+T2^2T3+T3^(l1+1)T4^l2");
  add("12-o-e/o", {spec("k1", 1, 6), spec("k2", 1, 6)}, false, "A_{l2-1}, D_{l1+2} -> cD_{l1+l2+2}",
      "T1^2+T2^2T3+T3^(l1+1)T4^l2");
  add("13-e", {spec("zeta", 2, 6)}, false, "A_1, A_1 -> cD_{l+3}", "T1^2+T2T3T4+T4^(l+2)");
  add("13-o", {spec("zeta", 3, 6)}, false, "A_1, A_1 -> cD_{l+3}", "T1^2+T2T3T4+T4^(l+2)");
  add("14", {}, false, "A_1, A_1, A_2 -> cE_6", "T1^2+T2^3+T3^2T4^2");
  add("15", {}, false, "D_4 -> cE_6, cE_7", "T1^2+T2^3+T3^3T4", Chain{"<(3,1),(3),(2); m=0>"});
  add("16", {}, false, "A_1, D_4 -> cE_7", "T1^2+T2^3+T2T3T4^2");
  add("17", {}, false, "A_2, D_4 -> cE_8", "T1^2+T2^3+T3^2T4^3", Chain{"<(3,2),(3),(2); m=0>"});
  add("18", {}, false, "E_6 -> cE_8", "T1^2+T2^3+T3T4^4", Chain{"<(4,1),(3),(2); m=0>"});
  return r;
}

[[noreturn]] void bad(const std::string& id, const std::string& what) {
  throw PreconditionError("registry " + id + ": " + what);
}

long get(const std::string& id, const Params& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) bad(id, "missing parameter " + name);
  return it->second;
}

long get_or(const Params& p, const std::string& name, long fallback) {
  auto it = p.find(name);
  return it == p.end() ? fallback : it->second;
}

void check_names(const RegistryEntry& e, const Params& p, std::size_t r = 0) {
  for (const auto& [name, value] : p) {
    bool known = std::any_of(e.params.begin(), e.params.end(), [&](const ParamSpec& s) { return s.name == name; });
    if (e.id == "9" && name.size() > 1 && name[0] == 'd') {
      std::size_t i = std::stoul(name.substr(1));
      known = i <= r;
    } else if (e.id == "9" && name == "d") {
      known = false;
    }
    if (!known) bad(e.id, "unknown parameter " + name);
  }
}

void at_least(const std::string& id, const std::string& name, long v, long min) {
  if (v < min) bad(id, name + " must be at least " + std::to_string(min));
}

DefiningData series9(const Params& p) {
  const std::string id = "9";
  long z = get(id, p, "zeta"), k = get(id, p, "k"), r = get(id, p, "r");
  at_least(id, "zeta", z, 2);
  at_least(id, "k", k, 1);
  if (k >= z) bad(id, "k must be smaller than zeta");
  if (std::gcd(z, k) != 1) bad(id, "zeta and k must be coprime");
  at_least(id, "r", r, 2);
  long e2 = get_or(p, "erase2", 0), e4 = get_or(p, "erase4", 0);
  if (e2 < 0 || e2 > 1 || e4 < 0 || e4 > 1) bad(id, "erase flags are 0 or 1");
  if (e2 && k < 2) bad(id, "erase2 needs k >= 2");
  if (e4 && z - k < 2) bad(id, "erase4 needs zeta - k >= 2");
  std::vector<long> ds(r + 1);
  for (long i = 0; i <= r; ++i) {
    std::string name = "d" + std::to_string(i);
    bool erased = (i == 0 && e2) || (i == 1 && e4);
    ds[i] = erased ? get_or(p, name, 1) : get(id, p, name);
    at_least(id, name, ds[i], 1);
  }
  long mu = 1;
  while ((1 - mu * k) % z != 0) ++mu;
  long base = (1 - mu * k) / z;
  // Full matrix first, then erase columns 1 and 3 (zero based) as flagged.
  std::vector<std::vector<long>> blocks{{k, k}, {z - k, z - k}};
  for (long i = 2; i <= r; ++i) blocks.push_back({1, 1});
  std::size_t cols = 2 * (r + 1);
  Rows rows(r + 2, std::vector<long>(cols, 0));
  for (long i = 1; i <= r; ++i) {
    rows[i - 1][0] = rows[i - 1][1] = -k;
    rows[i - 1][2 * i] = rows[i - 1][2 * i + 1] = blocks[i][0];
  }
  for (long i = 0; i <= r; ++i) rows[r][2 * i + 1] = ds[i];
  rows[r + 1][0] = rows[r + 1][1] = base;
  rows[r + 1][2] = rows[r + 1][3] = base + mu;
  std::vector<std::size_t> drop;
  if (e2) drop.push_back(1);
  if (e4) drop.push_back(3);
  for (auto it = drop.rbegin(); it != drop.rend(); ++it) {
    for (auto& row : rows) row.erase(row.begin() + static_cast<long>(*it));
    blocks[*it / 2].pop_back();
  }
  return make(blocks, 0, rows);
}

IntMatrix toric_matrix(const std::string& id, const Params& p) {
  if (id == "toric-1") {
    long k = get(id, p, "k");
    at_least(id, "k", k, 2);
    return matrix({{0, 0, k}, {0, 1, 0}, {1, 1, 1}});
  }
  if (id == "toric-2") {
    long k1 = get(id, p, "k1"), k2 = get(id, p, "k2");
    at_least(id, "k1", k1, 1);
    at_least(id, "k2", k2, 1);
    return matrix({{0, 0, k1, k2}, {0, 1, 0, 1}, {1, 1, 1, 1}});
  }
  return matrix({{0, 0, 2}, {0, 2, 0}, {1, 1, 1}});
}

DefiningData family_matrix(const std::string& id, const Params& p) {
  auto k_at_least = [&](long min) {
    long k = get(id, p, "k");
    at_least(id, "k", k, min);
    return k;
  };
  if (id == "4") {
    long k = k_at_least(2);
    return make({{k}, {2}, {2}}, 1, {{-k, 2, 0, 0}, {-k, 0, 2, 0}, {0, 0, 0, 1}, {1 - k, 1, 1, 1}});
  }
  if (id == "5-e") {
    long k = k_at_least(1), l = 2 * k + 1;
    return make({{l}, {2}, {2}}, 1, {{-l, 2, 0, 0}, {-l, 0, 2, 0}, {0, 1, 0, k + 1}, {-2 * k, 1, 1, 1}});
  }
  if (id == "5-o") {
    long k = k_at_least(2);
    return make({{k}, {2}, {2}}, 1, {{-k, 2, 0, 0}, {-k, 0, 2, 0}, {1, 0, 0, 0}, {1 - k, 1, 1, 1}});
  }
  if (id == "6") return make({{3}, {3}, {2}}, 1, {{-3, 3, 0, 0}, {-3, 0, 2, 0}, {0, 0, 0, 1}, {-2, 1, 1, 1}});
  if (id == "7") return make({{4}, {3}, {2}}, 1, {{-4, 3, 0, 0}, {-4, 0, 2, 0}, {0, 0, 0, 1}, {-3, 1, 1, 1}});
  if (id == "8") return make({{5}, {3}, {2}}, 1, {{-5, 3, 0, 0}, {-5, 0, 2, 0}, {0, 0, 0, 1}, {-4, 1, 1, 1}});
  if (id == "9") return series9(p);
  if (id == "10-e") {
    long k = k_at_least(2);
    return make({{k}, {2, 1}, {2, 1}}, 0,
                {{-k, 2, 1, 0, 0}, {-k, 0, 0, 2, 1}, {1, 0, 0, 0, 0}, {1 - k, 1, 1, 1, 1}});
  }
  if (id == "10-o") {
    long k = k_at_least(1), l = 2 * k + 1;
    return make({{l}, {2, 1}, {2}}, 0,
                {{-l, 2, 1, 0}, {-l, 0, 0, 2}, {0, 1, ceil_div(l, 4), 0}, {-2 * k, 1, 1, 1}});
  }
  if (id == "11") {
    long k = k_at_least(2);
    return make({{k}, {2, 1}, {2}}, 0, {{-k, 2, 1, 0}, {-k, 0, 0, 2}, {1, 0, 0, 0}, {1 - k, 1, 1, 1}});
  }
  if (id == "12-e-e" || id == "12-o-e/o") {
    long k1 = get(id, p, "k1"), k2 = get(id, p, "k2");
    at_least(id, "k1", k1, 1);
    at_least(id, "k2", k2, 1);
    if (id == "12-e-e")
      return make({{k1, k2}, {2}, {2}}, 0,
                  {{-k1, -k2, 2, 0}, {-k1, -k2, 0, 2}, {0, 1, 0, 0}, {1 - k1, 1 - k2, 1, 1}});
    // The printed entry (k1-k2+1)/2 agrees with k1-k2 only for k1-k2 = 1 and is cDV
    // only for k1-k2 in {1, 3}; k1-k2 is cDV throughout.
    long a = 2 * k1, b = 2 * k2 + 1;
    return make({{a, b}, {2}, {2}}, 0,
                {{-a, -b, 2, 0}, {-a, -b, 0, 2}, {0, k1 - k2, 1, 0}, {1 - a, -2 * k2, 1, 1}});
  }
  if (id == "13-e") {
    long z = get(id, p, "zeta");
    at_least(id, "zeta", z, 2);
    return make({{2 * z - 1}, {1, 1}, {1, 1}}, 0,
                {{1 - 2 * z, 1, 1, 0, 0}, {1 - 2 * z, 0, 0, 1, 1}, {0, 0, 1, 0, 1}, {2, 0, 0, 0, 0}});
  }
  if (id == "13-o") {
    long z = get(id, p, "zeta");
    at_least(id, "zeta", z, 3);
    if (z % 2 == 0) bad(id, "zeta must be odd");
    return make({{2 * z - 2}, {2}, {1, 1}}, 0,
                {{2 - 2 * z, 2, 0, 0}, {2 - 2 * z, 0, 1, 1}, {0, 0, 0, 1}, {z, -1, 0, 0}});
  }
  if (id == "14") return make({{3}, {3}, {1, 1}}, 0, {{-3, 3, 0, 0}, {-3, 0, 1, 1}, {0, 0, 0, 1}, {-1, 2, 0, 0}});
  if (id == "15")
    return make({{3, 1}, {3}, {2}}, 0, {{-3, -1, 3, 0}, {-3, -1, 0, 2}, {1, 2, 0, 0}, {-2, 0, 1, 1}});
  if (id == "16") return make({{4}, {2, 1}, {2}}, 0, {{-4, 2, 1, 0}, {-4, 0, 0, 2}, {0, 1, 2, 0}, {-3, 1, 1, 1}});
  if (id == "17")
    return make({{3, 2}, {3}, {2}}, 0, {{-3, -2, 3, 0}, {-3, -2, 0, 2}, {1, 1, 0, 0}, {-2, -1, 1, 1}});
  if (id == "18")
    return make({{4, 1}, {3}, {2}}, 0, {{-4, -1, 3, 0}, {-4, -1, 0, 2}, {1, 3, 0, 0}, {-3, 0, 1, 1}});
  bad(id, "unknown family");
}

std::string params_str(const Params& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : p) {
    os << (first ? "" : " ") << k << "=" << v;
    first = false;
  }
  return os.str();
}

std::string cokernel_str(const Cokernel& c) {
  std::ostringstream os;
  os << "Z^" << c.free_rank;
  for (const auto& t : c.torsion) os << "+Z/" << t.get_str();
  return os.str();
}

// Cartesian product of [lo_i, hi_i], last coordinate fastest.
void product(const std::vector<std::pair<long, long>>& ranges, const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == ranges.size()) {
      f(cur);
      return;
    }
    for (long v = ranges[i].first; v <= ranges[i].second; ++v) {
      cur.push_back(v);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

template <class T, class F>
std::vector<T> map_exec(std::size_t n, Exec exec, F f) {
  std::vector<T> out(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  }
  return out;
}

}  // namespace

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> r = build_registry();
  return r;
}

const RegistryEntry& registry_entry(const std::string& id) {
  for (const auto& e : registry())
    if (e.id == id) return e;
  throw PreconditionError("registry: unknown family " + id);
}

Instance instantiate(const std::string& id, const Params& params) {
  const RegistryEntry& e = registry_entry(id);
  check_names(e, params, id == "9" ? static_cast<std::size_t>(get_or(params, "r", 0)) : 0);
  Instance out{id, params, std::nullopt, std::nullopt};
  if (e.toric)
    out.cone = toric_matrix(id, params);
  else
    out.data = family_matrix(id, params);
  return out;
}

std::vector<NearMiss> near_misses() {
  auto pt = [](std::initializer_list<long> v) {
    IntVec out;
    for (long x : v) out.emplace_back(x);
    return out;
  };
  std::vector<NearMiss> out;
  auto add = [&](std::string name, DefiningData d, IntVec w) { out.push_back({std::move(name), std::move(d), std::move(w)}); };
  // Leading block (5,3,2) with zero d entries.
  add("(8) with free column (0,0,2,1)",
      make({{5}, {3}, {2}}, 1, {{-5, 3, 0, 0}, {-5, 0, 2, 0}, {0, 0, 0, 2}, {-4, 1, 1, 1}}), pt({0, 0, 1, 1}));
  add("(5,3,2) with (-1,-1,1,0) in leaf 0",
      make({{5, 1}, {3}, {2}}, 0, {{-5, -1, 3, 0}, {-5, -1, 0, 2}, {0, 1, 0, 0}, {-4, 0, 1, 1}}), pt({0, 0, 1, 1}));
  add("(5,3,2) with (1,0,2,1) in leaf 1",
      make({{5}, {3, 1}, {2}}, 0, {{-5, 3, 1, 0}, {-5, 0, 0, 2}, {0, 0, 2, 0}, {-4, 1, 1, 1}}), pt({0, 0, 1, 1}));
  add("(5,3,2) with (0,1,2,1) in leaf 2",
      make({{5}, {3}, {2, 1}}, 0, {{-5, 3, 0, 0}, {-5, 0, 2, 1}, {0, 0, 0, 2}, {-4, 1, 1, 1}}), pt({0, 0, 1, 1}));
  // Leading block (4,3,2) with zero d entries.
  add("(7) with free column (0,0,2,1)",
      make({{4}, {3}, {2}}, 1, {{-4, 3, 0, 0}, {-4, 0, 2, 0}, {0, 0, 0, 2}, {-3, 1, 1, 1}}), pt({0, 0, 1, 1}));
  add("(4,3,2) with (-2,-2,1,-1) in leaf 0",
      make({{4, 2}, {3}, {2}}, 0, {{-4, -2, 3, 0}, {-4, -2, 0, 2}, {0, 1, 0, 0}, {-3, -1, 1, 1}}), pt({0, 0, 1, 1}));
  add("(4,3,2) with (1,0,1,1) in leaf 1",
      make({{4}, {3, 1}, {2}}, 0, {{-4, 3, 1, 0}, {-4, 0, 0, 2}, {0, 0, 1, 0}, {-3, 1, 1, 1}}), pt({0, 0, 1, 1}));
  // Leading block (4,3,2) with d_01 = 1.
  add("(18) with d = 4",
      make({{4, 1}, {3}, {2}}, 0, {{-4, -1, 3, 0}, {-4, -1, 0, 2}, {1, 4, 0, 0}, {-3, 0, 1, 1}}), pt({-1, -1, 3, 0}));
  add("(4,3,2;1) with (-3,-3,2,-2) in leaf 0",
      make({{4, 3}, {3}, {2}}, 0, {{-4, -3, 3, 0}, {-4, -3, 0, 2}, {1, 2, 0, 0}, {-3, -2, 1, 1}}), pt({-1, -1, 3, 0}));
  add("(4,3,2;1) with (-2,-2,1,-1) in leaf 0",
      make({{4, 2}, {3}, {2}}, 0, {{-4, -2, 3, 0}, {-4, -2, 0, 2}, {1, 1, 0, 0}, {-3, -1, 1, 1}}), pt({0, 0, 2, 1}));
  add("(4,3,2;1) with (1,0,1,1) in leaf 1",
      make({{4}, {3, 1}, {2}}, 0, {{-4, 3, 1, 0}, {-4, 0, 0, 2}, {1, 0, 1, 0}, {-3, 1, 1, 1}}), pt({0, 0, 2, 1}));
  add("(4,3,2;1) with (0,1,2,1) in leaf 2",
      make({{4}, {3}, {2, 1}}, 0, {{-4, 3, 0, 0}, {-4, 0, 2, 1}, {1, 0, 0, 2}, {-3, 1, 1, 1}}), pt({-1, -1, 3, 0}));
  // Enlargements of the factorial and series matrices.
  add("(8) with free columns (0,0,1,1), (0,0,-1,1)",
      make({{5}, {3}, {2}}, 2, {{-5, 3, 0, 0, 0}, {-5, 0, 2, 0, 0}, {0, 0, 0, 1, -1}, {-4, 1, 1, 1, 1}}),
      pt({0, 0, 0, 1}));
  add("(18) with (-1,-1,2,0) in leaf 0",
      make({{4, 1, 1}, {3}, {2}}, 0,
           {{-4, -1, -1, 3, 0}, {-4, -1, -1, 0, 2}, {1, 3, 2, 0, 0}, {-3, 0, 0, 1, 1}}),
      pt({0, 0, 3, 1}));
  add("(15) with (1,0,1,1) in leaf 1",
      make({{3, 1}, {3, 1}, {2}}, 0,
           {{-3, -1, 3, 1, 0}, {-3, -1, 0, 0, 2}, {1, 2, 0, 1, 0}, {-2, 0, 1, 1, 1}}),
      pt({0, 0, 2, 1}));
  add("(12-e-e) k=(2,1) with (-1,-1,-1,0) in leaf 0",
      make({{2, 1, 1}, {2}, {2}}, 0,
           {{-2, -1, -1, 2, 0}, {-2, -1, -1, 0, 2}, {0, 1, -1, 0, 0}, {-1, 0, 0, 1, 1}}),
      pt({0, 0, 0, 1}));
  add("(5-o) k=2 with free column (0,0,2,1)",
      make({{2}, {2}, {2}}, 2, {{-2, 2, 0, 0, 0}, {-2, 0, 2, 0, 0}, {1, 0, 0, 0, 2}, {-1, 1, 1, 1, 1}}),
      pt({0, 0, 1, 1}));
  add("(5-o) k=3 with (1,0,1,1) in leaf 1",
      make({{3}, {2, 1}, {2}}, 1, {{-3, 2, 1, 0, 0}, {-3, 0, 0, 2, 0}, {1, 0, 1, 0, 0}, {-2, 1, 1, 1, 1}}),
      pt({0, 0, 1, 1}));
  add("(4) k=4 with free column (0,0,2,1)",
      make({{4}, {2}, {2}}, 1, {{-4, 2, 0, 0}, {-4, 0, 2, 0}, {0, 0, 0, 2}, {-3, 1, 1, 1}}), pt({0, 0, 1, 1}));
  return out;
}

bool toric_cdv(const IntMatrix& cone) {
  if (cone.rows() != 3) throw PreconditionError("toric_cdv: cone must live in dimension 3");
  std::vector<RatVec> pts;
  for (std::size_t j = 0; j < cone.cols(); ++j) {
    if (cone(2, j) != 1) return false;
    pts.push_back({Rat(cone(0, j)), Rat(cone(1, j))});
  }
  RatPolytope poly = make_polytope(pts);
  if (poly.dimension != 2) return false;
  // generators must be the vertices, so the cone is generated at height one
  if (poly.vertices.size() != cone.cols()) return false;
  return lattice_points(poly, Region::relative_interior).empty();
}

std::vector<Params> parameter_grid(const std::string& id, const ParamBounds& bounds) {
  const RegistryEntry& e = registry_entry(id);
  auto hi = [&](const std::string& name) {
    auto it = bounds.find(name);
    if (it != bounds.end()) return it->second;
    for (const auto& s : e.params)
      if (s.name == name) return s.default_max;
    return 0L;
  };
  std::vector<Params> out;
  if (id == "9") {
    for (long z = 2; z <= hi("zeta"); ++z)
      for (long k = 1; k < z && k <= hi("k"); ++k) {
        if (std::gcd(z, k) != 1) continue;
        for (long r = 2; r <= hi("r"); ++r)
          for (long e2 = 0; e2 <= (k >= 2 ? std::min(1L, hi("erase2")) : 0); ++e2)
            for (long e4 = 0; e4 <= (z - k >= 2 ? std::min(1L, hi("erase4")) : 0); ++e4) {
              std::vector<std::pair<long, long>> ranges;
              for (long i = 0; i <= r; ++i) {
                bool erased = (i == 0 && e2) || (i == 1 && e4);
                ranges.emplace_back(1, erased ? 1 : hi("d"));
              }
              product(ranges, [&](const std::vector<long>& ds) {
                Params p{{"zeta", z}, {"k", k}, {"r", r}};
                if (e2) p["erase2"] = 1;
                if (e4) p["erase4"] = 1;
                for (long i = 0; i <= r; ++i) {
                  bool erased = (i == 0 && e2) || (i == 1 && e4);
                  if (!erased) p["d" + std::to_string(i)] = ds[i];
                }
                out.push_back(p);
              });
            }
      }
    return out;
  }
  std::vector<std::pair<long, long>> ranges;
  for (const auto& s : e.params) ranges.emplace_back(s.min, hi(s.name));
  product(ranges, [&](const std::vector<long>& v) {
    Params p;
    for (std::size_t i = 0; i < v.size(); ++i) p[e.params[i].name] = v[i];
    if (id == "13-o" && p["zeta"] % 2 == 0) return;
    out.push_back(p);
  });
  return out;
}

InstanceCheck check_instance(const std::string& id, const Params& params) {
  InstanceCheck c{params, true, ""};
  auto fail = [&](const std::string& why) {
    c.ok = false;
    c.failure = id + " [" + params_str(params) + "]: " + why;
    return c;
  };
  try {
    Instance inst = instantiate(id, params);
    if (inst.cone) {
      if (!toric_cdv(*inst.cone)) return fail("not a hollow polygon at height one");
      return c;
    }
    const DefiningData& d = *inst.data;
    auto issues = validate(d);
    if (!issues.empty()) return fail("invalid: " + issues.front().message);
    GorensteinData g = gorenstein_data(d);
    if (!g.q_gorenstein || g.iota != 1) return fail("not Gorenstein");
    SingularityReport s = singularity_type(d);
    if (s.log_terminal != true) return fail("not log terminal");
    if (s.canonical != true) return fail("not canonical");
    if (s.cdv != true) return fail("not cDV");
  } catch (const std::exception& ex) {
    return fail(ex.what());
  }
  return c;
}

FamilyReport verify_family(const std::string& id, const ParamBounds& bounds, Exec exec) {
  FamilyReport rep;
  rep.id = id;
  std::vector<Params> grid = parameter_grid(id, bounds);
  if (exec == Exec::serial) {
    for (const auto& p : grid) {
      rep.instances.push_back(check_instance(id, p));
      if (!rep.instances.back().ok) break;
    }
  } else {
    rep.instances = map_exec<InstanceCheck>(grid.size(), exec, [&](std::size_t i) { return check_instance(id, grid[i]); });
    auto bad_it = std::find_if(rep.instances.begin(), rep.instances.end(), [](const InstanceCheck& c) { return !c.ok; });
    if (bad_it != rep.instances.end()) rep.instances.erase(bad_it + 1, rep.instances.end());
  }
  if (!rep.instances.empty() && !rep.instances.back().ok) rep.first_failure = rep.instances.back();
  return rep;
}

std::string Fingerprint::str() const {
  std::ostringstream os;
  os << exponents << " Cl=" << class_group << " zeta=" << zeta << " disc={";
  for (std::size_t i = 0; i < discrepancies.size(); ++i) os << (i ? "," : "") << discrepancies[i];
  os << "} roof={";
  for (std::size_t i = 0; i < roof_points.size(); ++i) os << (i ? "," : "") << roof_points[i];
  os << "}";
  return os.str();
}

Fingerprint fingerprint(const DefiningData& data) {
  Fingerprint f;
  f.exponents = normalize(cox_exponents(data)).state.str();
  f.class_group = cokernel_str(class_group(data));
  f.zeta = gorenstein_data(data).zeta.get_str();
  for (const auto& dsc : discrepancies(data)) f.discrepancies.push_back(dsc.value ? to_string(*dsc.value) : "<=-1");
  std::sort(f.discrepancies.begin(), f.discrepancies.end());
  for (const auto& roof : leaf_roofs(data)) f.roof_points.push_back(lattice_points(roof.roof).size());
  std::sort(f.roof_points.begin(), f.roof_points.end());
  return f;
}

std::size_t SearchReport::unmatched() const {
  return static_cast<std::size_t>(
      std::count_if(hits.begin(), hits.end(), [](const SearchHit& h) { return h.matches.empty(); }));
}

std::vector<ExponentData> search_shapes() {
  std::vector<ExponentData> out;
  for (long a = 2; a <= 6; ++a)
    for (long b = 2; b <= a; ++b)
      for (long c = 2; c <= b; ++c)
        if (is_platonic_tuple({Int(a), Int(b), Int(c)})) out.push_back(exps({{a}, {b}, {c}}, 1));
  for (long a = 1; a <= 6; ++a)
    for (long a2 = 1; a2 <= a; ++a2)
      for (long b = 2; b <= 6; ++b)
        for (long c = 2; c <= b; ++c) {
          ExponentData e = exps({{a, a2}, {b}, {c}}, 0);
          if (is_platonic_ring(e)) out.push_back(e);
        }
  return out;
}

namespace {

bool lex_less(const std::vector<long>& a, const std::vector<long>& b) { return a < b; }

bool leading_positive(const std::vector<long>& v) {
  for (long x : v)
    if (x != 0) return x > 0;
  return false;
}

struct Candidate {
  ExponentData e;
  std::vector<long> x, y;
};

std::optional<SearchHit> evaluate(const Candidate& c, bool* gorenstein) {
  DefiningData d;
  d.exponents = c.e;
  d.d = IntMatrix(2, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    d.d(0, j) = c.x[j];
    d.d(1, j) = c.y[j];
  }
  *gorenstein = false;
  if (!validate(d).empty()) return std::nullopt;
  if (!affine_profile(d).pointed) return std::nullopt;
  GorensteinData g = gorenstein_data(d);
  if (!g.q_gorenstein || g.iota != 1) return std::nullopt;
  *gorenstein = true;
  SingularityReport s = singularity_type(d);
  if (s.canonical != true || s.cdv != true) return std::nullopt;
  return SearchHit{d, fingerprint(d), {}};
}

const std::vector<std::pair<std::string, Fingerprint>>& registry_fingerprints() {
  static const std::vector<std::pair<std::string, Fingerprint>> table = [] {
    std::vector<std::pair<std::string, Fingerprint>> t;
    for (const auto& e : registry()) {
      if (e.toric) continue;
      ParamBounds small{{"k", 11}, {"k1", 6}, {"k2", 6}, {"zeta", 12}, {"r", 2}, {"d", 6}};
      for (const auto& p : parameter_grid(e.id, small)) {
        DefiningData d = *instantiate(e.id, p).data;
        if (d.exponents.cols() != 4) continue;
        std::ostringstream name;
        name << e.id;
        if (!p.empty()) name << " [" << params_str(p) << "]";
        t.emplace_back(name.str(), fingerprint(d));
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

SearchReport search(long bound, Exec exec, const std::vector<ExponentData>& shapes) {
  if (bound < 0 || bound > 6) throw PreconditionError("search: bound must lie in [0, 6]");
  std::vector<std::vector<long>> rows;
  product(std::vector<std::pair<long, long>>(4, {-bound, bound}), [&](const std::vector<long>& v) {
    if (leading_positive(v)) rows.push_back(v);
  });
  std::vector<Candidate> cands;
  for (const auto& e : shapes.empty() ? search_shapes() : shapes)
    for (const auto& x : rows)
      for (const auto& y : rows)
        if (lex_less(x, y)) cands.push_back({e, x, y});
  SearchReport rep;
  rep.candidates = cands.size();
  std::vector<char> gor(cands.size(), 0);
  auto results = map_exec<std::optional<SearchHit>>(cands.size(), exec, [&](std::size_t i) {
    bool g = false;
    std::optional<SearchHit> hit;
    try {
      hit = evaluate(cands[i], &g);
    } catch (const std::exception&) {
      hit.reset();
    }
    gor[i] = g;
    return hit;
  });
  rep.gorenstein = static_cast<std::size_t>(std::count(gor.begin(), gor.end(), 1));
  const auto& table = registry_fingerprints();
  for (auto& h : results) {
    if (!h) continue;
    for (const auto& [name, fp] : table)
      if (fp == h->fp) h->matches.push_back(name);
    rep.hits.push_back(std::move(*h));
  }
  return rep;
}

}  // namespace cplx1
