// Command-line front end: validate, analyze, acomplex, iterate, registry, verify-cdv, search.
#include "cplx1/acomplex.hpp"
#include "cplx1/coxiter.hpp"
#include "cplx1/gorenstein.hpp"
#include "cplx1/invariants.hpp"
#include "cplx1/registry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

using namespace cplx1;
using nlohmann::json;

namespace {

enum Exit { ok = 0, invalid = 1, precondition = 2, internal = 3 };

std::string read_input(const std::string& file) {
  if (file == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(file);
  if (!in) throw ValidationError("format", "cannot read " + file);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Accepts defining data, or an analysis report whose "input" holds it.
json load_json(const std::string& file) {
  json j;
  try {
    j = json::parse(read_input(file));
  } catch (const json::parse_error& e) {
    throw ValidationError("format", std::string("malformed JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("input") && j["input"].is_object()) return j["input"];
  return j;
}

json int_json(const Int& x) { return x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()); }

json ints_json(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(int_json(x));
  return a;
}

json rats_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json opt_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

std::string yes_no(const json& b) { return b.is_null() ? "n/a" : (b.get<bool>() ? "yes" : "no"); }

json ring_json(const RingState& s) {
  if (s.polynomial) return json{{"polynomial", true}, {"dimension", s.dimension}};
  json j = to_json(s.data);
  j.erase("format");
  return j;
}

std::string cokernel_str(const json& cg) {
  std::vector<std::string> parts;
  long rank = cg["rank"].get<long>();
  if (rank == 1) parts.push_back("Z");
  if (rank > 1) parts.push_back("Z^" + std::to_string(rank));
  for (const auto& t : cg["torsion"]) parts.push_back("Z/" + (t.is_string() ? t.get<std::string>() : t.dump()));
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

std::string vec_str(const json& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
  return out + ")";
}

// Sections that do not apply hold null plus a note.
json analyze(const DefiningData& data) {
  json r;
  r["input"] = to_json(data);
  r["valid"] = true;
  NormalizedData nd = normalize(data);
  r["normalized"] = nd.polynomial ? json{{"polynomial", true}, {"dimension", nd.dimension}} : to_json(nd.data);
  Cokernel cg = class_group(data);
  r["class_group"] = {{"rank", cg.free_rank}, {"torsion", ints_json(cg.torsion)}};
  json notes = json::object();
  const bool type2 = data.exponents.variant == 2;
  const bool affine = affine_profile(data).pointed;
  r["gorenstein"] = nullptr;
  r["singularities"] = nullptr;
  r["anticanonical"] = nullptr;
  if (type2 && affine) {
    GorensteinData g = gorenstein_data(data);
    json jg{{"q_gorenstein", g.q_gorenstein}};
    if (g.q_gorenstein) {
      jg["iota"] = int_json(g.iota);
      jg["zeta"] = int_json(g.zeta);
      jg["mu"] = ints_json(g.mu);
      jg["eta"] = ints_json(g.eta);
    }
    r["gorenstein"] = jg;
    if (g.q_gorenstein) {
      SingularityReport s = singularity_type(data);
      json w = json::object();
      for (const auto& [k, pts] : s.witnesses) {
        json a = json::array();
        for (const auto& p : pts) a.push_back(ints_json(p));
        w[k] = a;
      }
      r["singularities"] = {{"log_terminal", opt_bool(s.log_terminal)}, {"canonical", opt_bool(s.canonical)},
                            {"terminal", opt_bool(s.terminal)},         {"cdv", opt_bool(s.cdv)},
                            {"witnesses", w}};
      if (s.log_terminal == true && data.s() <= 2) {
        json ac = json::parse(export_complex(data, ExportFormat::json));
        r["anticanonical"] = {{"vertices", ac["vertices"]}};
      }
    } else {
      notes["singularities"] = "not Q-Gorenstein";
    }
  } else {
    notes["gorenstein"] = type2 ? "X is not affine" : "type 1 data";
  }
  const ExponentData& e = data.exponents;
  json curve = {{"genus", nullptr}, {"total_space_rational", nullptr}, {"factorial", nullptr}};
  if (type2) {
    curve["genus"] = int_json(genus(e));
    curve["total_space_rational"] = is_total_space_rational(e);
    curve["factorial"] = is_factorial(e);
  }
  r["curve"] = curve;
  r["chain"] = nullptr;
  if (type2 && is_platonic_ring(e)) {
    Chain ch = iterate_chain(data);
    json states = json::array();
    for (const auto& s : ch.states) states.push_back(ring_json(s));
    r["chain"] = states;
  } else if (type2) {
    notes["chain"] = "ring is not platonic";
  }
  if (!notes.empty()) r["notes"] = notes;
  return r;
}

void print_report(const json& r, std::ostream& os) {
  os << "valid: yes\n";
  if (r["normalized"].contains("polynomial"))
    os << "normalized: polynomial(" << r["normalized"]["dimension"] << ")\n";
  else
    os << "normalized: " << normalize(defining_data_from_json(r["normalized"]).exponents).state.str() << "\n";
  os << "class group: " << cokernel_str(r["class_group"]) << "\n";
  if (!r["gorenstein"].is_null()) {
    const json& g = r["gorenstein"];
    os << "Q-Gorenstein: " << yes_no(g["q_gorenstein"]) << "\n";
    if (g["q_gorenstein"].get<bool>())
      os << "iota: " << g["iota"] << "  zeta: " << g["zeta"] << "  mu: " << vec_str(g["mu"])
         << "  eta: " << vec_str(g["eta"]) << "\n";
  }
  if (!r["singularities"].is_null()) {
    const json& s = r["singularities"];
    os << "log terminal: " << yes_no(s["log_terminal"]) << "  canonical: " << yes_no(s["canonical"])
       << "  terminal: " << yes_no(s["terminal"]) << "  cDV: " << yes_no(s["cdv"]) << "\n";
    for (const auto& [k, pts] : s["witnesses"].items()) {
      os << k << " witnesses:";
      for (const auto& p : pts) os << " " << vec_str(p);
      os << "\n";
    }
  }
  if (!r["anticanonical"].is_null()) {
    os << "anticanonical vertices:";
    for (const auto& v : r["anticanonical"]["vertices"]) os << " " << vec_str(v);
    os << "\n";
  }
  const json& c = r["curve"];
  if (!c["genus"].is_null())
    os << "genus: " << c["genus"] << "  total space rational: " << yes_no(c["total_space_rational"])
       << "  factorial: " << yes_no(c["factorial"]) << "\n";
  if (!r["chain"].is_null()) {
    os << "chain:";
    bool first = true;
    for (const auto& s : r["chain"]) {
      os << (first ? " " : " -> ");
      first = false;
      if (s.contains("polynomial"))
        os << "polynomial(" << s["dimension"] << ")";
      else
        os << exponent_data_from_json(s).str();
    }
    os << "\n";
  }
  if (r.contains("notes"))
    for (const auto& [k, v] : r["notes"].items()) os << k << ": " << v.get<std::string>() << "\n";
}

DefiningData load_data(const std::string& file) { return defining_data_from_json(load_json(file)); }

DefiningData load_valid(const std::string& file) {
  DefiningData d = load_data(file);
  auto issues = validate(d);
  if (!issues.empty()) throw ValidationError(issues);
  return d;
}

int cmd_validate(const std::string& file) {
  DefiningData d = load_data(file);
  auto issues = validate(d);
  if (issues.empty()) {
    std::cout << "valid\n";
    return ok;
  }
  for (const auto& i : issues) std::cout << i.code << ": " << i.message << "\n";
  return invalid;
}

int cmd_analyze(const std::string& file, bool as_json) {
  json r = analyze(load_valid(file));
  if (as_json)
    std::cout << r.dump(2) << "\n";
  else
    print_report(r, std::cout);
  return ok;
}

int cmd_acomplex(const std::string& file, const std::string& mesh, bool as_json) {
  DefiningData d = load_valid(file);
  if (!mesh.empty()) {
    std::string off = export_complex(d, ExportFormat::off);
    std::ofstream out(mesh);
    if (!out) throw std::runtime_error("cannot write " + mesh);
    out << off;
    std::cout << "wrote " << mesh << "\n";
    return ok;
  }
  json j = json::parse(export_complex(d, ExportFormat::json));
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return ok;
  }
  std::cout << "vertices:";
  for (const auto& v : j["vertices"]) std::cout << " " << vec_str(v);
  std::cout << "\n";
  for (const auto& p : j["pieces"]) {
    std::cout << "leaf " << (p["leaf"].is_string() ? p["leaf"].get<std::string>() : p["leaf"].dump())
              << ": plane " << vec_str(p["plane"]) << " = " << p["rhs"].get<std::string>() << ", roof";
    for (const auto& k : p["roof"]) std::cout << " " << k;
    std::cout << "\n";
  }
  return ok;
}

int cmd_iterate(const std::string& file, int max_steps) {
  json j = load_json(file);
  ExponentData e = j.contains("d") ? defining_data_from_json(j).exponents : exponent_data_from_json(j);
  auto issues = validate(e);
  if (!issues.empty()) throw ValidationError(issues);
  Chain ch;
  try {
    ch = iterate_chain(e, max_steps);
  } catch (const std::runtime_error& ex) {
    if (dynamic_cast<const PreconditionError*>(&ex) || dynamic_cast<const ValidationError*>(&ex)) throw;
    throw PreconditionError(ex.what());
  }
  for (std::size_t i = 0; i < ch.states.size(); ++i) {
    std::cout << ch.states[i].str();
    if (i < ch.steps.size()) {
      std::cout << "  c=" << to_string(ch.steps[i].c) << " via " << ch.steps[i].p1_source;
    }
    std::cout << "\n";
  }
  std::cout << "terminal: " << ch.terminal << "\n";
  return ok;
}

Params parse_params(const std::vector<std::string>& raw) {
  Params p;
  for (const auto& s : raw) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw PreconditionError("parameter " + s + " is not name=value");
    try {
      p[s.substr(0, eq)] = std::stol(s.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw PreconditionError("parameter " + s + " has no integer value");
    }
  }
  return p;
}

int cmd_registry_list() {
  for (const auto& e : registry()) {
    std::cout << e.id;
    if (!e.params.empty()) {
      std::cout << " (";
      for (std::size_t i = 0; i < e.params.size(); ++i)
        std::cout << (i ? ", " : "") << e.params[i].name << ">=" << e.params[i].min;
      std::cout << ")";
    }
    std::cout << "  " << e.cdv_type << "  " << e.equation << "\n";
  }
  return ok;
}

int cmd_registry_emit(const std::string& id, const std::vector<std::string>& raw) {
  Instance inst = instantiate(id, parse_params(raw));
  if (inst.data) {
    std::cout << to_json(*inst.data).dump() << "\n";
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < inst.cone->rows(); ++i) rows.push_back(ints_json(inst.cone->row(i)));
    std::cout << json{{"format", "cplx1/toric"}, {"cone", rows}}.dump() << "\n";
  }
  return ok;
}

std::string params_str(const Params& p) {
  std::string out;
  for (const auto& [k, v] : p) out += (out.empty() ? "" : " ") + k + "=" + std::to_string(v);
  return out;
}

int cmd_verify(long max_param, bool serial) {
  Exec exec = serial ? Exec::serial : Exec::parallel;
  bool all = true;
  for (const auto& e : registry()) {
    ParamBounds b;
    if (max_param > 0)
      for (const auto& s : e.params)
        if (s.name != "erase2" && s.name != "erase4") b[s.name] = max_param;
    FamilyReport rep = verify_family(e.id, b, exec);
    std::cout << e.id << ": " << rep.instances.size() << " instances " << (rep.passed() ? "PASS" : "FAIL") << "\n";
    if (!rep.passed()) {
      std::cout << "  " << rep.first_failure->failure << "\n";
      all = false;
    }
  }
  for (const auto& n : near_misses()) {
    bool excluded = false;
    try {
      CdvResult r = is_cdv(n.data);
      excluded = !r.verdict && std::find(r.witnesses.begin(), r.witnesses.end(), n.witness) != r.witnesses.end();
    } catch (const std::exception& ex) {
      std::cout << "  " << ex.what() << "\n";
    }
    std::cout << "near miss " << n.name << ": witness " << to_string(n.witness) << (excluded ? " PASS" : " FAIL")
              << "\n";
    all = all && excluded;
  }
  return all ? ok : invalid;
}

int cmd_search(long bound, bool serial) {
  SearchReport rep = search(bound, serial ? Exec::serial : Exec::parallel);
  std::map<std::string, std::pair<std::size_t, const SearchHit*>> groups;
  for (const auto& h : rep.hits) {
    auto& g = groups[h.fp.str()];
    if (g.first++ == 0) g.second = &h;
  }
  std::cout << "candidates: " << rep.candidates << "\ngorenstein: " << rep.gorenstein << "\ncdv survivors: " << rep.hits.size()
            << "\ndistinct fingerprints: " << groups.size() << "\nunmatched survivors: " << rep.unmatched() << "\n";
  for (const auto& [fp, g] : groups) {
    std::cout << g.first << "  " << fp << "  ";
    if (g.second->matches.empty()) {
      std::cout << "UNMATCHED e.g. d = " << to_string(g.second->data.d.row(0)) << " " << to_string(g.second->data.d.row(1));
    } else {
      std::cout << "-> " << g.second->matches.front();
      if (g.second->matches.size() > 1) std::cout << " (+" << g.second->matches.size() - 1 << ")";
    }
    std::cout << "\n";
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complexity-one T-varieties: defining data, singularities, Cox ring iteration"};
  app.require_subcommand(1);
  std::string file, mesh, id;
  bool as_json = false, serial = false;
  int max_steps = 10;
  long max_param = 0, bound = 1;
  std::vector<std::string> raw_params;

  auto* v = app.add_subcommand("validate", "check defining data");
  v->add_option("FILE", file, "JSON file, - for stdin")->required();
  auto* an = app.add_subcommand("analyze", "full report");
  an->add_option("FILE", file, "JSON file, - for stdin")->required();
  an->add_flag("--json", as_json, "emit the JSON report");
  auto* ac = app.add_subcommand("acomplex", "anticanonical complex");
  ac->add_option("FILE", file, "JSON file, - for stdin")->required();
  auto* mesh_opt = ac->add_option("--mesh", mesh, "write an OFF mesh");
  ac->add_flag("--json", as_json, "emit JSON")->excludes(mesh_opt);
  auto* it = app.add_subcommand("iterate", "Cox ring iteration");
  it->add_option("FILE", file, "JSON file, - for stdin")->required();
  it->add_option("--max-steps", max_steps, "step limit")->check(CLI::PositiveNumber);
  auto* reg = app.add_subcommand("registry", "classification matrices");
  reg->require_subcommand(1);
  auto* list = reg->add_subcommand("list", "list families");
  auto* emit = reg->add_subcommand("emit", "print the defining data of a family");
  emit->add_option("ID", id, "family id")->required();
  emit->add_option("--param", raw_params, "name=value")->take_all();
  auto* ver = app.add_subcommand("verify-cdv", "sweep every family and the near misses");
  ver->add_option("--max-param", max_param, "bound for every parameter")->check(CLI::PositiveNumber);
  ver->add_flag("--serial", serial, "single thread");
  auto* se = app.add_subcommand("search", "brute-force 4x4 search");
  se->add_option("--bound", bound, "d entries in [-B, B]")->check(CLI::Range(0, 6));
  se->add_flag("--serial", serial, "single thread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : precondition;
  }
  try {
    if (*v) return cmd_validate(file);
    if (*an) return cmd_analyze(file, as_json);
    if (*ac) return cmd_acomplex(file, mesh, as_json);
    if (*it) return cmd_iterate(file, max_steps);
    if (*list) return cmd_registry_list();
    if (*emit) return cmd_registry_emit(id, raw_params);
    if (*ver) return cmd_verify(max_param, serial);
    if (*se) return cmd_search(bound, serial);
  } catch (const ValidationError& e) {
    for (const auto& i : e.issues()) std::cerr << i.code << ": " << i.message << "\n";
    return invalid;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return precondition;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return precondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return internal;
  }
  return internal;
}
