#include "glh/json_io.hpp"

#include <fstream>
#include <sstream>

#include "glh/error.hpp"

namespace glh::json_io {

namespace {

std::string join(const std::string& ctx, const std::string& key) {
  return ctx.empty() ? key : ctx + "." + key;
}

const Json& require(const Json& j, const std::string& key, const std::string& ctx) {
  if (!j.is_object()) throw ParseError(ctx + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(join(ctx, key) + ": missing");
  return *it;
}

int as_int(const Json& j, const std::string& ctx) {
  if (!j.is_number_integer()) throw ParseError(ctx + ": expected an integer");
  return j.get<int>();
}

double as_double(const Json& j, const std::string& ctx) {
  if (!j.is_number()) throw ParseError(ctx + ": expected a number");
  return j.get<double>();
}

bool as_bool(const Json& j, const std::string& ctx) {
  if (!j.is_boolean()) throw ParseError(ctx + ": expected true or false");
  return j.get<bool>();
}

Complex as_complex(const Json& j, const std::string& ctx) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError(ctx + ": expected a number or [re, im]");
}

std::string as_string(const Json& j, const std::string& ctx) {
  if (!j.is_string()) throw ParseError(ctx + ": expected a string");
  return j.get<std::string>();
}

int read_n(const Json& j, const std::string& ctx) {
  const int n = as_int(require(j, "n", ctx), join(ctx, "n"));
  if (n < 1 || n > kMaxGenerators) throw ParseError(join(ctx, "n") + ": must be in 1..64");
  return n;
}

GrassmannElement optional_element(const Json& j, const std::string& key, const std::string& ctx,
                                  int n) {
  auto it = j.find(key);
  if (it == j.end()) return GrassmannElement::zero(n);
  return grassmann_from_json(*it, join(ctx, key), n);
}

std::vector<int> int_list(const Json& j, const std::string& ctx) {
  if (!j.is_array()) throw ParseError(ctx + ": expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], ctx + "[" + std::to_string(i) + "]"));
  return out;
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

}  // namespace

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

GrassmannElement grassmann_from_json(const Json& j, const std::string& field, int n) {
  if (j.is_number() || j.is_array()) return GrassmannElement::scalar(n, as_complex(j, field));
  if (!j.is_object()) throw ParseError(field + ": expected a Grassmann element object");
  if (j.contains("n")) {
    const int declared = as_int(j["n"], join(field, "n"));
    if (declared != n) {
      throw ParseError(join(field, "n") + ": expected " + std::to_string(n) + " generators, got " +
                       std::to_string(declared));
    }
  }
  GrassmannElement x = GrassmannElement::zero(n);
  if (!j.contains("terms")) return x;
  const Json& terms = j["terms"];
  if (!terms.is_array()) throw ParseError(join(field, "terms") + ": expected an array");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string ctx = join(field, "terms[" + std::to_string(t) + "]");
    const std::vector<int> mono = int_list(require(terms[t], "mono", ctx), join(ctx, "mono"));
    for (int i : mono) {
      if (i < 1 || i > n) throw ParseError(join(ctx, "mono") + ": generator " + std::to_string(i) + " out of range");
    }
    const double re = terms[t].contains("re") ? as_double(terms[t]["re"], join(ctx, "re")) : 0.0;
    const double im = terms[t].contains("im") ? as_double(terms[t]["im"], join(ctx, "im")) : 0.0;
    x += GrassmannElement::product_of(n, mono, Complex(re, im));
  }
  return x;
}

Json to_json(const GrassmannElement& x) {
  Json terms = Json::array();
  for (const auto& [m, c] : x.terms()) {
    terms.push_back({{"mono", monomial::indices(m)}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"n", x.n()}, {"terms", terms}};
}

GroupCoords coords_from_json(const Json& j, const std::string& field, int n) {
  if (!j.is_object()) throw ParseError(field + ": expected group coordinates");
  GroupCoords c{optional_element(j, "h", field, n), optional_element(j, "s", field, n),
                optional_element(j, "alpha", field, n), optional_element(j, "beta", field, n)};
  try {
    c.validate();
  } catch (const ParityError& e) {
    throw ParseError(field + ": " + e.what());
  }
  return c;
}

Json to_json(const GroupCoords& c) {
  return {{"h", to_json(c.h)}, {"s", to_json(c.s)}, {"alpha", to_json(c.alpha)}, {"beta", to_json(c.beta)}};
}

SuperMatrix11 supermatrix_from_json(const Json& j, const std::string& field, int n) {
  return {optional_element(j, "a", field, n), optional_element(j, "beta", field, n),
          optional_element(j, "gamma", field, n), optional_element(j, "d", field, n)};
}

Json to_json(const SuperMatrix11& m) {
  return {{"a", to_json(m.a)}, {"beta", to_json(m.beta)}, {"gamma", to_json(m.gamma)}, {"d", to_json(m.d)}};
}

ConjugationTable conjugation_from_json(const Json& j, const std::string& field, int n) {
  auto it = j.find("conjugation");
  if (it == j.end()) {
    return n % 2 == 0 ? ConjugationTable::halves(n) : ConjugationTable::self_conjugate(n);
  }
  const std::vector<int> pairing = int_list(*it, join(field, "conjugation"));
  if (static_cast<int>(pairing.size()) != n) {
    throw ParseError(join(field, "conjugation") + ": needs one entry per generator");
  }
  try {
    return ConjugationTable(pairing);
  } catch (const Error& e) {
    throw ParseError(join(field, "conjugation") + ": " + e.what());
  }
}

Nerve nerve_from_json(const Json& j) {
  const std::vector<int> vertices = int_list(require(j, "vertices", ""), "vertices");
  std::vector<Simplex> simplices;
  if (j.contains("simplices")) {
    const Json& s = j["simplices"];
    if (!s.is_object()) throw ParseError("simplices: expected an object keyed by dimension");
    for (const auto& [dim, list] : s.items()) {
      if (dim != "1" && dim != "2" && dim != "3") {
        throw ParseError("simplices." + dim + ": dimension must be 1, 2 or 3");
      }
      if (!list.is_array()) throw ParseError("simplices." + dim + ": expected an array");
      for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string ctx = "simplices." + dim + "[" + std::to_string(k) + "]";
        Simplex sx = int_list(list[k], ctx);
        if (static_cast<int>(sx.size()) != std::stoi(dim) + 1) {
          throw ParseError(ctx + ": expected " + std::to_string(std::stoi(dim) + 1) + " vertices");
        }
        simplices.push_back(std::move(sx));
      }
    }
  }
  try {
    return Nerve(vertices, simplices);
  } catch (const DomainError& e) {
    throw ParseError(std::string("nerve: ") + e.what());
  }
}

TransitionData transition_from_json(const Json& j) {
  const int n = read_n(j, "");
  GroupMode mode = GroupMode::SL;
  if (j.contains("mode")) {
    const std::string m = as_string(j["mode"], "mode");
    if (m == "gl") {
      mode = GroupMode::GL;
    } else if (m != "sl") {
      throw ParseError("mode: expected \"sl\" or \"gl\"");
    }
  }
  TransitionData data(n, mode);
  if (j.contains("modulo_2pi_i")) data.modulo_2pi_i = as_bool(j["modulo_2pi_i"], "modulo_2pi_i");
  const Json& edges = require(j, "edges", "");
  if (!edges.is_object()) throw ParseError("edges: expected an object keyed by \"i,j\"");
  for (const auto& [key, value] : edges.items()) {
    const std::string ctx = "edges." + key;
    const Simplex s = parse_simplex_key(key);
    if (s.size() != 2 || s[0] == s[1]) throw ParseError(ctx + ": key must name two distinct charts");
    GroupCoords g = coords_from_json(value, ctx, n);
    if (mode == GroupMode::SL && !g.s.is_zero()) throw ParseError(ctx + ".s: must be zero in sl mode");
    data.set(s[0], s[1], std::move(g));
  }
  if (j.contains("triangles")) {
    const Json& tri = j["triangles"];
    if (!tri.is_object()) throw ParseError("triangles: expected an object keyed by \"i,j,k\"");
    for (const auto& [key, value] : tri.items()) {
      const std::string ctx = "triangles." + key;
      Simplex s = parse_simplex_key(key);
      if (s.size() != 3) throw ParseError(ctx + ": key must name three charts");
      const int sign = sort_simplex(s);
      if (sign == 0) throw ParseError(ctx + ": repeated chart");
      data.windings[s] = sign * as_int(require(value, "n", ctx), join(ctx, "n"));
    }
  }
  return data;
}

HiggsCechData cech_higgs_from_json(const Json& j, int n) {
  if (j.contains("n") && as_int(j["n"], "n") != n) {
    throw ParseError("n: higgs data and transition data use different generator counts");
  }
  HiggsCechData h;
  if (j.contains("check_a")) h.check_a = as_bool(j["check_a"], "check_a");
  const Json& vertices = require(j, "vertices", "");
  if (!vertices.is_object()) throw ParseError("vertices: expected an object keyed by chart");
  for (const auto& [key, value] : vertices.items()) {
    const std::string ctx = "vertices." + key;
    int v = 0;
    try {
      v = std::stoi(key);
    } catch (const std::exception&) {
      throw ParseError(ctx + ": chart key must be an integer");
    }
    HiggsVertex hv{optional_element(value, "a", ctx, n), optional_element(value, "b", ctx, n),
                   optional_element(value, "delta", ctx, n), optional_element(value, "gamma", ctx, n)};
    if (!hv.a.is_even() || !hv.b.is_even()) throw ParseError(ctx + ": a and b must be even");
    if (!hv.delta.is_odd() || !hv.gamma.is_odd()) throw ParseError(ctx + ": delta and gamma must be odd");
    h.vertices.emplace(v, std::move(hv));
  }
  return h;
}

LocalFunction local_function_from_json(const Json& j, const std::string& field, int n) {
  if (!j.is_object()) throw ParseError(field + ": expected a local function object");
  const std::string p = as_string(require(j, "parity", field), join(field, "parity"));
  Parity parity = Parity::Even;
  if (p == "odd") {
    parity = Parity::Odd;
  } else if (p != "even") {
    throw ParseError(join(field, "parity") + ": expected \"even\" or \"odd\"");
  }
  LocalFunction f(n, parity, kDefaultDegreeCap);
  if (!j.contains("terms")) return f;
  const Json& terms = j["terms"];
  if (!terms.is_array()) throw ParseError(join(field, "terms") + ": expected an array");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string ctx = join(field, "terms[" + std::to_string(t) + "]");
    const int zp = terms[t].contains("z") ? as_int(terms[t]["z"], join(ctx, "z")) : 0;
    const int zq = terms[t].contains("zbar") ? as_int(terms[t]["zbar"], join(ctx, "zbar")) : 0;
    const GrassmannElement c = grassmann_from_json(require(terms[t], "coeff", ctx), join(ctx, "coeff"), n);
    try {
      f.add_term(zp, zq, c);
    } catch (const Error& e) {
      throw ParseError(ctx + ": " + e.what());
    }
  }
  return f;
}

Json to_json(const LocalFunction& f) {
  Json terms = Json::array();
  for (const auto& [k, c] : f.terms()) {
    terms.push_back({{"z", k.first}, {"zbar", k.second}, {"coeff", to_json(c)}});
  }
  return {{"parity", to_string(f.parity())}, {"terms", terms}};
}

Json to_json(const LocalMatrix& m) {
  return {{"a", to_json(m.a)}, {"beta", to_json(m.beta)}, {"gamma", to_json(m.gamma)}, {"d", to_json(m.d)}};
}

namespace {

LocalFunction optional_fn(const Json& j, const std::string& key, const std::string& ctx, int n,
                          Parity parity) {
  auto it = j.find(key);
  if (it == j.end()) return LocalFunction(n, parity);
  LocalFunction f = local_function_from_json(*it, join(ctx, key), n);
  if (f.parity() != parity) {
    throw ParseError(join(ctx, key) + ": expected parity " + to_string(parity));
  }
  return f;
}

}  // namespace

MetricFile metric_from_json(const Json& j) {
  const int n = read_n(j, "");
  const ConjugationTable table = conjugation_from_json(j, "", n);
  MetricFile out{MetricData{LocalFunction(n, Parity::Even), LocalFunction(n, Parity::Odd), table},
                 false, HiggsLocal{LocalFunction(n, Parity::Even), LocalFunction(n, Parity::Odd),
                                   LocalFunction(n, Parity::Odd)}};
  if (j.contains("solution")) {
    const Json& s = j["solution"];
    const std::string ctx = "solution";
    const LocalFunction delta = optional_fn(s, "delta", ctx, n, Parity::Odd);
    const LocalFunction gamma = optional_fn(s, "gamma", ctx, n, Parity::Odd);
    try {
      out.metric = hitchin_solution(optional_fn(s, "rho_h", ctx, n, Parity::Odd),
                                    optional_fn(s, "rho_a", ctx, n, Parity::Odd),
                                    optional_fn(s, "v_h", ctx, n, Parity::Even),
                                    optional_fn(s, "v_a", ctx, n, Parity::Even), delta, gamma, table);
    } catch (const DomainError& e) {
      throw ParseError(ctx + ": " + e.what());
    }
    out.has_higgs = true;
    out.higgs = HiggsLocal{optional_fn(s, "a", ctx, n, Parity::Even), delta, gamma};
    return out;
  }
  out.metric.u = optional_fn(j, "u", "", n, Parity::Even);
  out.metric.rho = optional_fn(j, "rho", "", n, Parity::Odd);
  return out;
}

HiggsLocal higgs_local_from_json(const Json& j, int n) {
  if (j.contains("n") && as_int(j["n"], "n") != n) {
    throw ParseError("n: Higgs field and metric use different generator counts");
  }
  return {optional_fn(j, "a", "", n, Parity::Even), optional_fn(j, "delta", "", n, Parity::Odd),
          optional_fn(j, "gamma", "", n, Parity::Odd)};
}

FatGraph fatgraph_from_json(const Json& j) {
  const Json& edges = require(j, "edges", "");
  const Json& vertices = require(j, "vertices", "");
  if (!edges.is_array()) throw ParseError("edges: expected an array of [tail, head]");
  if (!vertices.is_array()) throw ParseError("vertices: expected an array of half-edge triples");
  std::vector<std::pair<int, int>> e;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string ctx = "edges[" + std::to_string(k) + "]";
    const std::vector<int> th = int_list(edges[k], ctx);
    if (th.size() != 2) throw ParseError(ctx + ": expected [tail, head]");
    e.emplace_back(th[0], th[1]);
  }
  std::vector<std::array<int, 3>> v;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const std::string ctx = "vertices[" + std::to_string(k) + "]";
    const std::vector<int> hs = int_list(vertices[k], ctx);
    if (hs.size() != 3) throw ParseError(ctx + ": vertex must have exactly three half-edges");
    v.push_back({hs[0], hs[1], hs[2]});
  }
  try {
    return FatGraph(std::move(e), std::move(v));
  } catch (const DomainError& err) {
    throw ParseError(err.what());
  }
}

Json to_json(const FatGraph& g) {
  Json edges = Json::array();
  for (const auto& [t, h] : g.edges()) edges.push_back({t, h});
  Json vertices = Json::array();
  for (const auto& v : g.vertices()) vertices.push_back({v[0], v[1], v[2]});
  return {{"edges", edges}, {"vertices", vertices}};
}

GraphConnection connection_from_json(const Json& j, const FatGraph& g) {
  const int n = read_n(j, "");
  ConnectionMode mode = ConnectionMode::SL;
  if (j.contains("mode")) {
    const std::string m = as_string(j["mode"], "mode");
    if (m == "su") {
      mode = ConnectionMode::SU;
    } else if (m != "sl") {
      throw ParseError("mode: expected \"sl\" or \"su\"");
    }
  }
  std::vector<GroupCoords> edges(g.num_edges(), GroupCoords::identity(n));
  if (j.contains("edges")) {
    const Json& e = j["edges"];
    if (!e.is_object()) throw ParseError("edges: expected an object keyed by edge index");
    for (const auto& [key, value] : e.items()) {
      const std::string ctx = "edges." + key;
      int idx = -1;
      try {
        std::size_t used = 0;
        idx = std::stoi(key, &used);
        if (used != key.size()) idx = -1;
      } catch (const std::exception&) {
        idx = -1;
      }
      if (idx < 0 || idx >= g.num_edges()) throw ParseError(ctx + ": no such edge");
      edges[idx] = coords_from_json(value, ctx, n);
      if (!edges[idx].s.is_zero()) throw ParseError(ctx + ".s: graph connections have s = 0");
    }
  }
  try {
    return GraphConnection(mode, n, std::move(edges), conjugation_from_json(j, "", n));
  } catch (const DomainError& err) {
    throw ParseError(err.what());
  }
}

Json to_json(const GraphConnection& c) {
  Json edges = Json::object();
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    const GroupCoords& g = c.edges[e];
    edges[std::to_string(e)] = {{"h", to_json(g.h)}, {"alpha", to_json(g.alpha)}, {"beta", to_json(g.beta)}};
  }
  return {{"mode", c.mode == ConnectionMode::SU ? "su" : "sl"},
          {"n", c.n},
          {"conjugation", c.table.pairing()},
          {"edges", edges}};
}

ParabolicData system_from_json(const Json& j) {
  ParabolicData p;
  const Json& sites = require(j, "sites", "");
  if (!sites.is_array()) throw ParseError("sites: expected an array");
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const std::string ctx = "sites[" + std::to_string(k) + "]";
    p.sites.push_back({as_complex(require(sites[k], "z", ctx), join(ctx, "z")),
                       as_complex(require(sites[k], "u", ctx), join(ctx, "u")),
                       as_complex(require(sites[k], "v", ctx), join(ctx, "v"))});
  }
  if (j.contains("hbar")) p.hbar = as_complex(j["hbar"], "hbar");
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ParseError(std::string("sites: ") + e.what());
  }
  return p;
}

Json to_json(const ParabolicData& p) {
  Json sites = Json::array();
  for (const Site& s : p.sites) {
    sites.push_back({{"z", complex_json(s.z)}, {"u", complex_json(s.u)}, {"v", complex_json(s.v)}});
  }
  return {{"sites", sites}, {"hbar", complex_json(p.hbar)}};
}

}  // namespace glh::json_io
