#include "glh/commands.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "glh/error.hpp"
#include "glh/json_io.hpp"
#include "glh/random.hpp"

namespace glh::commands {

namespace {

struct Worst {
  double value = 0.0;
  std::string where;

  void update(double v, const std::string& w) {
    if (v > value || std::isnan(v)) {
      value = v;
      where = w;
    }
  }
};

SuperMatrix11 random_higgs(int n, Rng& rng) {
  const GrassmannElement a = rng.invertible_even(n, 0.5, 0.3);
  const GrassmannElement st = rng.even(n, 0.3).soul() +
                              GrassmannElement::scalar(n, rng.nonzero_complex(1.0, 2.0));
  return {a, rng.odd(n, 0.5), rng.odd(n, 0.5), a - st};
}

// Location of the largest coefficient, e.g. "z^1 zbar^1 [t1 t3]".
std::string worst_term(const LocalFunction& f) {
  double best = 0.0;
  std::string where;
  for (const auto& [key, c] : f.terms()) {
    for (const auto& [m, v] : c.terms()) {
      if (std::abs(v) <= best) continue;
      best = std::abs(v);
      where = "z^" + std::to_string(key.first) + " zbar^" + std::to_string(key.second) + " [";
      bool first = true;
      for (int i : monomial::indices(m)) {
        where += (first ? "t" : " t") + std::to_string(i);
        first = false;
      }
      where += "]";
    }
  }
  return where;
}

ParabolicData load_system(const Options& opt, const std::string& path, int m) {
  if (!path.empty()) return json_io::system_from_json(json_io::read_file(path));
  if (m < 2) throw DomainError("need --m >= 2 or a system file");
  Rng rng(opt.seed);
  return random_parabolic(m, rng);
}

}  // namespace

Report group_selftest(const Options& opt, int count, int generators, bool corrupt) {
  if (count < 0) throw DomainError("group-selftest: count must be non-negative");
  if (generators < 1 || generators > 16) throw DomainError("group-selftest: generators must be in 1..16");
  Rng rng(opt.seed);
  const int n = generators;
  Worst assoc, ident, inv_formula, inv_product, product_law, sdet_exp, sdet_mult, roundtrip;
  Worst eig_diag, eig_entries, eig_invariant;
  const SuperMatrix11 one = SuperMatrix11::identity(n);
  for (int k = 0; k < count; ++k) {
    const std::string where = "draw " + std::to_string(k);
    const GroupCoords c1 = rng.coords(n);
    const GroupCoords c2 = rng.coords(n);
    const GroupCoords c3 = rng.coords(n);
    const SuperMatrix11 m1 = from_coords(c1);
    const SuperMatrix11 m2 = from_coords(c2);
    const SuperMatrix11 m3 = from_coords(c3);
    const SuperMatrix11 m12 = m1 * m2;
    const SuperMatrix11 m1_inv = inverse(m1);
    assoc.update((m12 * m3 - m1 * (m2 * m3)).max_abs(), where);
    const GroupCoords left = coords_product(coords_product(c1, c2), c3);
    const GroupCoords right = coords_product(c1, coords_product(c2, c3));
    assoc.update(std::max({(left.h - right.h).max_abs(), (left.s - right.s).max_abs(),
                           (left.alpha - right.alpha).max_abs(), (left.beta - right.beta).max_abs()}),
                 where);
    ident.update(std::max((m1 * one - m1).max_abs(), (one * m1 - m1).max_abs()), where);
    ident.update((from_coords(coords_product(c1, GroupCoords::identity(n))) - m1).max_abs(), where);
    inv_formula.update((from_coords(coords_inverse(c1)) - m1_inv).max_abs(), where);
    inv_product.update(std::max((m1 * m1_inv - one).max_abs(), (m1_inv * m1 - one).max_abs()), where);
    GroupCoords claimed = coords_product(c1, c2);
    if (corrupt) {
      const GrassmannElement e_plus = exp_even(c1.s);
      const GrassmannElement e_minus = exp_even(-c1.s);
      claimed.h = claimed.h - (c1.alpha * e_plus * c2.beta - e_minus * c2.alpha * c1.beta);
    }
    product_law.update((from_coords(claimed) - m12).max_abs(), where);
    const GrassmannElement sdet1 = sdet(m1);
    sdet_exp.update((sdet1 - exp_even(c1.s)).max_abs(), where);
    sdet_mult.update((sdet(m12) - sdet1 * sdet(m2)).max_abs(), where);
    const GroupCoords back = to_coords(m1);
    roundtrip.update(std::max({(back.h - c1.h).max_abs(), (back.s - c1.s).max_abs(),
                               (back.alpha - c1.alpha).max_abs(), (back.beta - c1.beta).max_abs()}),
                     where);

    const SuperMatrix11 phi = random_higgs(n, rng);
    const HiggsEigenData e = higgs_eigen(phi);
    const SuperMatrix11 diag = inverse(e.diagonalizer) * phi * e.diagonalizer;
    eig_diag.update(std::max(diag.beta.max_abs(), diag.gamma.max_abs()), where);
    eig_entries.update(std::max((diag.a - e.lambda_plus).max_abs(), (diag.d - e.lambda_minus).max_abs()),
                       where);
    const auto [lp, lm] = higgs_eigen_invariant(phi);
    eig_invariant.update(std::max((lp - e.lambda_plus).max_abs(), (lm - e.lambda_minus).max_abs()), where);
  }
  Report r("group self-test");
  const double tol = opt.tol;
  r.add("associativity", assoc.value, tol, assoc.where);
  r.add("identity", ident.value, tol, ident.where);
  r.add("inverse_formula", inv_formula.value, tol, inv_formula.where);
  r.add("inverse_product", inv_product.value, tol, inv_product.where);
  r.add("product_law", product_law.value, tol, product_law.where);
  r.add("sdet_exp_s", sdet_exp.value, tol, sdet_exp.where);
  r.add("sdet_multiplicative", sdet_mult.value, tol, sdet_mult.where);
  r.add("coords_roundtrip", roundtrip.value, tol, roundtrip.where);
  r.add("eigen_offdiagonal", eig_diag.value, tol, eig_diag.where);
  r.add("eigen_entries", eig_entries.value, tol, eig_entries.where);
  r.add("eigen_invariant_form", eig_invariant.value, tol, eig_invariant.where);
  r.note("draws", std::to_string(count));
  r.note("generators", std::to_string(n));
  return r;
}

Report cech_verify(const Options& opt, const std::string& nerve_path, const std::string& data_path,
                   const std::string& higgs_path) {
  const Nerve nerve = json_io::nerve_from_json(json_io::read_file(nerve_path));
  const TransitionData data = json_io::transition_from_json(json_io::read_file(data_path));
  for (const auto& [e, g] : data.edges) {
    if (!nerve.contains(e)) throw ParseError("edges." + simplex_key(e) + ": not a simplex of the nerve");
  }
  Report r("cech verify");
  const Report cocycle = check_gl_cocycle(nerve, data, opt.tol);
  r.merge("cocycle", cocycle);
  if (cocycle.passed()) {
    r.merge("g", check_two_cocycle(nerve, data, opt.tol));
    const CoboundarySolution f = solve_coboundary(nerve, two_cocycle_g(nerve, data, opt.tol), opt.tol);
    r.note("g.coboundary", f.message);
    r.note("g.solution_dim", std::to_string(f.kernel_dim));
  } else {
    r.note("g", "skipped: cocycle check failed");
  }
  if (!higgs_path.empty()) {
    const HiggsCechData higgs = json_io::cech_higgs_from_json(json_io::read_file(higgs_path), data.n);
    if (data.mode == GroupMode::SL) {
      const HiggsObstruction ob = sl_higgs_obstruction(nerve, data, higgs, opt.tol);
      r.merge("higgs", ob.report);
      r.note("higgs.class", ob.exact ? "zero" : "nonzero");
    } else {
      r.merge("higgs", gl_higgs_constraints(nerve, data, higgs, opt.tol));
    }
  }
  return r;
}

Report hitchin_residual(const Options& opt, const std::string& metric_path,
                        const std::string& higgs_path, bool perturb) {
  json_io::MetricFile mf = json_io::metric_from_json(json_io::read_file(metric_path));
  const int n = mf.metric.u.n();
  HiggsLocal higgs = mf.higgs;
  if (!higgs_path.empty()) higgs = json_io::higgs_local_from_json(json_io::read_file(higgs_path), n);
  if (perturb) {
    mf.metric.u = mf.metric.u + LocalFunction::term(1, 1, GrassmannElement::one(n), Parity::Even);
  }
  const LocalMatrix res = hitchin_residual(mf.metric, higgs.matrix());
  Report r("hitchin residual");
  r.add("residual_a", res.a.max_abs(), opt.tol, worst_term(res.a));
  r.add("residual_beta", res.beta.max_abs(), opt.tol, worst_term(res.beta));
  r.add("residual_gamma", res.gamma.max_abs(), opt.tol, worst_term(res.gamma));
  r.add("residual_d", res.d.max_abs(), opt.tol, worst_term(res.d));
  r.add("chern_form_routes", (chern_form(mf.metric) - chern_form_by_inversion(mf.metric)).max_abs(), opt.tol);
  r.note("higgs_source", !higgs_path.empty() ? "file" : (mf.has_higgs ? "solution" : "zero"));
  return r;
}

namespace {

struct GraphInput {
  FatGraph graph;
  GraphConnection connection;
};

GraphInput load_graph(const std::string& graph_path, const std::string& connection_path) {
  FatGraph g = json_io::fatgraph_from_json(json_io::read_file(graph_path));
  GraphConnection c = json_io::connection_from_json(json_io::read_file(connection_path), g);
  return {std::move(g), std::move(c)};
}

}  // namespace

Report fatgraph_normalize(const Options& opt, const std::string& graph_path,
                          const std::string& connection_path) {
  const GraphInput in = load_graph(graph_path, connection_path);
  const NormalizeResult res = gauge_normalize(in.graph, in.connection, opt.tol);
  Report r("fatgraph normalize");
  r.add_flag("nonsingular", !res.singular, res.singular ? "vertex system is inconsistent" : "");
  r.add("vertex_sums", res.residual, opt.tol);
  if (in.connection.mode == ConnectionMode::SU) {
    r.add("su_reality", res.connection.su_residual(), opt.tol);
  }
  r.note("gauge_kernel_dim", std::to_string(res.kernel_dim));
  r.note("genus", std::to_string(in.graph.genus()));
  r.note("punctures", std::to_string(in.graph.punctures()));
  if (!res.singular) r.set_payload(json_io::to_json(res.connection).dump(2));
  return r;
}

Report fatgraph_holonomy(const Options& opt, const std::string& graph_path,
                         const std::string& connection_path, const std::string& cycle) {
  const GraphInput in = load_graph(graph_path, connection_path);
  const Cycle cyc = parse_cycle(cycle);
  const SuperMatrix11 m = holonomy(in.graph, in.connection, cyc);
  Report r("fatgraph holonomy");
  const bool closed = cyc.empty() || in.graph.start(cyc.front()) == in.graph.end(cyc.back());
  r.add_flag("contiguous", true, cycle_to_string(cyc));
  r.note("closed", closed ? "yes" : "no");
  r.note("str", str(m).to_string());
  r.note("sdet", sdet(m).to_string());
  r.note("tolerance", format_residual(opt.tol));
  r.set_payload(json_io::to_json(m).dump(2));
  return r;
}

Report fatgraph_check_punctures(const Options& opt, const std::string& graph_path,
                                const std::string& connection_path) {
  const GraphInput in = load_graph(graph_path, connection_path);
  return check_puncture_constraints(in.graph, in.connection, opt.tol);
}

Report fatgraph_dims(const Options& opt, int genus, int punctures, bool constrained, bool su,
                     const std::string& graph_path) {
  (void)opt;
  const Dims closed = moduli_dims(genus, punctures, constrained, su);
  Report r("fatgraph dims");
  r.note("closed_form", std::to_string(closed.even) + "|" + std::to_string(closed.odd));
  std::optional<FatGraph> g;
  if (!graph_path.empty()) {
    g = json_io::fatgraph_from_json(json_io::read_file(graph_path));
    if (g->genus() != genus || g->punctures() != punctures) {
      throw DomainError("graph has (g, s) = (" + std::to_string(g->genus()) + ", " +
                        std::to_string(g->punctures()) + "), not the requested pair");
    }
  } else {
    try {
      g = FatGraph::fixture(genus, punctures);
    } catch (const DomainError&) {
      r.note("computed", "no graph available");
      return r;
    }
  }
  const Dims counted = free_parameter_counts(*g, constrained, su);
  r.note("computed", std::to_string(counted.even) + "|" + std::to_string(counted.odd));
  r.add("even_dim", std::abs(counted.even - closed.even), 0.0,
        "computed " + std::to_string(counted.even) + ", closed form " + std::to_string(closed.even));
  r.add("odd_dim", std::abs(counted.odd - closed.odd), 0.0,
        "computed " + std::to_string(counted.odd) + ", closed form " + std::to_string(closed.odd));
  return r;
}

Report garnier_check(const Options& opt, const std::string& system_path, int m) {
  return garnier_report(load_system(opt, system_path, m), opt.tol);
}

Report gaudin_commute(const Options& opt, const std::string& system_path, int m) {
  return gaudin_commute_report(load_system(opt, system_path, m), opt.tol);
}

Report quantize_compare(const Options& opt, const std::string& system_path, int m) {
  return quantize_report(load_system(opt, system_path, m), opt.tol);
}

}  // namespace glh::commands
