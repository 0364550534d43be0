// Command-line front end over the C API. Exit status: 0 when every check
// passes, 1 when a check fails, 2 on usage, parse or domain errors.

#include <cstdio>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "glh/glh.h"

namespace {

struct Globals {
  double tol = 1e-9;
  uint64_t seed = 0;
  std::string format = "text";
};

int emit(glh_status status, glh_report* report, const Globals& g) {
  if (status != GLH_OK) {
    std::fprintf(stderr, "error (%s): %s\n", glh_status_string(status), glh_last_error());
    return 2;
  }
  const char* out = g.format == "json" ? glh_report_json(report) : glh_report_text(report);
  std::fputs(out, stdout);
  if (g.format == "json") std::fputc('\n', stdout);
  const int code = glh_report_passed(report) ? 0 : 1;
  glh_report_free(report);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grassmann-valued supergroup, Cech, Hitchin, fatgraph and Gaudin checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "Tolerance for residual checks")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for random draws")->capture_default_str();
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::function<glh_status(const glh_options&, glh_report**)> run;

  auto* selftest = app.add_subcommand("group-selftest", "Random group-law, sdet and eigen checks");
  int count = 1000, generators = 8;
  bool corrupt = false;
  selftest->add_option("--count", count, "Number of random draws")->capture_default_str();
  selftest->add_option("--generators", generators, "Grassmann generators")->capture_default_str();
  selftest->add_flag("--corrupt", corrupt, "Flip the quadratic term of the product law");
  selftest->callback([&] {
    run = [&](const glh_options& o, glh_report** r) {
      return glh_group_selftest(&o, count, generators, corrupt ? 1 : 0, r);
    };
  });

  auto* cech = app.add_subcommand("cech-verify", "Cocycle, two-cocycle and Higgs gluing checks");
  std::string nerve, data, cech_higgs;
  cech->add_option("nerve", nerve, "Nerve file")->required();
  cech->add_option("data", data, "Transition data file")->required();
  cech->add_option("--higgs", cech_higgs, "Local Higgs data file");
  cech->callback([&] {
    run = [&](const glh_options& o, glh_report** r) {
      return glh_cech_verify(&o, nerve.c_str(), data.c_str(), cech_higgs.c_str(), r);
    };
  });

  auto* hitchin = app.add_subcommand("hitchin-residual", "Hitchin equation residual of a metric and Higgs field");
  std::string metric, higgs;
  bool perturb = false;
  hitchin->add_option("metric", metric, "Metric file")->required();
  hitchin->add_option("higgs", higgs, "Higgs field file (defaults to the metric file's solution block)");
  hitchin->add_flag("--perturb", perturb, "Add z zbar to the metric exponent");
  hitchin->callback([&] {
    run = [&](const glh_options& o, glh_report** r) {
      return glh_hitchin_residual(&o, metric.c_str(), higgs.c_str(), perturb ? 1 : 0, r);
    };
  });

  auto* fatgraph = app.add_subcommand("fatgraph", "Fatgraph connections");
  fatgraph->require_subcommand(1);
  fatgraph->fallthrough();
  std::string graph, connection, cycle;
  auto* normalize = fatgraph->add_subcommand("normalize", "Gauge-normalize a connection");
  normalize->add_option("graph", graph, "Fatgraph file")->required();
  normalize->add_option("connection", connection, "Connection file")->required();
  normalize->callback([&] {
    run = [&](const glh_options& o, glh_report** r) {
      return glh_fatgraph_normalize(&o, graph.c_str(), connection.c_str(), r);
    };
  });
  auto* holonomy = fatgraph->add_subcommand("holonomy", "Holonomy along an edge path");
  holonomy->add_option("graph", graph, "Fatgraph file")->required();
  holonomy->add_option("connection", connection, "Connection file")->required();
  holonomy->add_option("--cycle", cycle, "Oriented edges, e.g. 0+,1-,2+")->required();
  holonomy->callback([&] {
    run = [&](const glh_options& o, glh_report** r) {
      return glh_fatgraph_holonomy(&o, graph.c_str(), connection.c_str(), cycle.c_str(), r);
    };
  });
  auto* punctures = fatgraph->add_subcommand("check-punctures", "Boundary holonomy constraints");
  punctures->add_option("graph", graph, "Fatgraph file")->required();
  punctures->add_option("connection", connection, "Connection file")->required();
  punctures->callback([&] {
    run = [&](const glh_options& o, glh_report** r) {
      return glh_fatgraph_check_punctures(&o, graph.c_str(), connection.c_str(), r);
    };
  });
  auto* dims = fatgraph->add_subcommand("dims", "Moduli dimensions: closed form against a graph count");
  int genus = 0, npunct = 0;
  bool constrained = false, su = false;
  dims->add_option("--genus", genus, "Genus")->required();
  dims->add_option("--punctures", npunct, "Number of punctures")->required();
  dims->add_flag("--constrained", constrained, "Impose the boundary holonomy constraints");
  dims->add_flag("--su", su, "Count real dimensions of the unitary form");
  dims->add_option("--graph", graph, "Fatgraph file (defaults to the built-in fixture)");
  dims->callback([&] {
    run = [&](const glh_options& o, glh_report** r) {
      return glh_fatgraph_dims(&o, genus, npunct, constrained ? 1 : 0, su ? 1 : 0, graph.c_str(), r);
    };
  });

  std::string system;
  int m = 0;
  auto add_system = [&](const char* name, const char* help,
                        glh_status (*fn)(const glh_options*, const char*, int, glh_report**)) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("system", system, "System file (random sites from --seed when omitted)");
    sub->add_option("--m", m, "Number of sites for a random system");
    sub->callback([&, fn] {
      run = [&, fn](const glh_options& o, glh_report** r) { return fn(&o, system.c_str(), m, r); };
    });
  };
  add_system("garnier-check", "Classical Garnier Hamiltonians", glh_garnier_check);
  add_system("gaudin-commute", "Quantum Gaudin Hamiltonians", glh_gaudin_commute);
  add_system("quantize-compare", "Quantized Garnier against Gaudin", glh_quantize_compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  glh_options opt = glh_default_options();
  opt.tol = g.tol;
  opt.seed = g.seed;
  glh_report* report = nullptr;
  const glh_status status = run(opt, &report);
  return emit(status, report, g);
}
