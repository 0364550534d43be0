#include "glh/glh.h"

#include <exception>
#include <new>
#include <string>

#include <json.hpp>

#include "glh/commands.hpp"
#include "glh/error.hpp"
#include "glh/json_io.hpp"

struct glh_report {
  glh::Report report;
  std::string text;
  std::string json;
};

struct glh_element {
  glh::GrassmannElement value;
  std::string json;
};

namespace {

thread_local std::string last_error;

glh_status fail(glh_status s, const char* what) {
  last_error = what;
  return s;
}

// Runs f, translating library exceptions into status codes.
template <class F>
glh_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return GLH_OK;
  } catch (const glh::ParseError& e) {
    return fail(GLH_ERR_PARSE, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(GLH_ERR_PARSE, e.what());
  } catch (const glh::ParityError& e) {
    return fail(GLH_ERR_PARITY, e.what());
  } catch (const glh::NotInvertibleError& e) {
    return fail(GLH_ERR_NOT_INVERTIBLE, e.what());
  } catch (const glh::DegreeOverflowError& e) {
    return fail(GLH_ERR_DEGREE_OVERFLOW, e.what());
  } catch (const glh::DomainError& e) {
    return fail(GLH_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GLH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GLH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GLH_ERR_INTERNAL, "unknown error");
  }
}

glh::commands::Options options(const glh_options* opt) {
  glh::commands::Options o;
  if (opt != nullptr) {
    o.tol = opt->tol;
    o.seed = opt->seed;
  }
  return o;
}

std::string str(const char* s) { return s == nullptr ? std::string() : std::string(s); }

template <class F>
glh_status run_command(glh_report** out, F&& f) {
  if (out == nullptr) return fail(GLH_ERR_ARGUMENT, "output pointer is null");
  *out = nullptr;
  return guarded([&] { *out = new glh_report{f(), {}, {}}; });
}

glh_status require(const void* p, const char* what) {
  return p == nullptr ? fail(GLH_ERR_ARGUMENT, what) : GLH_OK;
}

template <class F>
glh_status make_element(glh_element** out, F&& f) {
  if (out == nullptr) return fail(GLH_ERR_ARGUMENT, "output pointer is null");
  *out = nullptr;
  return guarded([&] { *out = new glh_element{f(), {}}; });
}

}  // namespace

extern "C" {

const char* glh_version(void) { return "0.1.0"; }

const char* glh_status_string(glh_status status) {
  switch (status) {
    case GLH_OK: return "ok";
    case GLH_ERR_DOMAIN: return "domain error";
    case GLH_ERR_PARITY: return "parity error";
    case GLH_ERR_NOT_INVERTIBLE: return "not invertible";
    case GLH_ERR_DEGREE_OVERFLOW: return "degree overflow";
    case GLH_ERR_PARSE: return "parse error";
    case GLH_ERR_ARGUMENT: return "invalid argument";
    case GLH_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* glh_last_error(void) { return last_error.c_str(); }

glh_options glh_default_options(void) { return glh_options{1e-9, 0}; }

glh_status glh_element_parse(const char* json, int n, glh_element** out) {
  if (json == nullptr) return fail(GLH_ERR_ARGUMENT, "json is null");
  return make_element(out, [&] {
    return glh::json_io::grassmann_from_json(nlohmann::json::parse(json), "element", n);
  });
}

glh_status glh_element_add(const glh_element* x, const glh_element* y, glh_element** out) {
  if (x == nullptr || y == nullptr) return fail(GLH_ERR_ARGUMENT, "operand is null");
  if (x->value.n() != y->value.n()) return fail(GLH_ERR_DOMAIN, "generator counts differ");
  return make_element(out, [&] { return x->value + y->value; });
}

glh_status glh_element_mul(const glh_element* x, const glh_element* y, glh_element** out) {
  if (x == nullptr || y == nullptr) return fail(GLH_ERR_ARGUMENT, "operand is null");
  if (x->value.n() != y->value.n()) return fail(GLH_ERR_DOMAIN, "generator counts differ");
  return make_element(out, [&] { return x->value * y->value; });
}

glh_status glh_element_inv(const glh_element* x, glh_element** out) {
  if (glh_status s = require(x, "operand is null"); s != GLH_OK) return s;
  return make_element(out, [&] { return glh::inv(x->value); });
}

glh_status glh_element_exp(const glh_element* x, glh_element** out) {
  if (glh_status s = require(x, "operand is null"); s != GLH_OK) return s;
  return make_element(out, [&] { return glh::exp_even(x->value); });
}

int glh_element_generators(const glh_element* x) { return x == nullptr ? 0 : x->value.n(); }

const char* glh_element_to_json(glh_element* x) {
  if (x == nullptr) return "";
  x->json = glh::json_io::to_json(x->value).dump();
  return x->json.c_str();
}

void glh_element_free(glh_element* x) { delete x; }

glh_status glh_group_selftest(const glh_options* opt, int count, int generators, int corrupt,
                              glh_report** out) {
  return run_command(out, [&] {
    return glh::commands::group_selftest(options(opt), count, generators, corrupt != 0);
  });
}

glh_status glh_cech_verify(const glh_options* opt, const char* nerve_path, const char* data_path,
                           const char* higgs_path, glh_report** out) {
  if (nerve_path == nullptr || data_path == nullptr) return fail(GLH_ERR_ARGUMENT, "path is null");
  return run_command(out, [&] {
    return glh::commands::cech_verify(options(opt), nerve_path, data_path, str(higgs_path));
  });
}

glh_status glh_hitchin_residual(const glh_options* opt, const char* metric_path, const char* higgs_path,
                                int perturb, glh_report** out) {
  if (metric_path == nullptr) return fail(GLH_ERR_ARGUMENT, "path is null");
  return run_command(out, [&] {
    return glh::commands::hitchin_residual(options(opt), metric_path, str(higgs_path), perturb != 0);
  });
}

glh_status glh_fatgraph_normalize(const glh_options* opt, const char* graph_path,
                                  const char* connection_path, glh_report** out) {
  if (graph_path == nullptr || connection_path == nullptr) return fail(GLH_ERR_ARGUMENT, "path is null");
  return run_command(out, [&] {
    return glh::commands::fatgraph_normalize(options(opt), graph_path, connection_path);
  });
}

glh_status glh_fatgraph_holonomy(const glh_options* opt, const char* graph_path, const char* connection_path,
                                 const char* cycle, glh_report** out) {
  if (graph_path == nullptr || connection_path == nullptr || cycle == nullptr) {
    return fail(GLH_ERR_ARGUMENT, "argument is null");
  }
  return run_command(out, [&] {
    return glh::commands::fatgraph_holonomy(options(opt), graph_path, connection_path, cycle);
  });
}

glh_status glh_fatgraph_check_punctures(const glh_options* opt, const char* graph_path,
                                        const char* connection_path, glh_report** out) {
  if (graph_path == nullptr || connection_path == nullptr) return fail(GLH_ERR_ARGUMENT, "path is null");
  return run_command(out, [&] {
    return glh::commands::fatgraph_check_punctures(options(opt), graph_path, connection_path);
  });
}

glh_status glh_fatgraph_dims(const glh_options* opt, int genus, int punctures, int constrained, int su,
                             const char* graph_path, glh_report** out) {
  return run_command(out, [&] {
    return glh::commands::fatgraph_dims(options(opt), genus, punctures, constrained != 0, su != 0,
                                        str(graph_path));
  });
}

glh_status glh_garnier_check(const glh_options* opt, const char* system_path, int m, glh_report** out) {
  return run_command(out, [&] { return glh::commands::garnier_check(options(opt), str(system_path), m); });
}

glh_status glh_gaudin_commute(const glh_options* opt, const char* system_path, int m, glh_report** out) {
  return run_command(out, [&] { return glh::commands::gaudin_commute(options(opt), str(system_path), m); });
}

glh_status glh_quantize_compare(const glh_options* opt, const char* system_path, int m, glh_report** out) {
  return run_command(out,
                     [&] { return glh::commands::quantize_compare(options(opt), str(system_path), m); });
}

int glh_report_passed(const glh_report* r) { return r != nullptr && r->report.passed() ? 1 : 0; }

size_t glh_report_check_count(const glh_report* r) { return r == nullptr ? 0 : r->report.checks().size(); }

const char* glh_report_check_name(const glh_report* r, size_t i) {
  if (r == nullptr || i >= r->report.checks().size()) return "";
  return r->report.checks()[i].name.c_str();
}

int glh_report_check_passed(const glh_report* r, size_t i) {
  if (r == nullptr || i >= r->report.checks().size()) return 0;
  return r->report.checks()[i].passed ? 1 : 0;
}

double glh_report_check_residual(const glh_report* r, size_t i) {
  if (r == nullptr || i >= r->report.checks().size()) return 0.0;
  return r->report.checks()[i].residual;
}

const char* glh_report_text(glh_report* r) {
  if (r == nullptr) return "";
  r->text = r->report.to_text();
  return r->text.c_str();
}

const char* glh_report_json(glh_report* r) {
  if (r == nullptr) return "";
  r->json = r->report.to_json();
  return r->json.c_str();
}

void glh_report_free(glh_report* r) { delete r; }

}  // extern "C"
