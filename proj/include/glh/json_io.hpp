#pragma once

// JSON encodings of every value type. Parsers throw ParseError naming the
// offending field.
//
//   Grassmann element  {"n": 4, "terms": [{"mono": [1, 3], "re": 0.5, "im": 0}]}
//                      "mono" lists generator indices in any order; the sign
//                      of sorting them is applied.
//   group coordinates  {"h": G, "s": G, "alpha": G, "beta": G} (s optional)
//   supermatrix        {"a": G, "beta": G, "gamma": G, "d": G}

#include <string>

#include <json.hpp>

#include "glh/cech.hpp"
#include "glh/fatgraph.hpp"
#include "glh/hitchin.hpp"
#include "glh/integrable.hpp"

namespace glh::json_io {

using Json = nlohmann::json;

Json read_file(const std::string& path);

GrassmannElement grassmann_from_json(const Json& j, const std::string& field, int n);
Json to_json(const GrassmannElement& x);

GroupCoords coords_from_json(const Json& j, const std::string& field, int n);
Json to_json(const GroupCoords& c);
SuperMatrix11 supermatrix_from_json(const Json& j, const std::string& field, int n);
Json to_json(const SuperMatrix11& m);

ConjugationTable conjugation_from_json(const Json& j, const std::string& field, int n);

// {"vertices": [..], "simplices": {"1": [[i, j], ..], "2": [..], "3": [..]}}
Nerve nerve_from_json(const Json& j);
// {"n": N, "mode": "sl"|"gl", "modulo_2pi_i": false,
//  "edges": {"0,1": coords, ..}, "triangles": {"0,1,2": {"n": 0}, ..}}
TransitionData transition_from_json(const Json& j);
// {"n": N, "check_a": false, "vertices": {"0": {"a", "b", "delta", "gamma"}, ..}}
HiggsCechData cech_higgs_from_json(const Json& j, int n);

// {"parity": "even"|"odd", "terms": [{"z": p, "zbar": q, "coeff": G}]}
LocalFunction local_function_from_json(const Json& j, const std::string& field, int n);
Json to_json(const LocalFunction& f);
Json to_json(const LocalMatrix& m);

// Either {"n", "u", "rho", "conjugation"?} or
// {"n", "conjugation"?, "solution": {"rho_h", "rho_a", "v_h", "v_a", "delta"?, "gamma"?}}.
struct MetricFile {
  MetricData metric;
  // Higgs field implied by a "solution" block (delta, gamma and optional a).
  bool has_higgs = false;
  HiggsLocal higgs;
};
MetricFile metric_from_json(const Json& j);
// {"n", "a"?, "delta"?, "gamma"?}
HiggsLocal higgs_local_from_json(const Json& j, int n);

// {"edges": [[tail, head], ..], "vertices": [[h, h, h], ..]}
FatGraph fatgraph_from_json(const Json& j);
Json to_json(const FatGraph& g);
// {"mode": "sl"|"su", "n": N, "conjugation"?, "edges": {"0": coords, ..}}
GraphConnection connection_from_json(const Json& j, const FatGraph& g);
Json to_json(const GraphConnection& c);

// {"sites": [{"z": [re, im], "u": [re, im], "v": [re, im]}], "hbar": 1.0}
ParabolicData system_from_json(const Json& j);
Json to_json(const ParabolicData& p);

}  // namespace glh::json_io
