#pragma once

// Verification entry points behind the command-line tool. Each parses its
// inputs, runs the owning module's checks and returns one Report.

#include <cstdint>
#include <string>

#include "glh/report.hpp"

namespace glh::commands {

struct Options {
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

// Random group-law, inverse, sdet and eigen-decomposition checks. corrupt
// flips the sign of the quadratic h term in the claimed product law.
Report group_selftest(const Options& opt, int count, int generators, bool corrupt);

// higgs_path may be empty.
Report cech_verify(const Options& opt, const std::string& nerve_path, const std::string& data_path,
                   const std::string& higgs_path);

// higgs_path may be empty (the metric file's solution block or Phi = 0 is used).
// perturb adds z zbar to u.
Report hitchin_residual(const Options& opt, const std::string& metric_path,
                        const std::string& higgs_path, bool perturb);

Report fatgraph_normalize(const Options& opt, const std::string& graph_path,
                          const std::string& connection_path);
Report fatgraph_holonomy(const Options& opt, const std::string& graph_path,
                         const std::string& connection_path, const std::string& cycle);
Report fatgraph_check_punctures(const Options& opt, const std::string& graph_path,
                                const std::string& connection_path);
// Compares the closed-form counts with the counts computed on graph_path, or
// on the shipped fixture for (genus, punctures) when graph_path is empty.
Report fatgraph_dims(const Options& opt, int genus, int punctures, bool constrained, bool su,
                     const std::string& graph_path);

// system_path empty: a random system with m sites drawn from opt.seed.
Report garnier_check(const Options& opt, const std::string& system_path, int m);
Report gaudin_commute(const Options& opt, const std::string& system_path, int m);
Report quantize_compare(const Options& opt, const std::string& system_path, int m);

}  // namespace glh::commands
