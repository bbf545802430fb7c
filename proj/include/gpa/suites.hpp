#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpa/loops.hpp"
#include "gpa/report.hpp"

namespace gpa {

struct SuiteOptions {
  std::optional<double> tol;  // overrides every per-check tolerance
  int cap_n = 6;
  unsigned seed = 20240601;
  int samples = 100;  // random pairs per adjoint identity
};

struct UnknownSuite : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& suite_names();  // tl rotation tower ppbasis embed all

Report suite_tl(const Model& m, const SuiteOptions& opt);
Report suite_rotation(const Model& m, const SuiteOptions& opt);
Report suite_tower(const Model& m, const SuiteOptions& opt);
Report suite_ppbasis(const Model& m, const SuiteOptions& opt);
Report suite_embed(const Model& m, const SuiteOptions& opt);

Report run_suite(const Model& m, const std::string& name, const SuiteOptions& opt);

// largest eigenvalue of Lambda Lambda^T by plain power iteration on the
// dense even-by-even matrix; independent of the library's Perron solver
double index_oracle(const BipartiteGraph& g, int iterations = 20000);

}  // namespace gpa
