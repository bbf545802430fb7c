#pragma once

#include <string>
#include <vector>

namespace gpa {

struct Check {
  std::string suite;
  std::string name;    // the identity, in words
  std::string anchor;  // the result it instantiates
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;
};

class Report {
 public:
  std::vector<Check> checks;

  // residual check: passes iff residual <= tol
  void add(const std::string& suite, const std::string& name, const std::string& anchor,
           double residual, double tol, const std::string& detail = "");
  // exact check (ranks, counts); residual is |got - want|
  void add_exact(const std::string& suite, const std::string& name, const std::string& anchor,
                 long got, long want, const std::string& detail = "");
  void merge(const Report& o);

  bool passed() const;
  size_t failures() const;
  double max_residual() const;

  std::string text() const;
  // one JSON object per line, then a summary line
  std::string machine() const;
};

}  // namespace gpa
