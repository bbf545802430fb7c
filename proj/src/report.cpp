#include "gpa/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include "json.hpp"

namespace gpa {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

void Report::add(const std::string& suite, const std::string& name, const std::string& anchor,
                 double residual, double tol, const std::string& detail) {
  bool ok = std::isfinite(residual) && residual <= tol;
  checks.push_back({suite, name, anchor, residual, tol, ok, detail});
}

void Report::add_exact(const std::string& suite, const std::string& name,
                       const std::string& anchor, long got, long want,
                       const std::string& detail) {
  std::string d = "got " + std::to_string(got) + ", want " + std::to_string(want);
  if (!detail.empty()) d += "; " + detail;
  checks.push_back({suite, name, anchor, static_cast<double>(std::labs(got - want)), 0.0,
                    got == want, d});
}

void Report::merge(const Report& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }

bool Report::passed() const { return failures() == 0; }

size_t Report::failures() const {
  return std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; });
}

double Report::max_residual() const {
  double r = 0.0;
  for (const auto& c : checks) r = std::max(r, c.residual);
  return r;
}

std::string Report::text() const {
  std::string out;
  std::string suite;
  for (const auto& c : checks) {
    if (c.suite != suite) {
      suite = c.suite;
      out += "== " + suite + "\n";
    }
    out += std::string(c.pass ? "PASS " : "FAIL ") + c.name + "\n";
    out += "     anchor:   " + c.anchor + "\n";
    out += "     residual: " + sci(c.residual) + " (tol " + sci(c.tol) + ")\n";
    if (!c.detail.empty()) out += "     detail:   " + c.detail + "\n";
  }
  out += "summary: " + std::to_string(checks.size() - failures()) + "/" +
         std::to_string(checks.size()) + " passed, max residual " + sci(max_residual()) + "\n";
  return out;
}

std::string Report::machine() const {
  std::string out;
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["suite"] = c.suite;
    j["name"] = c.name;
    j["anchor"] = c.anchor;
    j["residual"] = sci(c.residual);
    j["tol"] = sci(c.tol);
    j["pass"] = c.pass;
    if (!c.detail.empty()) j["detail"] = c.detail;
    out += j.dump() + "\n";
  }
  nlohmann::ordered_json s;
  s["summary"] = true;
  s["checks"] = checks.size();
  s["failures"] = failures();
  s["max_residual"] = sci(max_residual());
  out += s.dump() + "\n";
  return out;
}

}  // namespace gpa
