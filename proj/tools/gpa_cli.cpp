#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gpa/graph.hpp"
#include "gpa/loops.hpp"
#include "gpa/suites.hpp"
#include "gpa/tangle.hpp"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kNonConvergence = 2, kVerifyFailed = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::optional<double> tol;
  int cap_n = 6;
  std::string normalization = "markov";
  std::string format = "text";
  bool machine() const { return format == "machine"; }
};

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw UsageError(std::string("cannot open ") + what + " '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

gpa::Model load_model(const std::string& path, const Flags& f) {
  gpa::Tolerances t;
  t.cap_n = f.cap_n;
  auto norm = f.normalization == "base" ? gpa::Normalization::BaseVertex : gpa::Normalization::Markov;
  return gpa::Model::make(gpa::read_graph_file(path), norm, t);
}

gpa::Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return gpa::Sign::Plus;
  if (s == "-" || s == "minus") return gpa::Sign::Minus;
  throw UsageError("sign must be + or -, got '" + s + "'");
}

int parse_level(const std::string& s) {
  size_t used = 0;
  int n = -1;
  try {
    n = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || n < 0) throw UsageError("level must be a non-negative integer, got '" + s + "'");
  return n;
}

// "@path" reads a file; anything else is the element text with ';' between terms
gpa::Element read_input(const gpa::Model& m, const gpa::Space& s, const std::string& arg) {
  std::string text;
  if (!arg.empty() && arg[0] == '@') {
    text = read_file(arg.substr(1), "element file");
  } else {
    text = arg;
    for (char& c : text)
      if (c == ';') c = '\n';
  }
  return gpa::parse_element(m, s, text);
}

void out(const std::string& s) { std::fwrite(s.data(), 1, s.size(), stdout); }

std::string num(double x) { return gpa::format_number(x); }

int cmd_fp(const std::string& graph, const Flags& f) {
  gpa::Model m = load_model(graph, f);
  const auto& g = m.graph;
  const double res = gpa::eigen_residual(g, m.perron);
  if (f.machine()) {
    ordered_json j;
    j["d"] = num(m.d());
    j["index"] = num(m.d() * m.d());
    ordered_json lam = ordered_json::object();
    for (int v = 0; v < g.num_vertices(); ++v) lam[g.name(v)] = num(m.lam(v));
    j["lambda"] = lam;
    j["normalization"] = gpa::to_string(m.perron.normalization);
    j["iterations"] = m.perron.iterations;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", res);
    j["eigen_residual"] = buf;
    out(j.dump() + "\n");
    return kOk;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", res);
  std::string s;
  s += "graph: " + std::to_string(g.num_even()) + " even, " + std::to_string(g.num_odd()) +
       " odd, " + std::to_string(g.num_edges()) + " edges\n";
  s += "normalization: " + gpa::to_string(m.perron.normalization) + "\n";
  s += "d: " + num(m.d()) + "\n";
  s += "index d^2: " + num(m.d() * m.d()) + "\n";
  s += "lambda:\n";
  for (int v = 0; v < g.num_vertices(); ++v)
    s += "  " + g.name(v) + (g.is_even(v) ? " (even) " : " (odd)  ") + num(m.lam(v)) + "\n";
  s += "iterations: " + std::to_string(m.perron.iterations) + "\n";
  s += "eigen residual: " + std::string(buf) + "\n";
  out(s);
  return kOk;
}

int cmd_basis(const std::string& graph, const std::vector<std::string>& args, const Flags& f) {
  if (args.size() != 2) throw UsageError("basis expects 'N SIGN' or 'tower N'");
  gpa::Space sp = args[0] == "tower" ? gpa::Space::A(parse_level(args[1]))
                                     : gpa::Space::G(parse_level(args[0]), parse_sign(args[1]));
  if (sp.n > f.cap_n)
    throw UsageError("n = " + std::to_string(sp.n) + " exceeds the cap n <= " +
                     std::to_string(f.cap_n) + " (raise it with --cap-n)");
  gpa::Model m = load_model(graph, f);
  auto loops = gpa::basis(m, sp);
  const auto& g = m.graph_of(sp);
  if (f.machine()) {
    ordered_json j;
    j["space"] = gpa::to_string(sp);
    j["dim"] = loops.size();
    ordered_json ls = ordered_json::array();
    for (const auto& l : loops) ls.push_back(gpa::format_loop(g, l));
    j["loops"] = ls;
    out(j.dump() + "\n");
    return kOk;
  }
  std::string s = "space: " + gpa::to_string(sp) + "\ndim: " + std::to_string(loops.size()) + "\n";
  for (size_t i = 0; i < loops.size(); ++i)
    s += std::to_string(i) + " " + gpa::format_loop(g, loops[i]) + "\n";
  out(s);
  return kOk;
}

int cmd_eval(const std::string& graph, const std::string& tangle_file,
             const std::vector<std::string>& inputs, const Flags& f) {
  gpa::Model m = load_model(graph, f);
  gpa::Tangle t = gpa::parse_tangle(read_file(tangle_file, "tangle file"));
  if (inputs.size() != t.inputs.size())
    throw UsageError("tangle has " + std::to_string(t.inputs.size()) + " input boxes, got " +
                     std::to_string(inputs.size()) + " elements");
  std::vector<gpa::Element> xs;
  for (size_t i = 0; i < inputs.size(); ++i)
    xs.push_back(read_input(m, gpa::Space::G(t.inputs[i].n, t.inputs[i].sign), inputs[i]));
  auto ev = gpa::evaluate_counted(m, t, xs);
  if (f.machine()) {
    ordered_json j;
    j["space"] = gpa::to_string(ev.value.space);
    ordered_json terms = ordered_json::array();
    for (const auto& [l, c] : ev.value.terms)
      terms.push_back({{"coeff", num(c)}, {"loop", gpa::format_loop(m.graph, l)}});
    j["terms"] = terms;
    j["states"] = ev.states;
    out(j.dump() + "\n");
    return kOk;
  }
  out("space: " + gpa::to_string(ev.value.space) + "\n");
  out(gpa::format_element(m, ev.value));
  out("states: " + std::to_string(ev.states) + "\n");
  return kOk;
}

int cmd_verify(const std::string& graph, const std::string& suite, const Flags& f) {
  gpa::Model m = load_model(graph, f);
  gpa::SuiteOptions opt;
  opt.tol = f.tol;
  opt.cap_n = f.cap_n;
  gpa::Report rep = gpa::run_suite(m, suite, opt);
  out(f.machine() ? rep.machine() : rep.text());
  return rep.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite graph planar algebras: spin vectors, loop bases, tangles, verification"};
  app.require_subcommand(1);
  Flags flags;
  double tol = 0.0;
  auto* tol_opt = app.add_option("--tol", tol, "residual tolerance for every check")
                      ->check(CLI::PositiveNumber);
  app.add_option("--cap-n", flags.cap_n, "largest loop length parameter n")
      ->check(CLI::Range(0, 12));
  app.add_option("--normalization", flags.normalization, "spin vector normalization")
      ->check(CLI::IsMember({"markov", "base"}));
  app.add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"text", "machine"}));

  std::string graph, tangle, suite;
  std::vector<std::string> rest;

  auto* fp = app.add_subcommand("fp", "Perron data of a graph");
  fp->add_option("graph", graph, "graph file")->required();

  auto* bs = app.add_subcommand("basis", "loop basis: 'N SIGN' or 'tower N'");
  bs->add_option("graph", graph, "graph file")->required();
  bs->add_option("spec", rest, "N SIGN | tower N")->required()->expected(2);

  auto* ev = app.add_subcommand("eval", "evaluate a tangle on input elements");
  ev->add_option("graph", graph, "graph file")->required();
  ev->add_option("tangle", tangle, "tangle file")->required();
  // inputs are taken from the leftover arguments (collected on the root), so "[e0+,e0-]" is not
  // expanded as a bracketed list; a leading minus sign needs "--" first
  app.allow_extras();
  ev->footer("INPUTS: one element per input box, inline ('c * [loop]; ...') or @file");

  auto* vf = app.add_subcommand("verify", "run a verification suite");
  vf->add_option("graph", graph, "graph file")->required();
  vf->add_option("suite", suite, "tl | rotation | tower | ppbasis | embed | all")
      ->required()
      ->check(CLI::IsMember(gpa::suite_names()));

  for (auto* sub : {fp, bs, ev, vf}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (*tol_opt) flags.tol = tol;
  const std::vector<std::string> extras = app.remaining();
  if (!*ev && !extras.empty()) {
    std::fprintf(stderr, "error: unexpected argument '%s'\n", extras.front().c_str());
    return kUsage;
  }

  try {
    if (*fp) return cmd_fp(graph, flags);
    if (*bs) return cmd_basis(graph, rest, flags);
    if (*ev) return cmd_eval(graph, tangle, extras, flags);
    if (*vf) return cmd_verify(graph, suite, flags);
  } catch (const gpa::NonConvergence& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNonConvergence;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
