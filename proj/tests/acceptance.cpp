// Acceptance run: one PASS/FAIL line per criterion.
// usage: acceptance <gpa cli binary> <tests/data directory>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gpa/embed.hpp"
#include "gpa/ops.hpp"
#include "gpa/suites.hpp"
#include "gpa/tangle.hpp"
#include "gpa/tower.hpp"

using namespace gpa;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Worst {
  double r = 0.0;
  void operator()(double x) { r = std::isfinite(x) ? std::max(r, std::abs(x)) : INFINITY; }
  void operator()(const Element& a, const Element& b) { (*this)(distance(a, b)); }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::vector<Element> elems(const Model& m, const Space& s) {
  std::vector<Element> out;
  for (const auto& l : basis(m, s)) out.push_back(basis_element(s, l));
  return out;
}

Element combo(const std::vector<Element>& xs, const Space& s, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Element out(s);
  for (const auto& x : xs) out += u(rng) * x;
  return out;
}

Outcome residual_outcome(double r, double tol, const std::string& extra = "") {
  return {r <= tol, "max residual " + sci(r) + " (tol " + sci(tol) + ")" + extra};
}

Outcome perron() {
  Worst w;
  for (auto spec : {named::a2(), named::a3(), named::a4(), named::star3()}) {
    Model m = Model::make(spec);
    w(eigen_residual(m.graph, m.perron));
    w(m.d() * m.d() - index_oracle(m.graph));
  }
  return residual_outcome(w.r, 1e-9);
}

Outcome temperley_lieb() {
  Worst w;
  for (auto spec : {named::a3(), named::a4()}) {
    Model m = Model::make(spec);
    for (int n = 2; n <= 4; ++n) {
      std::vector<Element> e(n);
      for (int i = 1; i < n; ++i) e[i] = jones_at(m, i, n);
      for (int i = 1; i < n; ++i) {
        w(multiply(e[i], e[i]), m.d() * e[i]);
        for (int j = 1; j < n; ++j) {
          if (std::abs(i - j) > 1) w(multiply(e[i], e[j]), multiply(e[j], e[i]));
          if (std::abs(i - j) == 1) w(multiply(multiply(e[i], e[j]), e[i]), e[i]);
        }
      }
    }
  }
  return residual_outcome(w.r, 1e-9);
}

Outcome matrix_units() {
  Worst w;
  bool dims = true;
  auto run = [&](const GraphSpec& spec, int n_max) {
    Model m = Model::make(spec);
    for (int n = 0; n <= n_max; ++n) {
      auto o = matrix_oracle(m, n);
      w(o.mult_residual);
      w(o.star_residual);
      w(o.trace_residual);
      dims = dims && o.dim_loops == o.dim_blocks;
    }
  };
  run(named::a3(), 3);
  run(named::a3_double_edge(), 2);
  Outcome o = residual_outcome(w.r, 1e-12, dims ? "" : ", dimension mismatch");
  o.pass = o.pass && dims;
  return o;
}

Outcome basic_construction() {
  Model m = Model::make(named::a3());
  const double d = m.d();
  Worst w;
  for (int n = 1; n <= 2; ++n) {
    Element f = jones_F(m, n);
    for (const auto& x0 : elems(m, Space::A(n))) {
      Element x = include_up(m, x0);
      w(multiply(multiply(f, x), f), d * multiply(include_up_to(m, cond_exp_A(m, x0), n + 1), f));
      w(trace(m, multiply(x, f)) - trace(m, x0) / d);
    }
  }
  return residual_outcome(w.r, 1e-9);
}

Outcome pimsner_popa() {
  Worst w;
  for (auto spec : {named::a3(), named::star3()}) {
    Model m = Model::make(spec);
    for (PPVariant v : {PPVariant::Distinguished, PPVariant::AllStarEdges}) {
      auto pp = pp_basis(m, v);
      for (const auto& x : elems(m, Space::A(1))) w(pp_reconstruct(m, pp, x), x);
      Element sum(Space::A(1));
      for (const auto& b : pp) sum += multiply(b, star(b));
      w(sum, m.d() * m.d() * identity(m, Space::A(1)));
    }
  }
  return residual_outcome(w.r, 1e-9, ", both basis variants");
}

Outcome commutant_expectation() {
  // central elements of A_2 over A_0 are the images of G_(2,+)
  Model m = Model::make(named::a3());
  auto pp = pp_basis(m);
  Worst w;
  for (const auto& x : elems(m, Space::G(2, Sign::Plus)))
    w(pp_commutant_average(m, pp, phi_iso(m, x)), phi_iso(m, (1.0 / m.d()) * cond_exp_left(m, x)));
  return residual_outcome(w.r, 1e-9);
}

Outcome rotations() {
  Model m = Model::make(named::a3());
  Worst per, adj;
  for (int n = 1; n <= 3; ++n)
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      for (const auto& x : elems(m, Space::G(n, s))) per(rotation_power(m, x, n), x);
      for (const auto& c : commutant_basis(m, n, s == Sign::Plus ? 0 : 1)) {
        Element r = c;
        for (int k = 0; k < n; ++k) r = rotation_tower(m, r, s);
        per(r, c);
      }
    }
  std::mt19937 rng(20240601);
  const auto b1 = elems(m, Space::A(1));
  auto factors = [&](int k) {
    std::vector<Element> ys;
    for (int i = 0; i < k; ++i) ys.push_back(combo(b1, Space::A(1), rng));
    return ys;
  };
  // <x, y_1 (x) ... (x) y_k> = tr(theta(y)* x)
  auto pair = [&](const std::vector<Element>& ys, const Element& x) {
    return trace(m, multiply(star(tensor_to_tower(m, ys)), x));
  };
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3;
    Element x = combo(commutant_basis(m, n, 0), Space::A(n), rng);
    auto ys = factors(n);
    std::vector<Element> cyc(ys.begin() + 1, ys.end());
    cyc.push_back(ys[0]);
    adj(pair(ys, rotation_tower(m, x, Sign::Plus)) - pair(cyc, x));
  }
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3;
    Element x = combo(commutant_basis(m, n, 1), Space::A(n + 1), rng);
    auto ys = factors(n + 1);
    std::vector<Element> cyc(ys.begin() + 1, ys.end() - 1);
    cyc.push_back(multiply(ys[n], ys[0]));
    cyc.push_back(identity(m, Space::A(1)));
    adj(pair(ys, rotation_tower(m, x, Sign::Minus)) - pair(cyc, x));
  }
  const double r = std::max(per.r, adj.r);
  return {r <= 1e-8, "period residual " + sci(per.r) + ", adjoint residual " + sci(adj.r) +
                         " over 2 x 100 pairs (tol 1e-08)"};
}

Outcome tangle_consistency() {
  Model m = Model::make(named::a3());
  Worst w;
  long states = 0;
  for (int n = 0; n <= 2; ++n) {
    if (n >= 1)
      for (int i = 1; i <= n; ++i)
        w(jones_at(m, i, n + 1), evaluate(m, tangles::jones(i, n + 1), {}));
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const auto b = elems(m, Space::G(n, s));
      for (const auto& x : b) {
        for (const auto& y : b) {
          auto ev = evaluate_counted(m, tangles::multiplication(n, s), {x, y});
          states += ev.states;
          w(ev.value, multiply(x, y));
        }
        w(evaluate(m, tangles::right_include(n, s), {x}), include_up(m, x));
        Element left = s == Sign::Plus ? i_plus(m, x) : include_minus_to_plus(m, x);
        w(evaluate(m, tangles::left_string(n, s), {x}), left);
        if (n >= 1) {
          w(evaluate(m, tangles::right_cap(n, s), {x}), cond_exp_down(m, x));
          Element cap = s == Sign::Plus ? cond_exp_left(m, x) : gamma_minus(m, x);
          w(evaluate(m, tangles::left_cap(n, s), {x}), cap);
          Element rot = s == Sign::Plus ? rotation_plus(m, x) : rotation_minus(m, x);
          w(evaluate(m, tangles::rotation(n, s), {x}), rot);
        }
        if (s == Sign::Plus) {
          for (int j = 1; j <= 2 * n; ++j)
            w(evaluate(m, tangles::alpha(j, n), {x}), annular_alpha(m, j, x));
          for (int j = 1; j <= 2 * n + 2; ++j)
            w(evaluate(m, tangles::beta(j, n), {x}), annular_beta(m, j, x));
        }
      }
    }
  }
  return residual_outcome(w.r, 1e-9, ", " + std::to_string(states) + " product states");
}

Outcome embedding() {
  Model m = Model::make(named::a4());
  const int s = 2;
  const double d = m.d();
  Worst jones, mult, st;
  std::string ranks;
  bool injective = true;
  for (int n = 1; n <= 3; ++n) {
    for (int j = 1; j < n; ++j) jones(embedding_shift(m, jones_at(m, j, n), s), jones_at(m, s + j, n + s));
    // words of length <= 3 in the generators
    std::vector<std::vector<int>> words{{}};
    for (size_t k = 0; k < words.size(); ++k)
      if (words[k].size() < 3)
        for (int i = 1; i < n; ++i) {
          auto w = words[k];
          w.push_back(i);
          words.push_back(w);
        }
    std::vector<Element> img;
    for (const auto& u : words) img.push_back(tl_to_gpa(m, tl_word(u, n, d)));
    for (size_t a = 0; a < img.size(); ++a) {
      Element pa = embedding_shift(m, img[a], s);
      st(embedding_shift(m, star(img[a]), s), star(pa));
      for (size_t b = 0; b < img.size(); ++b)
        mult(embedding_shift(m, multiply(img[a], img[b]), s),
             multiply(pa, embedding_shift(m, img[b], s)));
    }
    std::vector<Element> diag;
    for (const auto& x : tl_diagrams(n))
      diag.push_back(embedding_shift(m, tl_to_gpa(m, tl_element(x)), s));
    const int r = gram_rank(m, diag, 1e-7);
    injective = injective && r == catalan(n);
    ranks += (n > 1 ? " " : "") + std::to_string(r) + "/" + std::to_string(catalan(n));
  }
  EmbedOptions opt;
  opt.s = s;
  opt.n_max = 3;
  Report rep = verify_embedding(m, opt);
  const double r = std::max({jones.r, mult.r, st.r, rep.max_residual()});
  const bool pass = r <= 1e-8 && injective && rep.passed();
  return {pass, "max residual " + sci(r) + " (tol 1e-08), ranks " + ranks + ", generator family " +
                    std::to_string(rep.checks.size() - rep.failures()) + "/" +
                    std::to_string(rep.checks.size()) + " checks"};
}

std::string run_capture(const std::string& cmd, int* status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    *status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  size_t k;
  while ((k = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), k);
  int rc = pclose(p);
  *status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return out;
}

Outcome cli_determinism(const std::string& cli, const std::string& data) {
  const std::string cmd = "'" + cli + "' verify '" + data + "/a3.json' all";
  int s1 = 0, s2 = 0;
  std::string r1 = run_capture(cmd, &s1), r2 = run_capture(cmd, &s2);
  const bool same = r1 == r2 && !r1.empty();
  return {s1 == 0 && s2 == 0 && same, "exit codes " + std::to_string(s1) + " and " +
                                          std::to_string(s2) + ", reports " +
                                          (same ? "identical" : "differ") + " (" +
                                          std::to_string(r1.size()) + " bytes)"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <gpa cli> <data dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1], data = argv[2];
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds, 0 = none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Perron data on A2, A3, A4, star3", 1.0, perron},
      {2, "Temperley-Lieb relations, n <= 4, A3 and A4", 10.0, temperley_lieb},
      {3, "matrix-unit oracle, A3 n <= 3, parallel edge n <= 2", 10.0, matrix_units},
      {4, "basic construction, A3 n <= 2", 0.0, basic_construction},
      {5, "Pimsner-Popa basis, A3 and star3", 0.0, pimsner_popa},
      {6, "commutant conditional expectation on central elements of A_2, A3", 0.0, commutant_expectation},
      {7, "rotation period and adjoint identities, A3 n <= 3", 0.0, rotations},
      {8, "closed forms equal tangle state sums, A3 n <= 2", 60.0, tangle_consistency},
      {9, "embedding of TL into the A4 loop algebra, s = 2", 120.0, embedding},
      {10, "CLI verify all on A3 is deterministic", 0.0,
       [&] { return cli_determinism(cli, data); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0 && secs > c.budget) {
      o.pass = false;
      o.detail += ", over the " + std::to_string(static_cast<int>(c.budget)) + " s budget";
    }
    std::printf("%s %2d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
