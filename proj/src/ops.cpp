#include "gpa/ops.hpp"

#include <cmath>
#include <functional>

namespace gpa {

namespace {

void require_graph(const Element& x, Sign s, int min_n, const char* what) {
  if (x.space.tower() || x.space.sign != s || x.space.n < min_n)
    throw GradeError(std::string(what) + ": unexpected grade " + to_string(x.space));
}

// open walks of a given length from v, with their end vertex
void open_walks(const BipartiteGraph& g, int v, int len,
                const std::function<void(const std::vector<int>&, int)>& visit) {
  std::vector<int> path;
  std::function<void(int)> rec = [&](int u) {
    if (static_cast<int>(path.size()) == len) {
      visit(path, u);
      return;
    }
    for (int e : g.incident(u)) {
      path.push_back(e);
      rec(g.other_end(e, u));
      path.pop_back();
    }
  };
  rec(v);
}

// sqrt(lambda(v_n) / lambda(v_0)): converts the half-up/half-down reading of
// a loop into the all-up reading
double allup_weight(const Model& m, const std::vector<int>& vs) {
  int n = static_cast<int>(vs.size() - 1) / 2;
  return std::sqrt(m.lam(vs[n]) / m.lam(vs[0]));
}

}  // namespace

Element jones_projection(const Model& m, int n) {
  if (n < 1) throw GradeError("jones_projection: n must be positive");
  const auto& g = m.graph;
  Element out(Space::G(n + 1, Sign::Plus));
  for (int u = 0; u < g.num_even(); ++u) {
    open_walks(g, u, n - 1, [&](const std::vector<int>& gamma, int v) {
      for (int e : g.incident(v))
        for (int f : g.incident(v)) {
          double c = std::sqrt(m.lam(g.other_end(e, v)) * m.lam(g.other_end(f, v))) / m.lam(v);
          Loop l{u, gamma};
          l.edges.insert(l.edges.end(), {e, e, f, f});
          l.edges.insert(l.edges.end(), gamma.rbegin(), gamma.rend());
          out.add(l, c);
        }
    });
  }
  out.prune(m.tol.drop);
  return out;
}

Element jones_at(const Model& m, int i, int level) {
  return include_up_to(m, jones_projection(m, i), level);
}

Element jones_word(const Model& m, const std::vector<int>& word, int level) {
  Element x = identity(m, Space::G(level, Sign::Plus));
  for (int i : word) x = multiply(x, jones_at(m, i, level));
  return x;
}

Element cond_exp_down(const Model& m, const Element& x) {
  if (x.space.tower() || x.space.n < 1)
    throw GradeError("cond_exp_down: unexpected grade " + to_string(x.space));
  const int h = x.space.n;
  Space t = x.space;
  t.n -= 1;
  Element out(t);
  for (const auto& [l, c] : x.terms) {
    if (l.edges[h - 1] != l.edges[h]) continue;
    auto vs = loop_vertices(m.graph, l);
    Loop r{l.start, std::vector<int>(l.edges.begin(), l.edges.begin() + h - 1)};
    r.edges.insert(r.edges.end(), l.edges.begin() + h + 1, l.edges.end());
    if (r.edges.empty()) r.start = vs[h - 1];
    out.add(r, c * m.lam(vs[h]) / m.lam(vs[h - 1]));
  }
  out.prune(m.tol.drop);
  return out;
}

namespace {

Element left_cap(const Model& m, const Element& x) {
  const int n = x.space.n;
  Element out(Space::G(n - 1, flip(x.space.sign)));
  for (const auto& [l, c] : x.terms) {
    if (l.edges.front() != l.edges.back()) continue;
    int v1 = m.graph.other_end(l.edges.front(), l.start);
    Loop r{v1, std::vector<int>(l.edges.begin() + 1, l.edges.end() - 1)};
    out.add(r, c * m.lam(l.start) / m.lam(v1));
  }
  out.prune(m.tol.drop);
  return out;
}

Element left_string(const Model& m, const Element& x) {
  Element out(Space::G(x.space.n + 1, flip(x.space.sign)));
  for (const auto& [l, c] : x.terms)
    for (int e : m.graph.incident(l.start)) {
      Loop r{m.graph.other_end(e, l.start), {e}};
      r.edges.insert(r.edges.end(), l.edges.begin(), l.edges.end());
      r.edges.push_back(e);
      out.add(r, c);
    }
  return out;
}

Element rotate(const Model& m, const Element& x) {
  const int n = x.space.n;
  if (n == 0) return x;
  Element out(x.space);
  for (const auto& [l, c] : x.terms) {
    auto vs = loop_vertices(m.graph, l);
    Loop r{vs[2 * n - 2], {l.edges[2 * n - 2], l.edges[2 * n - 1]}};
    r.edges.insert(r.edges.end(), l.edges.begin(), l.edges.end() - 2);
    auto ws = loop_vertices(m.graph, r);
    double w = std::sqrt(m.lam(vs[0]) * m.lam(vs[n]));
    double w2 = std::sqrt(m.lam(ws[0]) * m.lam(ws[n]));
    out.add(r, c * w / w2);
  }
  out.prune(m.tol.drop);
  return out;
}

}  // namespace

Element cond_exp_left(const Model& m, const Element& x) {
  require_graph(x, Sign::Plus, 1, "cond_exp_left");
  return left_cap(m, x);
}

Element gamma_minus(const Model& m, const Element& x) {
  require_graph(x, Sign::Minus, 1, "gamma_minus");
  return left_cap(m, x);
}

Element i_plus(const Model& m, const Element& x) {
  require_graph(x, Sign::Plus, 0, "i_plus");
  return left_string(m, x);
}

Element rotation_plus(const Model& m, const Element& x) {
  require_graph(x, Sign::Plus, 0, "rotation_plus");
  return rotate(m, x);
}

Element rotation_minus(const Model& m, const Element& x) {
  require_graph(x, Sign::Minus, 0, "rotation_minus");
  return rotate(m, x);
}

Element rotation_power(const Model& m, const Element& x, int k) {
  Element y = x;
  for (int i = 0; i < k; ++i) y = rotate(m, y);
  return y;
}

Element annular_alpha(const Model& m, int j, const Element& x) {
  require_graph(x, Sign::Plus, 1, "annular_alpha");
  const int n = x.space.n;
  if (j < 1 || j > 2 * n) throw GradeError("annular_alpha: index out of range");
  if (j == 2 * n)
    return annular_alpha(m, 2 * n - 1, include_minus_to_plus(m, cond_exp_left(m, x)));
  Element out(Space::G(n - 1, Sign::Plus));
  for (const auto& [l, c] : x.terms) {
    if (l.edges[j - 1] != l.edges[j]) continue;
    auto vs = loop_vertices(m.graph, l);
    Loop r{l.start, l.edges};
    r.edges.erase(r.edges.begin() + j - 1, r.edges.begin() + j + 1);
    if (r.edges.empty()) r.start = vs[j - 1];
    double k = std::sqrt(m.lam(vs[j]) / m.lam(vs[j - 1]));
    out.add(r, c * k * allup_weight(m, vs) / allup_weight(m, loop_vertices(m.graph, r)));
  }
  out.prune(m.tol.drop);
  return out;
}

Element annular_beta(const Model& m, int j, const Element& x) {
  require_graph(x, Sign::Plus, 0, "annular_beta");
  const int n = x.space.n;
  if (j < 1 || j > 2 * n + 2) throw GradeError("annular_beta: index out of range");
  if (j == 2 * n + 2)
    return include_minus_to_plus(m, cond_exp_left(m, annular_beta(m, 2 * n + 1, x)));
  Element out(Space::G(n + 1, Sign::Plus));
  for (const auto& [l, c] : x.terms) {
    auto vs = loop_vertices(m.graph, l);
    int v = vs[j - 1];
    for (int e : m.graph.incident(v)) {
      Loop r{l.start, l.edges};
      r.edges.insert(r.edges.begin() + j - 1, {e, e});
      double k = std::sqrt(m.lam(m.graph.other_end(e, v)) / m.lam(v));
      out.add(r, c * k * allup_weight(m, vs) / allup_weight(m, loop_vertices(m.graph, r)));
    }
  }
  out.prune(m.tol.drop);
  return out;
}

Element alpha_via_jones(const Model& m, int j, const Element& x) {
  require_graph(x, Sign::Plus, 1, "alpha_via_jones");
  const int n = x.space.n;
  if (j < 1 || j >= n) throw GradeError("alpha_via_jones: needs 1 <= j < n");
  std::vector<int> word;
  for (int i = n; i >= j; --i) word.push_back(i);
  Element y = multiply(multiply(jones_word(m, word, n + 1), annular_beta(m, n + 1, x)),
                       jones_at(m, n, n + 1));
  return (1.0 / m.d()) * cond_exp_down(m, cond_exp_down(m, y));
}

Element beta_via_jones(const Model& m, int j, const Element& x) {
  require_graph(x, Sign::Plus, 0, "beta_via_jones");
  const int n = x.space.n;
  if (j < 1 || j > n) throw GradeError("beta_via_jones: needs 1 <= j <= n");
  std::vector<int> word;
  for (int i = j; i <= n; ++i) word.push_back(i);
  return multiply(jones_word(m, word, n + 1), include_up(m, x));
}

}  // namespace gpa
