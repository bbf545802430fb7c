#include "gpa/tower.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "gpa/ops.hpp"

namespace gpa {

namespace {

void require_tower(const Element& x, int min_n, const char* what) {
  if (!x.space.tower() || x.space.n < min_n)
    throw GradeError(std::string(what) + ": unexpected grade " + to_string(x.space));
}

// walks of length len from v on the base graph
void base_walks(const BipartiteGraph& g, int v, int len,
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

std::vector<int> star_edges_at(const AugmentedGraph& aug, int v) {
  std::vector<int> out;
  for (int e : aug.tilde.incident(v))
    if (aug.is_star_edge(e)) out.push_back(e);
  return out;
}

Loop wrap(int star, const std::vector<int>& outer, const std::vector<int>& inner) {
  Loop l{star, outer};
  l.edges.insert(l.edges.end(), inner.begin(), inner.end());
  l.edges.insert(l.edges.end(), outer.rbegin(), outer.rend());
  return l;
}

// the first base edge at odd w and the distinguished star edge at its even end
std::pair<int, int> canonical_entry(const Model& m, int w) {
  int eps = m.graph.incident(w).front();
  return {m.aug.distinguished_star_edge(m.graph.edge(eps).src), eps};
}

}  // namespace

Element jones_F(const Model& m, int n) {
  if (n < 1) throw GradeError("jones_F: n must be positive");
  const auto& g = m.graph;
  Element out(Space::A(n + 1));
  for (int u = 0; u < g.num_even(); ++u)
    for (int eta : star_edges_at(m.aug, u))
      base_walks(g, u, n - 1, [&](const std::vector<int>& walk, int v) {
        std::vector<int> gamma{eta};
        gamma.insert(gamma.end(), walk.begin(), walk.end());
        for (int e : g.incident(v))
          for (int f : g.incident(v)) {
            double c = std::sqrt(m.lam(g.other_end(e, v)) * m.lam(g.other_end(f, v))) / m.lam(v);
            out.add(wrap(m.aug.star, gamma, {e, e, f, f}), c);
          }
      });
  out.prune(m.tol.drop);
  return out;
}

Element cond_exp_A(const Model& m, const Element& x) {
  require_tower(x, 1, "cond_exp_A");
  const int h = x.space.half();
  Element out(Space::A(x.space.n - 1));
  for (const auto& [l, c] : x.terms) {
    if (l.edges[h - 1] != l.edges[h]) continue;
    auto vs = loop_vertices(m.aug.tilde, l);
    Loop r{l.start, std::vector<int>(l.edges.begin(), l.edges.begin() + h - 1)};
    r.edges.insert(r.edges.end(), l.edges.begin() + h + 1, l.edges.end());
    out.add(r, c * m.lam(vs[h]) / (m.d() * m.lam(vs[h - 1])));
  }
  out.prune(m.tol.drop);
  return out;
}

Element cond_exp_A_to(const Model& m, const Element& x, int level) {
  require_tower(x, 0, "cond_exp_A_to");
  if (level < 0 || level > x.space.n) throw GradeError("cond_exp_A_to: bad target level");
  Element y = x;
  while (y.space.n > level) y = cond_exp_A(m, y);
  return y;
}

std::vector<Element> pp_basis(const Model& m, PPVariant variant) {
  const auto& g = m.graph;
  const int star = m.aug.star;
  std::vector<Element> out;
  // B1: one element per loop of G_{1,+}
  for (const auto& l : loop_basis(g, 1, Sign::Plus)) {
    int v = l.start, w = g.other_end(l.edges[0], v);
    double c = std::sqrt(m.d() * m.lam(v) / m.lam(w));
    Element b(Space::A(1));
    for (int eta : star_edges_at(m.aug, v)) b.add(wrap(star, {eta}, {l.edges[0], l.edges[1]}), c);
    out.push_back(std::move(b));
  }
  // B2: pairs of edges into the same odd vertex from different even ends
  for (int w = g.num_even(); w < g.num_vertices(); ++w)
    for (int e1 : g.incident(w))
      for (int e2 : g.incident(w)) {
        int u1 = g.edge(e1).src, u2 = g.edge(e2).src;
        if (u1 == u2) continue;
        for (int eta1 : star_edges_at(m.aug, u1)) {
          if (variant == PPVariant::Distinguished) {
            double c = std::sqrt(m.d() * m.lam(u2) / m.lam(w));
            int eta2 = m.aug.distinguished_star_edge(u2);
            Loop l{star, {eta1, e1, e2, eta2}};
            out.emplace_back(Space::A(1), l, c);
          } else {
            double c = std::sqrt(m.d() * m.lam(u2) / (g.dim_plus(u2) * m.lam(w)));
            for (int eta2 : star_edges_at(m.aug, u2)) {
              Loop l{star, {eta1, e1, e2, eta2}};
              out.emplace_back(Space::A(1), l, c);
            }
          }
        }
      }
  return out;
}

Element pp_reconstruct(const Model& m, const std::vector<Element>& basis, const Element& x) {
  require_tower(x, 1, "pp_reconstruct");
  if (x.space.n != 1) throw GradeError("pp_reconstruct: expects an element of level 1");
  Element out(x.space);
  for (const auto& b : basis)
    out += multiply(b, include_up(m, cond_exp_A(m, multiply(star(b), x))));
  out.prune(m.tol.drop);
  return out;
}

Element pp_commutant_average(const Model& m, const std::vector<Element>& basis,
                             const Element& x) {
  require_tower(x, 1, "pp_commutant_average");
  Element out(x.space);
  for (const auto& b0 : basis) {
    Element b = include_up_to(m, b0, x.space.n);
    out += multiply(multiply(b, x), star(b));
  }
  out *= 1.0 / (m.d() * m.d());
  out.prune(m.tol.drop);
  return out;
}

Element phi_iso(const Model& m, const Element& x) {
  if (x.space.tower()) throw GradeError("phi_iso: expects an element of G_(n,+/-)");
  const auto& g = m.graph;
  const int star = m.aug.star;
  const bool plus = x.space.sign == Sign::Plus;
  Element out(Space::A(plus ? x.space.n : x.space.n + 1));
  for (const auto& [l, c] : x.terms) {
    if (plus) {
      for (int eta : star_edges_at(m.aug, l.start)) out.add(wrap(star, {eta}, l.edges), c);
    } else {
      for (int eps : g.incident(l.start))
        for (int eta : star_edges_at(m.aug, g.edge(eps).src))
          out.add(wrap(star, {eta, eps}, l.edges), c);
    }
  }
  return out;
}

Element phi_inverse(const Model& m, const Element& x, Sign sign) {
  require_tower(x, sign == Sign::Plus ? 0 : 1, "phi_inverse");
  const auto& t = m.aug.tilde;
  const bool plus = sign == Sign::Plus;
  Element out(Space::G(plus ? x.space.n : x.space.n - 1, sign));
  for (const auto& [l, c] : x.terms) {
    const int len = static_cast<int>(l.edges.size());
    int v1 = t.other_end(l.edges[0], l.start);
    if (plus) {
      if (l.edges[0] != m.aug.distinguished_star_edge(v1) || l.edges[len - 1] != l.edges[0])
        continue;
      out.add(Loop{v1, std::vector<int>(l.edges.begin() + 1, l.edges.end() - 1)}, c);
    } else {
      int w = t.other_end(l.edges[1], v1);
      auto [eta, eps] = canonical_entry(m, w);
      if (l.edges[0] != eta || l.edges[1] != eps || l.edges[len - 1] != eta ||
          l.edges[len - 2] != eps)
        continue;
      out.add(Loop{w, std::vector<int>(l.edges.begin() + 2, l.edges.end() - 2)}, c);
    }
  }
  return out;
}

std::vector<Element> commutant_basis(const Model& m, int n, int level) {
  if (level != 0 && level != 1) throw GradeError("commutant_basis: level must be 0 or 1");
  Sign s = level == 0 ? Sign::Plus : Sign::Minus;
  std::vector<Element> out;
  for (const auto& l : loop_basis(m.graph, n, s))
    out.push_back(phi_iso(m, basis_element(Space::G(n, s), l)));
  return out;
}

bool is_central(const Model& m, const Element& x, int level, double tol) {
  require_tower(x, level, "is_central");
  for (const auto& l : tower_basis(m.aug, level)) {
    Element a = include_up_to(m, basis_element(Space::A(level), l), x.space.n);
    if (commutator(a, x).max_abs() > tol) return false;
  }
  return true;
}

Element rotation_tower(const Model& m, const Element& x, Sign sign, bool enforce) {
  const int level = sign == Sign::Plus ? 0 : 1;
  if (enforce && !is_central(m, x, level, m.tol.eq))
    throw NotCentral("rotation_tower: input does not commute with level " +
                     std::to_string(level));
  Element y = phi_inverse(m, x, sign);
  y = sign == Sign::Plus ? rotation_plus(m, y) : rotation_minus(m, y);
  return phi_iso(m, y);
}

Element tensor_to_tower(const Model& m, const std::vector<Element>& factors) {
  const int n = static_cast<int>(factors.size());
  if (n == 0) throw GradeError("tensor_to_tower: no factors");
  for (const auto& f : factors)
    if (f.space != Space::A(1)) throw GradeError("tensor_to_tower: factors must lie in level 1");
  std::vector<Element> jones;
  for (int j = 1; j < n; ++j) jones.push_back(include_up_to(m, jones_F(m, j), n));
  Element out = include_up_to(m, factors[0], n);
  for (int k = 1; k < n; ++k) {
    Element v = jones[k - 1];
    for (int j = k - 1; j >= 1; --j) v = multiply(v, jones[j - 1]);
    out = multiply(multiply(out, v), include_up_to(m, factors[k], n));
  }
  out.prune(m.tol.drop);
  return out;
}

Element multistep_projection(const Model& m, int n, int k) {
  if (k < 0 || k > n) throw GradeError("multistep_projection: needs 0 <= k <= n");
  const int top = n + k;
  Element f = identity(m, Space::A(top));
  if (k == 0) return f;
  for (int i = 0; i < k; ++i)
    for (int j = n + i; j >= n - k + 1 + i; --j)
      f = multiply(f, (1.0 / m.d()) * include_up_to(m, jones_F(m, j), top));
  f *= std::pow(m.d(), k * (k - 1));
  f.prune(m.tol.drop);
  return f;
}

MatrixOracleResult matrix_oracle(const Model& m, int n) {
  if (n < 0) throw GradeError("matrix_oracle: n must be non-negative");
  const int h = n + 1;
  // half-paths from the star: a star edge, then n base edges
  std::map<int, std::vector<std::vector<int>>> paths;  // end vertex -> paths
  for (int u = 0; u < m.graph.num_even(); ++u)
    for (int eta : star_edges_at(m.aug, u))
      base_walks(m.graph, u, n, [&](const std::vector<int>& walk, int v) {
        std::vector<int> p{eta};
        p.insert(p.end(), walk.begin(), walk.end());
        paths[v].push_back(p);
      });
  std::map<std::vector<int>, std::pair<int, int>> where;  // path -> (vertex, row)
  for (auto& [v, ps] : paths) {
    std::sort(ps.begin(), ps.end());
    for (int i = 0; i < static_cast<int>(ps.size()); ++i) where[ps[i]] = {v, i};
  }

  using Blocks = std::map<int, Eigen::MatrixXd>;
  auto zero = [&] {
    Blocks b;
    for (const auto& [v, ps] : paths) b[v] = Eigen::MatrixXd::Zero(ps.size(), ps.size());
    return b;
  };
  auto to_blocks = [&](const Element& x) {
    Blocks b = zero();
    for (const auto& [l, c] : x.terms) {
      std::vector<int> p(l.edges.begin(), l.edges.begin() + h);
      std::vector<int> q(l.edges.rbegin(), l.edges.rbegin() + h);
      auto [v, i] = where.at(p);
      auto [w, j] = where.at(q);
      if (v != w) throw GradeError("matrix_oracle: halves end at different vertices");
      b[v](i, j) += c;
    }
    return b;
  };
  auto diff = [](const Blocks& a, const Blocks& b) {
    double r = 0.0;
    for (const auto& [v, x] : a) r = std::max(r, (x - b.at(v)).cwiseAbs().maxCoeff());
    return r;
  };

  MatrixOracleResult res;
  res.n = n;
  auto loops = tower_basis(m.aug, n);
  res.dim_loops = loops.size();
  for (const auto& [v, ps] : paths) {
    res.dim_blocks += ps.size() * ps.size();
    res.block_weights.emplace_back(m.graph.name(v), std::pow(m.d(), -n) * m.lam(v));
  }
  const Space sp = Space::A(n);
  std::vector<Blocks> units;
  for (const auto& l : loops) units.push_back(to_blocks(basis_element(sp, l)));
  for (size_t a = 0; a < loops.size(); ++a) {
    Element x = basis_element(sp, loops[a]);
    res.star_residual = std::max(res.star_residual, [&] {
      Blocks s = to_blocks(star(x));
      Blocks tr = units[a];
      for (auto& [v, mat] : tr) mat.transposeInPlace();
      return diff(s, tr);
    }());
    double tr_matrix = 0.0;
    for (const auto& [v, mat] : units[a])
      tr_matrix += std::pow(m.d(), -n) * m.lam(v) * mat.trace();
    res.trace_residual = std::max(res.trace_residual, std::abs(trace_tower(m, x) - tr_matrix));
    for (size_t b = 0; b < loops.size(); ++b) {
      Blocks prod = zero();
      for (auto& [v, mat] : prod) mat = units[a].at(v) * units[b].at(v);
      Blocks got = to_blocks(multiply(x, basis_element(sp, loops[b])));
      res.mult_residual = std::max(res.mult_residual, diff(got, prod));
    }
  }
  return res;
}

}  // namespace gpa
