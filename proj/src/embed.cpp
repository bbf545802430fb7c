#include "gpa/embed.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

#include "gpa/ops.hpp"

namespace gpa {

namespace {

// position of a point when walking the boundary counterclockwise from the
// bottom left corner
int circular(int n, int p) { return p < n ? p : 3 * n - 1 - p; }

using Chords = std::vector<std::pair<int, int>>;

// noncrossing perfect matchings of the positions lo..hi-1
std::vector<Chords> matchings(int lo, int hi) {
  if (lo >= hi) return {Chords{}};
  std::vector<Chords> out;
  for (int k = lo + 1; k < hi; k += 2)
    for (const auto& in : matchings(lo + 1, k))
      for (const auto& rest : matchings(k + 1, hi)) {
        Chords c{{lo, k}};
        c.insert(c.end(), in.begin(), in.end());
        c.insert(c.end(), rest.begin(), rest.end());
        out.push_back(std::move(c));
      }
  return out;
}

// number of cycles in the union of two perfect matchings on the same nodes
int count_cycles(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<bool> seen(a.size(), false);
  int cycles = 0;
  for (size_t s = 0; s < a.size(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    int u = static_cast<int>(s);
    while (!seen[u]) {
      seen[u] = true;
      int v = a[u];
      seen[v] = true;
      u = b[v];
    }
  }
  return cycles;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// one more through string on the right
TLDiagram tl_include(const TLDiagram& x) {
  const int n = x.n;
  auto map = [n](int p) { return p < n ? p : p + 1; };
  std::vector<int> partner(2 * (n + 1));
  for (int p = 0; p < 2 * n; ++p) partner[map(p)] = map(x.partner[p]);
  partner[n] = 2 * n + 1;
  partner[2 * n + 1] = n;
  return {n + 1, partner};
}

std::vector<Element> images(const Model& m, const std::vector<TLDiagram>& ds, Sign sign) {
  std::vector<Element> out;
  for (const auto& x : ds) out.push_back(tl_to_gpa(m, tl_element(x), sign));
  return out;
}

// all words in E_1..E_{n-1} of length <= len
std::vector<std::vector<int>> words(int n, int len) {
  std::vector<std::vector<int>> out{{}};
  for (size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == len) continue;
    for (int g = 1; g < n; ++g) {
      auto w = out[i];
      w.push_back(g);
      out.push_back(w);
    }
  }
  return out;
}

// coordinates in an orthonormal frame for the trace inner product
struct Frame {
  std::vector<Loop> loops;
  std::map<Loop, int> index;
  std::vector<double> scale;  // sqrt of the trace of l* l
  Space space;

  Frame(const Model& m, const Space& s) : space(s) {
    loops = basis(m, s);
    for (size_t i = 0; i < loops.size(); ++i) {
      index[loops[i]] = static_cast<int>(i);
      Element l = basis_element(s, loops[i]);
      scale.push_back(std::sqrt(trace(m, multiply(star(l), l))));
    }
  }
  Eigen::VectorXd coords(const Element& x) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<long>(loops.size()));
    for (const auto& [l, c] : x.terms) {
      int i = index.at(l);
      v(i) = c * scale[i];
    }
    return v;
  }
  Element element(const Eigen::VectorXd& v, double drop) const {
    Element x(space);
    for (size_t i = 0; i < loops.size(); ++i)
      if (std::abs(v(static_cast<long>(i))) > drop)
        x.add(loops[i], v(static_cast<long>(i)) / scale[i]);
    return x;
  }
};

Eigen::MatrixXd columns(const Frame& f, const std::vector<Element>& xs) {
  Eigen::MatrixXd a(static_cast<long>(f.loops.size()), static_cast<long>(xs.size()));
  for (size_t k = 0; k < xs.size(); ++k) a.col(static_cast<long>(k)) = f.coords(xs[k]);
  return a;
}

}  // namespace

TLDiagram make_diagram(int n, const std::vector<int>& partner) {
  if (n < 0 || static_cast<int>(partner.size()) != 2 * n)
    throw TLError("TL diagram: expected " + std::to_string(2 * n) + " points");
  for (int p = 0; p < 2 * n; ++p) {
    int q = partner[p];
    if (q < 0 || q >= 2 * n || q == p || partner[q] != p)
      throw TLError("TL diagram: not a perfect matching at point " + std::to_string(p));
  }
  for (int p = 0; p < 2 * n; ++p)
    for (int q = 0; q < 2 * n; ++q) {
      int a = circular(n, p), b = circular(n, partner[p]);
      int c = circular(n, q), d = circular(n, partner[q]);
      if (a > b) std::swap(a, b);
      if (c > d) std::swap(c, d);
      if (a < c && c < b && b < d) throw TLError("TL diagram: strings cross");
    }
  return {n, partner};
}

TLDiagram tl_identity_diagram(int n) {
  std::vector<int> partner(2 * n);
  for (int i = 0; i < n; ++i) {
    partner[i] = n + i;
    partner[n + i] = i;
  }
  return {n, partner};
}

TLDiagram tl_jones_diagram(int i, int n) {
  if (i < 1 || i >= n) throw TLError("TL generator index out of range");
  TLDiagram x = tl_identity_diagram(n);
  x.partner[i - 1] = i;
  x.partner[i] = i - 1;
  x.partner[n + i - 1] = n + i;
  x.partner[n + i] = n + i - 1;
  return x;
}

std::vector<TLDiagram> tl_diagrams(int n) {
  std::vector<int> at(2 * n);
  for (int p = 0; p < 2 * n; ++p) at[circular(n, p)] = p;
  std::vector<TLDiagram> out;
  for (const auto& chords : matchings(0, 2 * n)) {
    std::vector<int> partner(2 * n);
    for (auto [a, b] : chords) {
      partner[at[a]] = at[b];
      partner[at[b]] = at[a];
    }
    out.push_back({n, partner});
  }
  std::sort(out.begin(), out.end());
  return out;
}

long catalan(int n) {
  long c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

TLElement tl_element(const TLDiagram& x, double c) {
  TLElement e{x.n, {}};
  e.terms[x] = c;
  return e;
}

TLElement tl_word(const std::vector<int>& word, int n, double d) {
  TLElement x = tl_element(tl_identity_diagram(n));
  for (int i : word) x = tl_multiply(x, tl_element(tl_jones_diagram(i, n)), d);
  return x;
}

TLElement tl_multiply(const TLElement& x, const TLElement& y, double d) {
  if (x.n != y.n) throw TLError("TL multiply: strand counts differ");
  const int n = x.n;
  TLElement out{n, {}};
  // nodes: 0..n-1 bottom of y, n..2n-1 the glued middle, 2n..3n-1 top of x
  for (const auto& [dx, cx] : x.terms)
    for (const auto& [dy, cy] : y.terms) {
      auto via_x = [&](int u) { return n + dx.partner[u - n]; };
      auto via_y = [&](int u) { return dy.partner[u]; };
      std::vector<int> partner(2 * n, -1);
      std::vector<bool> middle_seen(n, false);
      for (int b = 0; b < 3 * n; ++b) {
        if (b >= n && b < 2 * n) continue;
        int p = b < n ? b : b - n;  // result point
        if (partner[p] >= 0) continue;
        int u = b;
        bool use_y = b < n;
        while (true) {
          u = use_y ? via_y(u) : via_x(u);
          if (u < n || u >= 2 * n) break;
          middle_seen[u - n] = true;
          use_y = !use_y;
        }
        int q = u < n ? u : u - n;
        partner[p] = q;
        partner[q] = p;
      }
      // closed loops live entirely in the middle
      int loops = 0;
      for (int s = 0; s < n; ++s) {
        if (middle_seen[s]) continue;
        ++loops;
        int u = n + s;
        bool use_y = true;
        do {
          middle_seen[u - n] = true;
          u = use_y ? via_y(u) : via_x(u);
          use_y = !use_y;
        } while (u != n + s);
      }
      out.terms[{n, partner}] += cx * cy * std::pow(d, loops);
    }
  return out;
}

TLElement tl_star(const TLElement& x) {
  const int n = x.n;
  auto flip_pt = [n](int p) { return p < n ? p + n : p - n; };
  TLElement out{n, {}};
  for (const auto& [dx, c] : x.terms) {
    std::vector<int> partner(2 * n);
    for (int p = 0; p < 2 * n; ++p) partner[flip_pt(p)] = flip_pt(dx.partner[p]);
    out.terms[{n, partner}] += c;
  }
  return out;
}

TLElement tl_add(const TLElement& x, const TLElement& y, double cy) {
  if (x.n != y.n) throw TLError("TL add: strand counts differ");
  TLElement out = x;
  for (const auto& [d, c] : y.terms) out.terms[d] += cy * c;
  return out;
}

double tl_trace(const TLElement& x, double d) {
  const int n = x.n;
  std::vector<int> closure(2 * n);
  for (int i = 0; i < n; ++i) {
    closure[i] = n + i;
    closure[n + i] = i;
  }
  double t = 0.0;
  for (const auto& [dx, c] : x.terms)
    t += c * std::pow(d, count_cycles(dx.partner, closure) - n);
  return t;
}

double tl_max_abs(const TLElement& x) {
  double r = 0.0;
  for (const auto& [d, c] : x.terms) r = std::max(r, std::abs(c));
  return r;
}

Tangle tl_tangle(const TLDiagram& x, Sign sign) {
  const int n = x.n;
  Tangle t;
  t.n = n;
  t.sign = sign;
  t.down = n;
  auto row = [](TangleRow::Kind k, int p) {
    TangleRow r;
    r.kind = k;
    r.pos = p;
    return r;
  };
  // peel innermost pairs off a line of points, recording positions
  auto peel = [&](std::vector<int> line) {
    std::vector<int> pos;
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t p = 0; p + 1 < line.size(); ++p)
        if (x.partner[line[p]] == line[p + 1]) {
          pos.push_back(static_cast<int>(p));
          line.erase(line.begin() + static_cast<long>(p), line.begin() + static_cast<long>(p) + 2);
          changed = true;
          break;
        }
    }
    return pos;
  };
  std::vector<int> bottom, top;
  for (int i = 0; i < n; ++i) {
    bottom.push_back(i);
    top.push_back(n + i);
  }
  for (int p : peel(bottom)) t.rows.push_back(row(TangleRow::Kind::Cap, p));
  auto cups = peel(top);
  for (auto it = cups.rbegin(); it != cups.rend(); ++it)
    t.rows.push_back(row(TangleRow::Kind::Cup, *it));
  validate(t);
  return t;
}

Element tl_to_gpa(const Model& m, const TLElement& x, Sign sign) {
  Element out(Space::G(x.n, sign));
  for (const auto& [d, c] : x.terms) out += c * evaluate(m, tl_tangle(d, sign), {});
  out.prune(m.tol.drop);
  return out;
}

Element embedding_shift(const Model& m, const Element& x, int s) {
  if (x.space.tower()) throw GradeError("embedding_shift: expects an element of G_(n,+/-)");
  if (s < 0 || s % 2 != 0) throw GradeError("embedding_shift: s must be even and non-negative");
  int total = x.space.n + s + (x.space.sign == Sign::Minus ? 1 : 0);
  if (total > m.tol.cap_n)
    throw GradeError("embedding_shift: level " + std::to_string(total) + " exceeds cap " +
                     std::to_string(m.tol.cap_n));
  if (s == 0 && x.space.sign == Sign::Plus) return x;
  return evaluate(m, tangles::shift(s, x.space.n, x.space.sign), {x});
}

int gram_rank(const Model& m, const std::vector<Element>& xs, double cutoff) {
  if (xs.empty()) return 0;
  // loops are orthogonal, so the Gram matrix is A^T A in a scaled loop frame;
  // its eigenvalues are read off the smaller of A^T A and A A^T
  Frame f(m, xs.front().space);
  Eigen::MatrixXd a = columns(f, xs);
  Eigen::MatrixXd g = a.cols() <= a.rows() ? Eigen::MatrixXd(a.transpose() * a)
                                           : Eigen::MatrixXd(a * a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
  int r = 0;
  for (long i = 0; i < eig.eigenvalues().size(); ++i)
    if (eig.eigenvalues()(i) > cutoff) ++r;
  return r;
}

Element casimir_average(const Model& m, int s, const Element& y, double* residual) {
  if (y.space.tower() || y.space.sign != Sign::Plus || y.space.n < s + 1)
    throw GradeError("casimir_average: unexpected grade " + to_string(y.space));
  const double d = m.d();
  std::vector<Element> u;
  for (const auto& x : tl_diagrams(s + 1)) u.push_back(tl_to_gpa(m, tl_element(x)));
  // solve sum_ij C_ij u_i e u_j = 1 at level s+2
  const Space top = Space::G(s + 2, Sign::Plus);
  Frame f(m, top);
  Element e = (1.0 / d) * jones_at(m, s + 1, s + 2);
  std::vector<Element> up;
  for (const auto& x : u) up.push_back(include_up(m, x));
  std::vector<Element> terms;
  for (const auto& a : up)
    for (const auto& b : up) terms.push_back(multiply(multiply(a, e), b));
  Eigen::MatrixXd a = columns(f, terms);
  Eigen::VectorXd one = f.coords(identity(m, top));
  Eigen::VectorXd c = a.completeOrthogonalDecomposition().solve(one);
  if (residual) *residual = (a * c - one).cwiseAbs().maxCoeff();
  const size_t k = up.size();
  std::vector<Element> lifted;
  for (const auto& x : u) lifted.push_back(include_up_to(m, x, y.space.n));
  Element out(y.space);
  for (size_t i = 0; i < k; ++i) {
    Element left = multiply(lifted[i], y);
    for (size_t j = 0; j < k; ++j) {
      double cij = c(static_cast<long>(i * k + j));
      if (std::abs(cij) > m.tol.drop) out += cij * multiply(left, lifted[j]);
    }
  }
  out.prune(m.tol.drop);
  return out;
}

StandardnessScan minimal_standard_r(const Model& m, int r_max, double tol, double cutoff) {
  StandardnessScan scan;
  const double d = m.d();
  for (int r = 0; r <= r_max; ++r) {
    const int k = 2 * r;
    if (k + 2 > m.tol.cap_n) {
      scan.log.push_back("r=" + std::to_string(r) + ": level " + std::to_string(k + 2) +
                         " exceeds cap");
      break;
    }
    Element e = (1.0 / d) * jones_projection(m, k + 1);
    // e x e = E(x) e on the middle algebra
    double fxf = 0.0;
    std::vector<Element> mid, mid_up;
    for (const auto& x : tl_diagrams(k + 1)) {
      Element xi = tl_to_gpa(m, tl_element(x));
      Element xu = tl_to_gpa(m, tl_element(tl_include(x)));
      mid.push_back(xi);
      mid_up.push_back(xu);
      Element ex = include_up_to(m, (1.0 / d) * cond_exp_down(m, xi), k + 2);
      fxf = std::max(fxf, distance(multiply(multiply(e, xu), e), multiply(ex, e)));
    }
    // y -> y e injective on the bottom algebra
    std::vector<Element> low, low_e;
    for (const auto& y : tl_diagrams(k)) {
      TLDiagram yy = tl_include(tl_include(y));
      Element yi = tl_to_gpa(m, tl_element(yy));
      low.push_back(tl_to_gpa(m, tl_element(y)));
      low_e.push_back(multiply(yi, e));
    }
    int rank_low = gram_rank(m, low, cutoff), rank_low_e = gram_rank(m, low_e, cutoff);
    // E(e) = d^-2
    double ee = distance((1.0 / d) * cond_exp_down(m, e),
                         std::pow(d, -2) * identity(m, Space::G(k + 1, Sign::Plus)));
    // the top algebra is spanned by (middle) e (middle)
    std::vector<Element> sandwiches;
    for (const auto& a : mid_up)
      for (const auto& b : mid_up) sandwiches.push_back(multiply(multiply(a, e), b));
    int rank_span = gram_rank(m, sandwiches, cutoff);
    int rank_top = gram_rank(m, images(m, tl_diagrams(k + 2), Sign::Plus), cutoff);
    bool ok = fxf <= tol && rank_low == rank_low_e && ee <= tol && rank_span == rank_top;
    scan.log.push_back("r=" + std::to_string(r) + ": exe residual " + fmt(fxf) +
                       ", injective rank " + std::to_string(rank_low_e) + "/" +
                       std::to_string(rank_low) + ", E(e) residual " + fmt(ee) + ", span rank " +
                       std::to_string(rank_span) + "/" + std::to_string(rank_top) +
                       (ok ? " -> standard" : " -> not standard"));
    if (ok) {
      scan.r = r;
      break;
    }
  }
  return scan;
}

std::pair<double, double> isometry_constant(const Model& m, int s, int n) {
  auto ds = tl_diagrams(n);
  auto xs = images(m, ds, Sign::Plus);
  std::vector<double> ratios;
  for (size_t i = 0; i < xs.size(); ++i) {
    Element pi = embedding_shift(m, xs[i], s);
    for (size_t j = 0; j < xs.size(); ++j) {
      double base = inner_product(m, xs[i], xs[j]);
      if (std::abs(base) < 1e-12) continue;
      ratios.push_back(inner_product(m, pi, embedding_shift(m, xs[j], s)) / base);
    }
  }
  if (ratios.empty()) return {0.0, 0.0};
  auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  return {ratios.front(), *hi - *lo};
}

Report verify_embedding(const Model& m, const EmbedOptions& opt) {
  Report rep;
  const std::string S = "embed";
  const int s = opt.s;
  const double d = m.d();
  const double tol = opt.tol;
  if (s < 0 || s % 2 != 0) throw GradeError("verify_embedding: s must be even");

  // s = 0 is the identity map and needs no standardness
  if (s > 0) {
    auto scan = minimal_standard_r(m, 3, tol, opt.cutoff);
    std::string log;
    for (const auto& l : scan.log) log += (log.empty() ? "" : "; ") + l;
    rep.add_exact(S, "smallest standard shift s = 2r", "choice of the shift in the embedding",
                  scan.r < 0 ? -1 : 2 * scan.r, s, log);
  }

  for (int n = 1; n <= opt.n_max; ++n) {
    if (s + n + 1 > opt.cap_n) break;
    const std::string at = " (n=" + std::to_string(n) + ")";
    auto ds = tl_diagrams(n);
    auto xs = images(m, ds, Sign::Plus);
    std::vector<Element> px;
    for (const auto& x : xs) px.push_back(embedding_shift(m, x, s));

    double r_jones = 0.0;
    for (int j = 1; j < n; ++j)
      r_jones = std::max(r_jones, distance(embedding_shift(m, jones_at(m, j, n), s),
                                           jones_at(m, s + j, s + n)));
    if (n > 1)
      rep.add(S, "Phi(E_j) = E_{s+j}" + at, "shifted Jones projections", r_jones, tol);

    double r_mult = 0.0, r_tl = 0.0;
    for (size_t i = 0; i < ds.size(); ++i)
      for (size_t j = 0; j < ds.size(); ++j) {
        Element xy = multiply(xs[i], xs[j]);
        r_tl = std::max(r_tl, distance(tl_to_gpa(m, tl_multiply(tl_element(ds[i]),
                                                                 tl_element(ds[j]), d)),
                                       xy));
        r_mult = std::max(r_mult, distance(embedding_shift(m, xy, s), multiply(px[i], px[j])));
      }
    for (const auto& w : words(n, 3))
      for (size_t cut = 0; cut <= w.size(); ++cut) {
        std::vector<int> u(w.begin(), w.begin() + static_cast<long>(cut));
        std::vector<int> v(w.begin() + static_cast<long>(cut), w.end());
        Element gu = tl_to_gpa(m, tl_word(u, n, d)), gv = tl_to_gpa(m, tl_word(v, n, d));
        r_mult = std::max(r_mult, distance(embedding_shift(m, multiply(gu, gv), s),
                                           multiply(embedding_shift(m, gu, s),
                                                    embedding_shift(m, gv, s))));
      }
    rep.add(S, "TL diagrams map multiplicatively into the loop algebra" + at,
            "Temperley-Lieb relations", r_tl, tol);
    rep.add(S, "Phi(xy) = Phi(x) Phi(y)" + at, "Phi is an algebra map", r_mult, tol);

    double r_star = 0.0;
    for (size_t i = 0; i < xs.size(); ++i)
      r_star = std::max(r_star, distance(embedding_shift(m, star(xs[i]), s), star(px[i])));
    rep.add(S, "Phi(x*) = Phi(x)*" + at, "Phi is a *-map", r_star, tol);

    double r_e = 0.0;
    for (int j = 1; j < n; ++j) {
      Element ej = jones_at(m, j, n), fj = jones_at(m, s + j, s + n);
      for (size_t i = 0; i < xs.size(); ++i) {
        r_e = std::max(r_e, distance(embedding_shift(m, multiply(ej, xs[i]), s),
                                     multiply(fj, px[i])));
        r_e = std::max(r_e, distance(embedding_shift(m, multiply(xs[i], ej), s),
                                     multiply(px[i], fj)));
      }
    }
    if (n > 1)
      rep.add(S, "Phi(E_j x) = F_j Phi(x), Phi(x E_j) = Phi(x) F_j" + at,
              "generator family: Jones multiplication", r_e, tol);

    double r_alpha = 0.0, r_beta = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
      r_alpha = std::max(r_alpha, distance(embedding_shift(m, cond_exp_down(m, xs[i]), s),
                                           cond_exp_down(m, px[i])));
      r_beta = std::max(r_beta, distance(embedding_shift(m, include_up(m, xs[i]), s),
                                         include_up(m, px[i])));
    }
    rep.add(S, "Phi commutes with the right cap" + at,
            "generator family: conditional expectation", r_alpha, tol);
    rep.add(S, "Phi commutes with the right inclusion" + at, "generator family: inclusion",
            r_beta, tol);

    // gamma+: (1/d) sum_b b Phi(x) b*, with the Pimsner-Popa sum taken from
    // the Casimir element of the shifted TL inclusion.  With s = 0 there is
    // no shifted inclusion and Phi commutes with the left cap on the nose.
    double r_gamma = 0.0, r_casimir = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
      Element rhs = embedding_shift(m, cond_exp_left(m, xs[i]), s);
      Element lhs;
      if (s == 0) {
        lhs = include_minus_to_plus(m, cond_exp_left(m, px[i]));
      } else {
        double res = 0.0;
        lhs = (1.0 / d) * casimir_average(m, s, px[i], &res);
        r_casimir = std::max(r_casimir, res);
      }
      r_gamma = std::max(r_gamma, distance(lhs, rhs));
    }
    if (s == 0)
      rep.add(S, "Phi(left cap of x) = left cap of Phi(x)" + at, "generator family: left cap",
              r_gamma, tol);
    else
      rep.add(S, "(1/d) sum_b b Phi(x) b* = Phi(left cap of x)" + at,
              "generator family: left cap through the commutant expectation", r_gamma, tol,
              "Casimir residual " + fmt(r_casimir));

    double r_minus = 0.0;
    {
      auto ys = images(m, ds, Sign::Minus);
      for (const auto& y : ys)
        r_minus = std::max(r_minus, distance(embedding_shift(m, y, s),
                                             embedding_shift(m, include_minus_to_plus(m, y), s)));
    }
    rep.add(S, "Phi(x) = Phi(i^-(x)) on the minus side" + at,
            "generator family: left string inclusion", r_minus, tol);

    const int rank_q = gram_rank(m, xs, opt.cutoff);
    rep.add_exact(S, "rank Phi(Q_n) = rank Q_n" + at, "Phi is injective",
                  gram_rank(m, px, opt.cutoff), rank_q);
    // TL_n is faithful on the loop algebra iff d > 2cos(pi/(n+1))
    if (d > 2.0 * std::cos(M_PI / (n + 1)) + 1e-9)
      rep.add_exact(S, "Gram rank of Phi(TL_n) = Catalan(n)" + at, "Phi is injective on TL_n",
                    gram_rank(m, px, opt.cutoff), catalan(n));

    auto [c, spread] = isometry_constant(m, s, n);
    rep.add(S, "<Phi x, Phi y> = c <x, y>" + at, "Phi is isometric up to a constant", spread,
            tol, "c = " + fmt(c));
  }
  return rep;
}

}  // namespace gpa
