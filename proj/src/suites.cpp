#include "gpa/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "gpa/embed.hpp"
#include "gpa/ops.hpp"
#include "gpa/tangle.hpp"
#include "gpa/tower.hpp"

namespace gpa {

namespace {

double tol_or(const SuiteOptions& o, double def) { return o.tol ? *o.tol : def; }

std::string upto(int n) { return "n <= " + std::to_string(n); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// running maximum of residuals
struct Worst {
  double r = 0.0;
  void operator()(double x) { r = std::isfinite(x) ? std::max(r, std::abs(x)) : INFINITY; }
  void operator()(const Element& a, const Element& b) { (*this)(distance(a, b)); }
};

std::vector<Element> basis_elements(const Model& m, const Space& s) {
  std::vector<Element> out;
  for (const auto& l : basis(m, s)) out.push_back(basis_element(s, l));
  return out;
}

Element random_combination(const std::vector<Element>& xs, const Space& s, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Element out(s);
  for (const auto& x : xs) out += u(rng) * x;
  return out;
}

std::vector<int> word_up(int from, int to) {  // from, from+1, .., to
  std::vector<int> w;
  for (int i = from; i <= to; ++i) w.push_back(i);
  return w;
}

std::vector<int> word_down(int from, int to) {  // from, from-1, .., to
  std::vector<int> w;
  for (int i = from; i >= to; --i) w.push_back(i);
  return w;
}

}  // namespace

double index_oracle(const BipartiteGraph& g, int iterations) {
  const int ne = g.num_even();
  std::vector<std::vector<double>> lam(ne, std::vector<double>(g.num_odd(), 0.0));
  for (const auto& e : g.edges()) lam[e.src][e.tgt - ne] += 1.0;
  std::vector<std::vector<double>> a(ne, std::vector<double>(ne, 0.0));
  for (int i = 0; i < ne; ++i)
    for (int j = 0; j < ne; ++j)
      for (int k = 0; k < g.num_odd(); ++k) a[i][j] += lam[i][k] * lam[j][k];
  std::vector<double> v(ne, 1.0), w(ne);
  double rho = 0.0;
  for (int it = 0; it < iterations; ++it) {
    for (int i = 0; i < ne; ++i) {
      w[i] = 0.0;
      for (int j = 0; j < ne; ++j) w[i] += a[i][j] * v[j];
    }
    double num = 0.0, den = 0.0;
    for (int i = 0; i < ne; ++i) num += v[i] * w[i], den += v[i] * v[i];
    rho = num / den;
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    for (int i = 0; i < ne; ++i) v[i] = w[i] / norm;
  }
  return rho;
}

Report suite_tl(const Model& m, const SuiteOptions& opt) {
  const std::string S = "tl";
  const double d = m.d();
  Report rep;

  rep.add(S, "sum of neighbouring spins = d * spin, every vertex", "spin vector eigen-equations",
          eigen_residual(m.graph, m.perron), tol_or(opt, 1e-9));
  double oracle = index_oracle(m.graph);
  rep.add(S, "d^2 = top eigenvalue of Lambda Lambda^T", "index equals the Perron eigenvalue",
          std::abs(d * d - oracle), tol_or(opt, 1e-9), "oracle " + sci(oracle));

  const int n_tl = std::min(4, opt.cap_n);
  Worst sq, far, adj;
  for (int n = 2; n <= n_tl; ++n) {
    std::vector<Element> e(n);
    for (int i = 1; i < n; ++i) e[i] = jones_at(m, i, n);
    for (int i = 1; i < n; ++i) {
      sq(multiply(e[i], e[i]), d * e[i]);
      for (int j = 1; j < n; ++j) {
        if (std::abs(i - j) > 1) far(commutator(e[i], e[j]).max_abs());
        if (std::abs(i - j) == 1) adj(multiply(multiply(e[i], e[j]), e[i]), e[i]);
      }
    }
  }
  rep.add(S, "E_i^2 = d E_i", "Temperley-Lieb relations", sq.r, tol_or(opt, 1e-9), upto(n_tl));
  rep.add(S, "E_i E_j = E_j E_i for |i-j| > 1", "Temperley-Lieb relations", far.r,
          tol_or(opt, 1e-9), upto(n_tl));
  rep.add(S, "E_i E_{i+-1} E_i = E_i", "Temperley-Lieb relations", adj.r, tol_or(opt, 1e-9),
          upto(n_tl));

  const int n_t = std::min(2, opt.cap_n);
  const double t8 = tol_or(opt, 1e-9);
  Worst markov;
  for (int n = 1; n <= n_t; ++n) {
    Element e = jones_projection(m, n);
    for (const auto& x : basis_elements(m, Space::G(n, Sign::Plus)))
      markov(trace(m, multiply(include_up(m, x), e)) - trace(m, x) / d);
  }
  rep.add(S, "tr(x E_n) = d^-1 tr(x)", "Markov property", markov.r, t8, upto(n_t));

  // closed forms against state sums of their defining tangles
  Worst w_jones, w_mult, w_down, w_incl, w_left, w_gm, w_ip, w_im, w_rp, w_rm, w_a, w_b;
  long states = 0;
  for (int n = 0; n <= n_t; ++n) {
    const Space sp = Space::G(n, Sign::Plus), sm = Space::G(n, Sign::Minus);
    auto bp = basis_elements(m, sp), bm = basis_elements(m, sm);
    if (n >= 1) w_jones(jones_projection(m, n), evaluate(m, tangles::jones(n, n + 1), {}));
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const auto& b = s == Sign::Plus ? bp : bm;
      for (const auto& x : b) {
        for (const auto& y : b) {
          auto ev = evaluate_counted(m, tangles::multiplication(n, s), {x, y});
          states += ev.states;
          w_mult(multiply(x, y), ev.value);
        }
        w_incl(include_up(m, x), evaluate(m, tangles::right_include(n, s), {x}));
        if (n >= 1) {
          w_down(cond_exp_down(m, x), evaluate(m, tangles::right_cap(n, s), {x}));
          Worst& rot = s == Sign::Plus ? w_rp : w_rm;
          rot(s == Sign::Plus ? rotation_plus(m, x) : rotation_minus(m, x),
              evaluate(m, tangles::rotation(n, s), {x}));
        }
      }
    }
    for (const auto& x : bp) {
      if (n >= 1) w_left(cond_exp_left(m, x), evaluate(m, tangles::left_cap(n, Sign::Plus), {x}));
      w_ip(i_plus(m, x), evaluate(m, tangles::left_string(n, Sign::Plus), {x}));
      for (int j = 1; j <= 2 * n; ++j)
        w_a(annular_alpha(m, j, x), evaluate(m, tangles::alpha(j, n), {x}));
      for (int j = 1; j <= 2 * n + 2; ++j)
        w_b(annular_beta(m, j, x), evaluate(m, tangles::beta(j, n), {x}));
    }
    for (const auto& x : bm) {
      if (n >= 1) w_gm(gamma_minus(m, x), evaluate(m, tangles::left_cap(n, Sign::Minus), {x}));
      w_im(include_minus_to_plus(m, x), evaluate(m, tangles::left_string(n, Sign::Minus), {x}));
    }
  }
  const std::string det = upto(n_t) + ", full basis";
  const std::string anc = "closed form equals the tangle state sum";
  rep.add(S, "Jones projection", anc, w_jones.r, t8, det);
  rep.add(S, "multiplication", anc, w_mult.r, t8, det + ", " + std::to_string(states) + " states");
  rep.add(S, "right cap (conditional expectation)", anc, w_down.r, t8, det);
  rep.add(S, "left cap gamma+ (commutant conditional expectation)", anc, w_left.r, t8, det);
  rep.add(S, "left cap gamma- on the minus side", anc, w_gm.r, t8, det);
  rep.add(S, "right inclusion", anc, w_incl.r, t8, det);
  rep.add(S, "left string i+", anc, w_ip.r, t8, det);
  rep.add(S, "left string i-", anc, w_im.r, t8, det);
  rep.add(S, "one-click rotation, plus side", anc, w_rp.r, t8, det);
  rep.add(S, "one-click rotation, minus side", anc, w_rm.r, t8, det);
  rep.add(S, "annular caps alpha_j", anc, w_a.r, t8, det);
  rep.add(S, "annular cups beta_j", anc, w_b.r, t8, det);

  // generator-family composites
  const int n_c = std::min(3, opt.cap_n - 1);
  Worst w_av, w_bv, w_ab, w_bn, w_an, w_ipc;
  for (int n = 0; n <= n_c; ++n) {
    for (const auto& x : basis_elements(m, Space::G(n, Sign::Plus))) {
      for (int j = 1; j < n; ++j) w_av(alpha_via_jones(m, j, x), annular_alpha(m, j, x));
      for (int j = 1; j <= n; ++j) w_bv(beta_via_jones(m, j, x), annular_beta(m, j, x));
      // on a 0-box the wrap-around cup encloses the input, so j = 2 is skipped there
      for (int j = 1; j <= (n == 0 ? 1 : 2 * n + 2); ++j)
        w_ab(annular_alpha(m, j, annular_beta(m, j, x)), d * x);
      w_bn(annular_beta(m, n + 1, x), include_up(m, x));
      if (n >= 1) w_an(annular_alpha(m, n, x), cond_exp_down(m, x));
      if (n + 2 <= opt.cap_n) {
        Element y = multiply(multiply(jones_word(m, word_up(1, n), n + 2),
                                      include_up_to(m, x, n + 2)),
                             jones_word(m, word_down(n + 1, 1), n + 2));
        w_ipc(cond_exp_left(m, y), i_plus(m, x));
      }
    }
  }
  const std::string dc = upto(n_c);
  rep.add(S, "alpha_j = d^-1 alpha_n alpha_{n+1}(E_n..E_j beta_{n+1}(x) E_n), j < n",
          "annular caps from Jones projections", w_av.r, t8, dc);
  rep.add(S, "beta_j(x) = E_j..E_n x, j <= n", "annular cups from Jones projections", w_bv.r,
          t8, dc);
  rep.add(S, "alpha_j beta_j = d", "closed loop removal", w_ab.r, t8, dc);
  rep.add(S, "beta_{n+1} = right inclusion", "annular cup at the right end", w_bn.r, t8, dc);
  rep.add(S, "alpha_n = right cap", "annular cap at the right end", w_an.r, t8, dc);
  rep.add(S, "i+(x) = gamma+(E_1..E_n x E_{n+1}..E_1)", "left string from the generator family",
          w_ipc.r, t8, dc);

  Worst unit;
  for (int n = 0; n + 1 <= std::min(3, opt.cap_n); ++n) {
    unit(i_plus(m, identity(m, Space::G(n, Sign::Plus))), identity(m, Space::G(n + 1, Sign::Minus)));
    unit(include_minus_to_plus(m, identity(m, Space::G(n, Sign::Minus))),
         identity(m, Space::G(n + 1, Sign::Plus)));
    if (n >= 1) {
      unit(cond_exp_left(m, identity(m, Space::G(n, Sign::Plus))),
           d * identity(m, Space::G(n - 1, Sign::Minus)));
      unit(gamma_minus(m, identity(m, Space::G(n, Sign::Minus))),
           d * identity(m, Space::G(n - 1, Sign::Plus)));
    }
  }
  rep.add(S, "string maps are unital, caps send 1 to d", "unitality", unit.r, t8);
  return rep;
}

Report suite_rotation(const Model& m, const SuiteOptions& opt) {
  const std::string S = "rotation";
  const double t = tol_or(opt, 1e-8);
  const int n_r = std::min(3, opt.cap_n - 1);
  Report rep;

  Worst per_p, per_m, one, unitary, per_tp, per_tm;
  for (int n = 1; n <= n_r; ++n) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      Worst& per = s == Sign::Plus ? per_p : per_m;
      Worst& per_t = s == Sign::Plus ? per_tp : per_tm;
      const auto b = basis_elements(m, Space::G(n, s));
      std::vector<Element> rb;
      for (const auto& x : b) {
        per(rotation_power(m, x, n), x);
        rb.push_back(rotation_power(m, x, 1));
        Element y = phi_iso(m, x), r = y;
        for (int k = 0; k < n; ++k) r = rotation_tower(m, r, s);
        per_t(r, y);
      }
      for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
          unitary(inner_product(m, rb[i], rb[j]) - inner_product(m, b[i], b[j]));
      // the one-click rotation of the identity diagram is again the identity only for n <= 2
      if (n <= 2) {
        Element u = identity(m, Space::G(n, s));
        one(rotation_power(m, u, 1), u);
      }
    }
  }
  const std::string dr = upto(n_r) + ", full basis";
  rep.add(S, "rho^n = id on G_(n,+)", "rotation has period n", per_p.r, t, dr);
  rep.add(S, "sigma^n = id on G_(n,-)", "rotation has period n", per_m.r, t, dr);
  rep.add(S, "rho^n = id on central vectors of A_n", "rotation has period n", per_tp.r, t, dr);
  rep.add(S, "sigma^n = id on central vectors of A_(n+1)", "rotation has period n", per_tm.r, t,
          dr);
  rep.add(S, "rotations fix the unit", "rotation is unital", one.r, t, upto(std::min(2, n_r)));
  // the trace weights loops by the dimension vector, so the trace form is
  // rotation invariant only when that vector is proportional to the spins
  double ratio = m.graph.dim_plus(0) / m.lam(0), spread = 0.0;
  for (int v = 0; v < m.graph.num_even(); ++v)
    spread = std::max(spread, std::abs(m.graph.dim_plus(v) / m.lam(v) - ratio) / ratio);
  if (spread <= 1e-9)
    rep.add(S, "<rho x, rho y> = <x, y>, both sides", "rotation is unitary", unitary.r, t,
            dr + ", dimension vector proportional to the spins");

  // a non-central element must be rejected; A_1 is commutative over a one-vertex A_0
  for (const auto& l : basis(m, Space::A(1))) {
    Element x = basis_element(Space::A(1), l);
    if (is_central(m, x, 0, t)) continue;
    long rejected = 0;
    try {
      rotation_tower(m, x, Sign::Plus);
    } catch (const NotCentral&) {
      rejected = 1;
    }
    rep.add_exact(S, "rotation rejects a non-central input", "rotation is defined on central vectors",
                  rejected, 1);
    break;
  }

  // adjoint identities against the tensor picture
  std::mt19937 rng(opt.seed);
  const auto b1 = basis_elements(m, Space::A(1));
  const Element one1 = identity(m, Space::A(1));
  auto factors = [&](int k) {
    std::vector<Element> ys;
    for (int i = 0; i < k; ++i) ys.push_back(random_combination(b1, Space::A(1), rng));
    return ys;
  };
  auto pairing = [&](const std::vector<Element>& ys, const Element& x) {
    return trace(m, multiply(star(tensor_to_tower(m, ys)), x));
  };
  Worst adj_p, adj_m;
  std::vector<std::vector<Element>> central_p(n_r + 1), central_m(n_r + 1);
  for (int n = 1; n <= n_r; ++n) {
    central_p[n] = commutant_basis(m, n, 0);
    if (n + 1 <= opt.cap_n) central_m[n] = commutant_basis(m, n, 1);
  }
  for (int i = 0; i < opt.samples; ++i) {
    const int n = 1 + i % n_r;
    Element x = random_combination(central_p[n], Space::A(n), rng);
    auto ys = factors(n);
    std::vector<Element> cyc(ys.begin() + 1, ys.end());
    cyc.push_back(ys[0]);
    adj_p(pairing(ys, rotation_tower(m, x, Sign::Plus)) - pairing(cyc, x));
  }
  for (int i = 0; i < opt.samples; ++i) {
    const int n = 1 + i % n_r;
    if (central_m[n].empty()) continue;
    Element x = random_combination(central_m[n], Space::A(n + 1), rng);
    auto ys = factors(n + 1);
    std::vector<Element> cyc(ys.begin() + 1, ys.end() - 1);
    cyc.push_back(multiply(ys[n], ys[0]));
    cyc.push_back(one1);
    adj_m(pairing(ys, rotation_tower(m, x, Sign::Minus)) - pairing(cyc, x));
  }
  const std::string da = std::to_string(opt.samples) + " random pairs, " + upto(n_r);
  rep.add(S, "<rho x, y_1 (x) .. (x) y_n> = <x, y_2 (x) .. (x) y_n (x) y_1>",
          "rotation is adjoint to the cyclic shift", adj_p.r, t, da);
  rep.add(S, "<sigma x, y_1 (x) .. (x) y_{n+1}> = <x, y_2 (x) .. (x) y_{n+1} y_1 (x) 1>",
          "minus rotation is adjoint to the twisted shift", adj_m.r, t, da);
  return rep;
}

Report suite_tower(const Model& m, const SuiteOptions& opt) {
  const std::string S = "tower";
  const double d = m.d();
  const double t = tol_or(opt, 1e-9);
  Report rep;

  const int n_o = std::min(3, opt.cap_n);
  Worst o_mult, o_star, o_tr;
  std::string dims;
  for (int n = 0; n <= n_o; ++n) {
    auto o = matrix_oracle(m, n);
    o_mult(o.mult_residual);
    o_star(o.star_residual);
    o_tr(o.trace_residual);
    if (o.dim_loops != o.dim_blocks)
      rep.add_exact(S, "dim A_" + std::to_string(n) + " = sum of squared block sizes",
                    "matrix units", static_cast<long>(o.dim_loops),
                    static_cast<long>(o.dim_blocks));
    dims += (n ? " " : "") + std::to_string(o.dim_loops);
  }
  const double t12 = tol_or(opt, 1e-12);
  const std::string dor = upto(n_o) + ", dims " + dims;
  rep.add(S, "loop product = matrix-unit product", "tower as a path algebra", o_mult.r, t12, dor);
  rep.add(S, "loop star = matrix adjoint", "tower as a path algebra", o_star.r, t12, dor);
  rep.add(S, "Markov trace = weighted block traces", "tower as a path algebra", o_tr.r, t12, dor);

  const int n_b = std::min(2, opt.cap_n - 1);
  Worst e_one, e_tr, f_xf, f_tr;
  for (int n = 1; n <= n_b; ++n) {
    e_one(cond_exp_A(m, identity(m, Space::A(n))), identity(m, Space::A(n - 1)));
    const auto bn = basis_elements(m, Space::A(n));
    const auto bl = basis_elements(m, Space::A(n - 1));
    for (const auto& x : bn)
      for (const auto& y : bl)
        e_tr(trace(m, multiply(x, include_up(m, y))) - trace(m, multiply(cond_exp_A(m, x), y)));
    Element f = jones_F(m, n);
    for (const auto& x0 : bn) {
      Element x = include_up(m, x0);
      f_xf(multiply(multiply(f, x), f), d * multiply(include_up_to(m, cond_exp_A(m, x0), n + 1), f));
      f_tr(trace(m, multiply(x, f)) - trace(m, x0) / d);
    }
  }
  const std::string db = upto(n_b) + ", full basis";
  rep.add(S, "E(1) = 1", "conditional expectation is unital", e_one.r, t, db);
  rep.add(S, "tr(E(x) y) = tr(x y), y one level down", "conditional expectation preserves the trace",
          e_tr.r, t, db);
  rep.add(S, "F_n x F_n = d E(x) F_n", "basic construction", f_xf.r, t, db);
  rep.add(S, "tr(x F_n) = d^-1 tr(x)", "basic construction", f_tr.r, t, db);

  const int n_f = std::min(4, opt.cap_n);
  Worst f_sq, f_far, f_adj;
  for (int top = 2; top <= n_f; ++top) {
    std::vector<Element> f(top);
    for (int i = 1; i < top; ++i) f[i] = include_up_to(m, jones_F(m, i), top);
    for (int i = 1; i < top; ++i) {
      f_sq(multiply(f[i], f[i]), d * f[i]);
      for (int j = 1; j < top; ++j) {
        if (std::abs(i - j) > 1) f_far(commutator(f[i], f[j]).max_abs());
        if (std::abs(i - j) == 1) f_adj(multiply(multiply(f[i], f[j]), f[i]), f[i]);
      }
    }
  }
  const std::string dfl = "levels <= " + std::to_string(n_f);
  rep.add(S, "F_i^2 = d F_i", "Temperley-Lieb relations in the tower", f_sq.r, t, dfl);
  rep.add(S, "F_i F_j = F_j F_i for |i-j| > 1", "Temperley-Lieb relations in the tower", f_far.r,
          t, dfl);
  rep.add(S, "F_i F_{i+-1} F_i = F_i", "Temperley-Lieb relations in the tower", f_adj.r, t, dfl);

  Worst ms_idem, ms_exp, ms_fxf;
  std::string pairs;
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= n && n + k <= std::min(4, opt.cap_n); ++k) {
      Element f = multistep_projection(m, n, k);
      ms_idem(multiply(f, f), f);
      ms_exp(cond_exp_A_to(m, f, n), std::pow(d, -2.0 * k) * identity(m, Space::A(n)));
      if (n <= 2)
        for (const auto& x0 : basis_elements(m, Space::A(n))) {
          Element x = include_up_to(m, x0, n + k);
          ms_fxf(multiply(multiply(f, x), f),
                 multiply(include_up_to(m, cond_exp_A_to(m, x0, n - k), n + k), f));
        }
      pairs += (pairs.empty() ? "" : " ") + std::string("(") + std::to_string(n) + "," +
               std::to_string(k) + ")";
    }
  }
  const std::string dms = "(n,k) in " + pairs;
  rep.add(S, "f^2 = f", "multistep basic construction", ms_idem.r, t, dms);
  rep.add(S, "E_(A_n)(f) = d^-2k", "multistep basic construction", ms_exp.r, t, dms);
  rep.add(S, "f x f = E_(A_(n-k))(x) f", "multistep basic construction", ms_fxf.r, t, dms);

  const int n_p = std::min(2, opt.cap_n - 1);
  Worst p_mult, p_star, p_tr, p_inv, p_cent, p_jones, p_exp;
  for (int n = 0; n <= n_p; ++n) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const auto b = basis_elements(m, Space::G(n, s));
      for (const auto& x : b) {
        Element px = phi_iso(m, x);
        p_inv(phi_inverse(m, px, s), x);
        p_star(phi_iso(m, star(x)), star(px));
        p_tr(trace(m, px) - trace(m, x));
        p_cent(is_central(m, px, s == Sign::Plus ? 0 : 1, t) ? 0.0 : INFINITY);
        for (const auto& y : b) p_mult(phi_iso(m, multiply(x, y)), multiply(px, phi_iso(m, y)));
        if (s == Sign::Plus && n >= 1)
          p_exp(cond_exp_A(m, px), phi_iso(m, (1.0 / d) * cond_exp_down(m, x)));
      }
    }
    if (n >= 1) p_jones(phi_iso(m, jones_projection(m, n)), jones_F(m, n));
  }
  const std::string dp = upto(n_p) + ", both sides, full basis";
  const std::string anc = "central vectors model the loop algebra";
  rep.add(S, "phi(xy) = phi(x) phi(y)", anc, p_mult.r, t, dp);
  rep.add(S, "phi(x*) = phi(x)*", anc, p_star.r, t, dp);
  rep.add(S, "tr(phi x) = tr(x)", anc, p_tr.r, t, dp);
  rep.add(S, "phi^-1 phi = id", anc, p_inv.r, t, dp);
  rep.add(S, "phi(x) commutes with A_0 (plus) or A_1 (minus)", anc, p_cent.r, t, dp);
  rep.add(S, "phi(E_n) = F_n", anc, p_jones.r, t, dp);
  rep.add(S, "E(phi x) = phi(d^-1 right cap of x)", anc, p_exp.r, t, dp);
  return rep;
}

Report suite_ppbasis(const Model& m, const SuiteOptions& opt) {
  const std::string S = "ppbasis";
  const double d = m.d();
  const double t = tol_or(opt, 1e-9);
  Report rep;
  const auto b1 = basis_elements(m, Space::A(1));
  const Element one = identity(m, Space::A(1));
  for (PPVariant v : {PPVariant::Distinguished, PPVariant::AllStarEdges}) {
    const std::string tag =
        v == PPVariant::Distinguished ? " (distinguished star edges)" : " (all star edges)";
    auto pp = pp_basis(m, v);
    Worst rec, idx, avg;
    for (const auto& x : b1) rec(pp_reconstruct(m, pp, x), x);
    Element sum(Space::A(1));
    for (const auto& b : pp) sum += multiply(b, star(b));
    idx(sum, d * d * one);
    if (opt.cap_n >= 3)
      for (const auto& x : basis_elements(m, Space::G(2, Sign::Plus)))
        avg(pp_commutant_average(m, pp, phi_iso(m, x)),
            phi_iso(m, (1.0 / d) * cond_exp_left(m, x)));
    const std::string sz = std::to_string(pp.size()) + " basis elements";
    rep.add(S, "x = sum_b b E(b* x) on every A_1 loop" + tag, "Pimsner-Popa basis", rec.r, t, sz);
    rep.add(S, "sum_b b b* = d^2" + tag, "index of the inclusion", idx.r, t, sz);
    if (opt.cap_n >= 3)
      rep.add(S, "d^-2 sum_b b x b* = d^-1 left cap of x on A_0' n A_2" + tag,
              "commutant conditional expectation", avg.r, t, "full central basis");
  }
  return rep;
}

Report suite_embed(const Model& m, const SuiteOptions& opt) {
  EmbedOptions eo;
  eo.cap_n = opt.cap_n;
  if (opt.tol) eo.tol = *opt.tol;
  // shift by the smallest standard 2r; the report flags the case where none exists
  auto scan = minimal_standard_r(m, 3, eo.tol, eo.cutoff);
  if (scan.r >= 0) eo.s = 2 * scan.r;
  return verify_embedding(m, eo);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"tl", "rotation", "tower", "ppbasis", "embed",
                                                 "all"};
  return names;
}

Report run_suite(const Model& m, const std::string& name, const SuiteOptions& opt) {
  using Fn = std::function<Report(const Model&, const SuiteOptions&)>;
  const std::vector<std::pair<std::string, Fn>> table = {{"tl", suite_tl},
                                                         {"rotation", suite_rotation},
                                                         {"tower", suite_tower},
                                                         {"ppbasis", suite_ppbasis},
                                                         {"embed", suite_embed}};
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw UnknownSuite("unknown suite: " + name);
  Report rep;
  for (const auto& [n, fn] : table)
    if (name == "all" || name == n) rep.merge(fn(m, opt));
  return rep;
}

}  // namespace gpa
