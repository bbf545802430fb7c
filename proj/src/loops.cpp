#include "gpa/loops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace gpa {

std::string to_string(const Space& s) {
  if (s.tower()) return "A_" + std::to_string(s.n);
  return "G_(" + std::to_string(s.n) + "," + sign_char(s.sign) + ")";
}

void Element::add(const Loop& l, double c) {
  if (c == 0.0) return;
  terms[l] += c;
}

void Element::prune(double drop) {
  std::erase_if(terms, [drop](const auto& kv) { return std::abs(kv.second) < drop; });
}

double Element::coeff(const Loop& l) const {
  auto it = terms.find(l);
  return it == terms.end() ? 0.0 : it->second;
}

double Element::max_abs() const {
  double m = 0.0;
  for (const auto& [l, c] : terms) m = std::max(m, std::abs(c));
  return m;
}

namespace {
void require_same(const Space& a, const Space& b, const char* what) {
  if (!(a == b))
    throw GradeError(std::string(what) + ": grade mismatch " + to_string(a) + " vs " +
                     to_string(b));
}
}  // namespace

Element& Element::operator+=(const Element& o) {
  require_same(space, o.space, "add");
  for (const auto& [l, c] : o.terms) terms[l] += c;
  prune();
  return *this;
}

Element& Element::operator-=(const Element& o) {
  require_same(space, o.space, "subtract");
  for (const auto& [l, c] : o.terms) terms[l] -= c;
  prune();
  return *this;
}

Element& Element::operator*=(double c) {
  for (auto& [l, v] : terms) v *= c;
  prune();
  return *this;
}

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }
Element operator*(double c, Element a) { return a *= c; }

double distance(const Element& a, const Element& b) {
  require_same(a.space, b.space, "distance");
  double m = 0.0;
  auto ia = a.terms.begin(), ib = b.terms.begin();
  while (ia != a.terms.end() || ib != b.terms.end()) {
    if (ib == b.terms.end() || (ia != a.terms.end() && ia->first < ib->first)) {
      m = std::max(m, std::abs(ia->second));
      ++ia;
    } else if (ia == a.terms.end() || ib->first < ia->first) {
      m = std::max(m, std::abs(ib->second));
      ++ib;
    } else {
      m = std::max(m, std::abs(ia->second - ib->second));
      ++ia, ++ib;
    }
  }
  return m;
}

Model Model::make(const GraphSpec& spec, Normalization norm, const Tolerances& tol) {
  return make(build_graph(spec), norm, tol);
}

Model Model::make(const BipartiteGraph& g, Normalization norm, const Tolerances& tol) {
  if (g.num_vertices() > tol.cap_vertices)
    throw GraphError("graph has " + std::to_string(g.num_vertices()) +
                     " vertices, above the cap of " + std::to_string(tol.cap_vertices));
  Model m;
  m.graph = g;
  m.aug = augment(g);
  m.perron = perron_data(g, norm, tol);
  m.tol = tol;
  return m;
}

std::vector<int> loop_vertices(const BipartiteGraph& g, const Loop& l) {
  std::vector<int> vs{l.start};
  vs.reserve(l.edges.size() + 1);
  for (int e : l.edges) vs.push_back(g.other_end(e, vs.back()));
  return vs;
}

bool is_self_adjoint(const Loop& l) {
  return std::equal(l.edges.begin(), l.edges.end(), l.edges.rbegin());
}

Loop reversed(const Loop& l) {
  return {l.start, std::vector<int>(l.edges.rbegin(), l.edges.rend())};
}

namespace {

using StepFilter = std::function<bool(int step, int edge)>;

void closed_walks(const BipartiteGraph& g, int start, int len, const StepFilter& ok,
                  std::vector<Loop>& out) {
  std::vector<int> path;
  std::function<void(int)> rec = [&](int v) {
    int step = static_cast<int>(path.size());
    if (step == len) {
      if (v == start) out.push_back({start, path});
      return;
    }
    for (int e : g.incident(v)) {
      if (!ok(step, e)) continue;
      path.push_back(e);
      rec(g.other_end(e, v));
      path.pop_back();
    }
  };
  rec(start);
}

}  // namespace

std::vector<Loop> loop_basis(const BipartiteGraph& g, int n, Sign sign) {
  std::vector<Loop> out;
  int lo = sign == Sign::Plus ? 0 : g.num_even();
  int hi = sign == Sign::Plus ? g.num_even() : g.num_vertices();
  for (int v = lo; v < hi; ++v)
    closed_walks(g, v, 2 * n, [](int, int) { return true; }, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Loop> tower_basis(const AugmentedGraph& aug, int n) {
  std::vector<Loop> out;
  const int len = 2 * n + 2;
  closed_walks(
      aug.tilde, aug.star, len,
      [&](int step, int e) {
        bool outer = step == 0 || step == len - 1;
        return outer == aug.is_star_edge(e);
      },
      out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Loop> basis(const Model& m, const Space& s) {
  if (s.n > m.tol.cap_n)
    throw GradeError("n = " + std::to_string(s.n) + " exceeds the cap n <= " +
                     std::to_string(m.tol.cap_n));
  return s.tower() ? tower_basis(m.aug, s.n) : loop_basis(m.graph, s.n, s.sign);
}

Element basis_element(const Space& s, const Loop& l) { return Element(s, l, 1.0); }

Element identity(const Model& m, const Space& s) {
  Element x(s);
  for (const auto& l : basis(m, s))
    if (is_self_adjoint(l)) x.add(l, 1.0);
  return x;
}

Element multiply(const Element& x, const Element& y) {
  require_same(x.space, y.space, "multiply");
  const int h = x.space.half();
  Element out(x.space);
  if (h == 0) {
    for (const auto& [a, ca] : x.terms) out.add(a, ca * y.coeff(a));
    out.prune();
    return out;
  }
  // group y by its first half
  std::map<std::vector<int>, std::vector<const std::pair<const Loop, double>*>> by_first;
  for (const auto& kv : y.terms)
    by_first[std::vector<int>(kv.first.edges.begin(), kv.first.edges.begin() + h)].push_back(&kv);
  std::vector<int> key(h);
  for (const auto& [a, ca] : x.terms) {
    for (int i = 0; i < h; ++i) key[i] = a.edges[2 * h - 1 - i];
    auto it = by_first.find(key);
    if (it == by_first.end()) continue;
    for (const auto* kv : it->second) {
      const Loop& b = kv->first;
      if (b.start != a.start) continue;
      Loop r{a.start, std::vector<int>(a.edges.begin(), a.edges.begin() + h)};
      r.edges.insert(r.edges.end(), b.edges.begin() + h, b.edges.end());
      out.add(r, ca * kv->second);
    }
  }
  out.prune();
  return out;
}

Element star(const Element& x) {
  Element out(x.space);
  for (const auto& [l, c] : x.terms) out.add(reversed(l), c);
  return out;
}

Element commutator(const Element& x, const Element& y) {
  return multiply(x, y) - multiply(y, x);
}

double trace_tower(const Model& m, const Element& x) {
  if (!x.space.tower()) throw GradeError("trace_tower: element is not in the tower");
  const int n = x.space.n;
  double t = 0.0;
  for (const auto& [l, c] : x.terms) {
    if (!is_self_adjoint(l)) continue;
    auto vs = loop_vertices(m.aug.tilde, l);
    t += c * std::pow(m.d(), -n) * m.lam(vs[n + 1]);
  }
  return t;
}

double trace_gpa(const Model& m, const Element& x) {
  if (x.space.tower()) throw GradeError("trace_gpa: element is in the tower");
  const int n = x.space.n;
  const bool plus = x.space.sign == Sign::Plus;
  const double dn = std::pow(m.d(), plus ? -n : -(n + 1));
  double t = 0.0;
  for (const auto& [l, c] : x.terms) {
    if (!is_self_adjoint(l)) continue;
    auto vs = loop_vertices(m.graph, l);
    double mult = plus ? m.graph.dim_plus(l.start) : m.graph.dim_minus(l.start);
    t += c * mult * dn * m.lam(vs[n]);
  }
  return t;
}

double trace(const Model& m, const Element& x) {
  return x.space.tower() ? trace_tower(m, x) : trace_gpa(m, x);
}

double inner_product(const Model& m, const Element& x, const Element& y) {
  require_same(x.space, y.space, "inner_product");
  return trace(m, multiply(star(y), x));
}

Element include_up(const Model& m, const Element& x) {
  Space s = x.space;
  Space t = s;
  t.n += 1;
  const auto& g = m.graph_of(s);
  const int h = s.half();
  Element out(t);
  for (const auto& [l, c] : x.terms) {
    auto vs = loop_vertices(g, l);
    for (int e : g.incident(vs[h])) {
      if (!m.interior_edge(s, e)) continue;
      Loop r{l.start, std::vector<int>(l.edges.begin(), l.edges.begin() + h)};
      r.edges.push_back(e);
      r.edges.push_back(e);
      r.edges.insert(r.edges.end(), l.edges.begin() + h, l.edges.end());
      out.add(r, c);
    }
  }
  return out;
}

Element include_up_to(const Model& m, const Element& x, int level) {
  if (level < x.space.n) throw GradeError("include_up_to: target level below source");
  Element y = x;
  while (y.space.n < level) y = include_up(m, y);
  return y;
}

Element include_minus_to_plus(const Model& m, const Element& x) {
  if (x.space.tower() || x.space.sign != Sign::Minus)
    throw GradeError("include_minus_to_plus: expected an element of G_(n,-)");
  Element out(Space::G(x.space.n + 1, Sign::Plus));
  for (const auto& [l, c] : x.terms) {
    for (int e : m.graph.incident(l.start)) {
      Loop r{m.graph.other_end(e, l.start), {e}};
      r.edges.insert(r.edges.end(), l.edges.begin(), l.edges.end());
      r.edges.push_back(e);
      out.add(r, c);
    }
  }
  return out;
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_loop(const BipartiteGraph& g, const Loop& l) {
  if (l.edges.empty()) return "[" + g.name(l.start) + "]";
  std::string s = "[";
  int v = l.start;
  for (size_t i = 0; i < l.edges.size(); ++i) {
    if (i) s += ",";
    s += g.edge(l.edges[i]).id;
    s += g.is_even(v) ? '+' : '-';
    v = g.other_end(l.edges[i], v);
  }
  return s + "]";
}

std::string format_element(const Model& m, const Element& x) {
  const auto& g = m.graph_of(x.space);
  std::string out;
  for (const auto& [l, c] : x.terms) out += format_number(c) + " * " + format_loop(g, l) + "\n";
  if (out.empty()) out = "0\n";
  return out;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Loop parse_loop(const Model& m, const Space& s, const std::string& body) {
  const auto& g = m.graph_of(s);
  std::vector<std::string> items;
  std::stringstream ss(body);
  for (std::string it; std::getline(ss, it, ',');) items.push_back(trim(it));
  if (items.size() == 1 && s.half() == 0) {
    int v = g.vertex(items[0]);
    if (v < 0) throw GradeError("unknown vertex '" + items[0] + "'");
    if (g.is_even(v) != (s.sign == Sign::Plus))
      throw GradeError("vertex '" + items[0] + "' has the wrong parity for " + to_string(s));
    return {v, {}};
  }
  if (static_cast<int>(items.size()) != 2 * s.half())
    throw GradeError("loop [" + body + "] has the wrong length for " + to_string(s));
  Loop l;
  int v = -1;
  for (size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    if (it.size() < 2 || (it.back() != '+' && it.back() != '-'))
      throw GradeError("step '" + it + "' must end in + or -");
    int e = g.edge_index(it.substr(0, it.size() - 1));
    if (e < 0) throw GradeError("unknown edge '" + it.substr(0, it.size() - 1) + "'");
    int from = it.back() == '+' ? g.edge(e).src : g.edge(e).tgt;
    if (i == 0) {
      v = l.start = from;
    } else if (from != v) {
      throw GradeError("loop [" + body + "] is not a walk");
    }
    l.edges.push_back(e);
    v = g.other_end(e, v);
  }
  if (v != l.start) throw GradeError("loop [" + body + "] is not closed");
  bool ok = s.tower() ? l.start == m.aug.star
                      : g.is_even(l.start) == (s.sign == Sign::Plus);
  if (!ok) throw GradeError("loop [" + body + "] is not based correctly for " + to_string(s));
  for (size_t i = 0; s.tower() && i < l.edges.size(); ++i) {
    bool outer = i == 0 || i + 1 == l.edges.size();
    if (outer != m.aug.is_star_edge(l.edges[i]))
      throw GradeError("loop [" + body + "] must touch the star only at its ends");
  }
  return l;
}

}  // namespace

Element parse_element(const Model& m, const Space& s, const std::string& text) {
  Element x(s);
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty() || line == "0") continue;
    double c = 1.0;
    auto lb = line.find('[');
    auto rb = line.rfind(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb)
      throw GradeError("term '" + line + "' lacks a [loop]");
    std::string head = trim(line.substr(0, lb));
    if (!head.empty()) {
      if (head.back() != '*') throw GradeError("term '" + line + "' must read 'c * [loop]'");
      head = trim(head.substr(0, head.size() - 1));
      try {
        size_t used = 0;
        c = std::stod(head, &used);
        if (used != head.size()) throw std::invalid_argument(head);
      } catch (const std::exception&) {
        throw GradeError("bad coefficient '" + head + "'");
      }
    }
    x.add(parse_loop(m, s, line.substr(lb + 1, rb - lb - 1)), c);
  }
  x.prune();
  return x;
}

}  // namespace gpa
