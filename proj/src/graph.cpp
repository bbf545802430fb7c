#include "gpa/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gpa {

BipartiteGraph::BipartiteGraph(std::vector<std::string> even, std::vector<std::string> odd,
                               std::vector<Edge> edges, std::vector<int> dim, bool has_dim)
    : num_even_(static_cast<int>(even.size())),
      edges_(std::move(edges)),
      dim_(std::move(dim)),
      has_dim_(has_dim) {
  names_ = std::move(even);
  names_.insert(names_.end(), odd.begin(), odd.end());
  incident_.assign(names_.size(), {});
  for (int e = 0; e < num_edges(); ++e) {
    incident_[edges_[e].src].push_back(e);
    incident_[edges_[e].tgt].push_back(e);
  }
}

int BipartiteGraph::vertex(const std::string& name) const {
  for (int v = 0; v < num_vertices(); ++v)
    if (names_[v] == name) return v;
  return -1;
}

int BipartiteGraph::edge_index(const std::string& id) const {
  for (int e = 0; e < num_edges(); ++e)
    if (edges_[e].id == id) return e;
  return -1;
}

int BipartiteGraph::dim_minus(int w) const {
  int m = 0;
  for (int e : incident_[w]) m += dim_[edges_[e].src];
  return m;
}

bool BipartiteGraph::same_edges(const BipartiteGraph& o) const {
  if (edges_.size() != o.edges_.size()) return false;
  for (size_t i = 0; i < edges_.size(); ++i) {
    const auto& a = edges_[i];
    const auto& b = o.edges_[i];
    if (a.id != b.id || a.src != b.src || a.tgt != b.tgt) return false;
  }
  return true;
}

int AugmentedGraph::distinguished_star_edge(int v) const {
  for (int e : tilde.incident(v))
    if (is_star_edge(e)) return e;
  return -1;
}

namespace {

std::string padded_id(size_t i, size_t count) {
  size_t width = std::to_string(count == 0 ? 0 : count - 1).size();
  std::string digits = std::to_string(i);
  return "e" + std::string(width - digits.size(), '0') + digits;
}

bool connected(int nv, const std::vector<Edge>& edges) {
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) parent[find(e.src)] = find(e.tgt);
  for (int v = 1; v < nv; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

}  // namespace

BipartiteGraph build_graph(const GraphSpec& spec) {
  if (spec.even.empty()) throw GraphError("graph has no even vertices");
  if (spec.odd.empty()) throw GraphError("graph has no odd vertices");
  if (spec.edges.empty()) throw GraphError("graph has no edges (disconnected)");

  std::vector<std::string> even = spec.even, odd = spec.odd;
  std::sort(even.begin(), even.end());
  std::sort(odd.begin(), odd.end());
  std::set<std::string> seen;
  for (const auto* cls : {&even, &odd})
    for (const auto& v : *cls) {
      if (v.empty()) throw GraphError("empty vertex id");
      if (!seen.insert(v).second) throw GraphError("duplicate vertex id '" + v + "'");
    }

  auto index_in = [](const std::vector<std::string>& cls, const std::string& v) {
    auto it = std::lower_bound(cls.begin(), cls.end(), v);
    return (it != cls.end() && *it == v) ? static_cast<int>(it - cls.begin()) : -1;
  };
  const int ne = static_cast<int>(even.size());

  std::vector<Edge> edges;
  std::set<std::string> ids;
  for (size_t i = 0; i < spec.edges.size(); ++i) {
    const auto& es = spec.edges[i];
    int s = index_in(even, es.source);
    int t = index_in(odd, es.target);
    if (s < 0 || t < 0) {
      bool known_s = seen.count(es.source), known_t = seen.count(es.target);
      if (!known_s || !known_t)
        throw GraphError("edge " + es.source + "->" + es.target + " uses an unknown vertex");
      throw GraphError("edge " + es.source + "->" + es.target +
                       " violates bipartiteness (must run even -> odd)");
    }
    std::string id = es.id.empty() ? padded_id(i, spec.edges.size()) : es.id;
    if (!ids.insert(id).second) throw GraphError("duplicate edge id '" + id + "'");
    edges.push_back({id, s, ne + t});
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  if (!connected(ne + static_cast<int>(odd.size()), edges))
    throw GraphError("graph is disconnected");

  std::vector<int> dim(ne, 1);
  if (spec.dim) {
    for (const auto& [v, m] : *spec.dim) {
      int s = index_in(even, v);
      if (s < 0) throw GraphError("dim entry '" + v + "' is not an even vertex");
      if (m <= 0) throw GraphError("dim entry '" + v + "' must be a positive integer");
      dim[s] = m;
    }
  }
  return BipartiteGraph(even, odd, edges, dim, spec.dim.has_value());
}

AugmentedGraph augment(const BipartiteGraph& g) {
  std::vector<std::string> even(g.names().begin(), g.names().begin() + g.num_even());
  std::vector<std::string> odd(g.names().begin() + g.num_even(), g.names().end());
  odd.push_back("*");
  std::vector<Edge> edges = g.edges();
  AugmentedGraph aug;
  aug.star = g.num_vertices();
  for (int v = 0; v < g.num_even(); ++v)
    for (int k = 0; k < g.dim_plus(v); ++k) {
      std::string id = "*" + g.name(v) + "." + std::to_string(k);
      if (g.edge_index(id) >= 0) throw GraphError("star edge id collides with '" + id + "'");
      aug.star_edges.push_back(static_cast<int>(edges.size()));
      edges.push_back({id, v, aug.star});
    }
  aug.base = g;
  // the star is not part of the lexicographic order: it is appended last
  aug.tilde = BipartiteGraph(even, odd, edges, g.dim_vector(), g.has_dim());
  return aug;
}

BipartiteGraph strip(const AugmentedGraph& aug) {
  const auto& t = aug.tilde;
  std::vector<std::string> even(t.names().begin(), t.names().begin() + t.num_even());
  std::vector<std::string> odd(t.names().begin() + t.num_even(), t.names().end() - 1);
  std::vector<Edge> edges;
  for (int e = 0; e < t.num_edges(); ++e)
    if (!aug.is_star_edge(e)) edges.push_back(t.edge(e));
  return BipartiteGraph(even, odd, edges, t.dim_vector(), t.has_dim());
}

PerronData perron_data(const BipartiteGraph& g, Normalization norm, const Tolerances& tol) {
  const int ne = g.num_even(), nv = g.num_vertices();
  // y = Lambda^T x on odd vertices, then Lambda y back on even ones
  auto apply = [&](const std::vector<double>& x) {
    std::vector<double> y(nv, 0.0), z(ne, 0.0);
    for (const auto& e : g.edges()) y[e.tgt] += x[e.src];
    for (const auto& e : g.edges()) z[e.src] += y[e.tgt];
    return z;
  };
  std::vector<double> x(ne, 1.0);
  long it = 0;
  bool done = false;
  while (it < tol.pf_cap) {
    ++it;
    auto z = apply(x);
    double mx = *std::max_element(z.begin(), z.end());
    double change = 0.0, scale = 0.0;
    for (int i = 0; i < ne; ++i) {
      z[i] /= mx;
      change = std::max(change, std::abs(z[i] - x[i]));
      scale = std::max(scale, std::abs(z[i]));
    }
    x = std::move(z);
    if (change <= tol.pf_rel * scale) {
      done = true;
      break;
    }
  }
  if (!done)
    throw NonConvergence("power iteration did not converge after " + std::to_string(it) +
                         " iterations");

  auto ax = apply(x);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < ne; ++i) {
    num += x[i] * ax[i];
    den += x[i] * x[i];
  }
  PerronData p;
  p.d = std::sqrt(num / den);
  p.iterations = it;
  p.normalization = norm;
  p.lambda.assign(nv, 0.0);
  for (int i = 0; i < ne; ++i) p.lambda[i] = x[i];
  for (const auto& e : g.edges()) p.lambda[e.tgt] += x[e.src];
  for (int w = ne; w < nv; ++w) p.lambda[w] /= p.d;

  double scale = 1.0;
  if (norm == Normalization::Markov) {
    double s = 0.0;
    for (int v = 0; v < ne; ++v) s += g.dim_plus(v) * p.lambda[v];
    scale = 1.0 / s;
  } else {
    scale = 1.0 / p.lambda[0];
  }
  for (auto& l : p.lambda) l *= scale;
  return p;
}

double index(const BipartiteGraph& g, const Tolerances& tol) {
  double d = perron_data(g, Normalization::BaseVertex, tol).d;
  return d * d;
}

double eigen_residual(const BipartiteGraph& g, const PerronData& p) {
  std::vector<double> acc(g.num_vertices(), 0.0);
  for (const auto& e : g.edges()) {
    acc[e.src] += p.lambda[e.tgt];
    acc[e.tgt] += p.lambda[e.src];
  }
  double r = 0.0;
  for (int v = 0; v < g.num_vertices(); ++v)
    r = std::max(r, std::abs(acc[v] - p.d * p.lambda[v]));
  return r;
}

GraphSpec parse_graph_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GraphError(std::string("malformed graph file: ") + e.what());
  }
  GraphSpec spec;
  try {
    if (!j.is_object()) throw GraphError("graph file must be a JSON object");
    for (const char* key : {"even", "odd", "edges"})
      if (!j.contains(key)) throw GraphError(std::string("graph file lacks field '") + key + "'");
    spec.even = j.at("even").get<std::vector<std::string>>();
    spec.odd = j.at("odd").get<std::vector<std::string>>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw GraphError("each edge must be a [source, target] pair");
      spec.edges.push_back({e[0].get<std::string>(), e[1].get<std::string>(), ""});
    }
    if (j.contains("dim")) spec.dim = j.at("dim").get<std::map<std::string, int>>();
  } catch (const json::exception& e) {
    throw GraphError(std::string("malformed graph file: ") + e.what());
  }
  return spec;
}

GraphSpec read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph_json(ss.str());
}

std::string to_string(Normalization n) {
  return n == Normalization::Markov ? "markov" : "base";
}

namespace named {

GraphSpec a2() { return {{"a"}, {"b"}, {{"a", "b", ""}}, std::nullopt}; }

GraphSpec a3() {
  return {{"a", "c"}, {"b"}, {{"a", "b", ""}, {"c", "b", ""}}, std::map<std::string, int>{{"a", 1}, {"c", 1}}};
}

GraphSpec a4() {
  return {{"a", "c"}, {"b", "d"}, {{"a", "b", ""}, {"c", "b", ""}, {"c", "d", ""}}, std::nullopt};
}

GraphSpec star3() {
  return {{"a"}, {"b", "c", "d"}, {{"a", "b", ""}, {"a", "c", ""}, {"a", "d", ""}}, std::nullopt};
}

GraphSpec a3_double_edge() {
  return {{"a", "c"}, {"b"}, {{"a", "b", ""}, {"a", "b", ""}, {"c", "b", ""}}, std::nullopt};
}

GraphSpec a3_dim12() {
  return {{"a", "c"}, {"b"}, {{"a", "b", ""}, {"c", "b", ""}}, std::map<std::string, int>{{"a", 1}, {"c", 2}}};
}

}  // namespace named

}  // namespace gpa
