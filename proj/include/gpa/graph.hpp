#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpa {

struct Tolerances {
  double eq = 1e-9;          // equality of scalars / residual bound
  double drop = 1e-12;       // sparse coefficients below this are dropped
  double pf_rel = 1e-13;     // power iteration convergence (relative change)
  long pf_cap = 1000000;     // power iteration cap
  int cap_n = 6;             // desk cap on loop length parameter
  int cap_vertices = 8;      // desk cap on graph size
};

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw description, as read from a graph file.
struct GraphSpec {
  std::vector<std::string> even;
  std::vector<std::string> odd;
  struct EdgeSpec {
    std::string source, target;
    std::string id;  // empty: assigned automatically
  };
  std::vector<EdgeSpec> edges;
  std::optional<std::map<std::string, int>> dim;
};

struct Edge {
  std::string id;
  int src = 0;  // even vertex
  int tgt = 0;  // odd vertex
};

// Vertices are indexed even first, then odd, each class sorted by name.
// Edges are sorted by id; every edge runs even -> odd.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::vector<std::string> even, std::vector<std::string> odd,
                 std::vector<Edge> edges, std::vector<int> dim, bool has_dim);

  int num_even() const { return num_even_; }
  int num_odd() const { return static_cast<int>(names_.size()) - num_even_; }
  int num_vertices() const { return static_cast<int>(names_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  bool is_even(int v) const { return v < num_even_; }

  const std::string& name(int v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  int vertex(const std::string& name) const;  // -1 if absent
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_index(const std::string& id) const;  // -1 if absent

  // edges touching v, ascending
  const std::vector<int>& incident(int v) const { return incident_[v]; }
  int other_end(int e, int v) const {
    return edges_[e].src == v ? edges_[e].tgt : edges_[e].src;
  }
  bool touches(int e, int v) const { return edges_[e].src == v || edges_[e].tgt == v; }

  // m_+ on even vertices; m_- on odd vertices is derived
  int dim_plus(int v) const { return dim_[v]; }
  int dim_minus(int w) const;
  const std::vector<int>& dim_vector() const { return dim_; }
  bool has_dim() const { return has_dim_; }

  bool operator==(const BipartiteGraph& o) const {
    return names_ == o.names_ && num_even_ == o.num_even_ && dim_ == o.dim_ &&
           same_edges(o);
  }

 private:
  bool same_edges(const BipartiteGraph& o) const;

  std::vector<std::string> names_;
  int num_even_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> dim_;
  bool has_dim_ = false;
  std::vector<std::vector<int>> incident_;
};

// The base graph plus one extra odd vertex (the star) joined to each even
// vertex v by dim_plus(v) edges.  Base vertex and edge indices are kept;
// the star vertex and star edges come last.
struct AugmentedGraph {
  BipartiteGraph base;
  BipartiteGraph tilde;
  int star = 0;
  std::vector<int> star_edges;  // edge indices in tilde

  bool is_star_edge(int e) const { return e >= base.num_edges(); }
  // smallest star edge into even vertex v
  int distinguished_star_edge(int v) const;
};

enum class Normalization { Markov, BaseVertex };

struct PerronData {
  double d = 1.0;
  std::vector<double> lambda;  // indexed by base vertex
  Normalization normalization = Normalization::Markov;
  long iterations = 0;
};

BipartiteGraph build_graph(const GraphSpec& spec);
AugmentedGraph augment(const BipartiteGraph& g);
BipartiteGraph strip(const AugmentedGraph& aug);
PerronData perron_data(const BipartiteGraph& g, Normalization norm,
                       const Tolerances& tol = {});
double index(const BipartiteGraph& g, const Tolerances& tol = {});

// max |sum_{e at v} lambda(other end) - d lambda(v)| over all vertices
double eigen_residual(const BipartiteGraph& g, const PerronData& p);

GraphSpec parse_graph_json(const std::string& text);
GraphSpec read_graph_file(const std::string& path);

std::string to_string(Normalization n);

// Small named graphs used throughout the tests and the CLI.
namespace named {
GraphSpec a2();
GraphSpec a3();
GraphSpec a4();
GraphSpec star3();  // one even vertex, three odd
GraphSpec a3_double_edge();  // A3 with one edge doubled
GraphSpec a3_dim12();  // A3 with dim vector (1,2)
}  // namespace named

}  // namespace gpa
