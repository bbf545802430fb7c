#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpa/graph.hpp"

namespace gpa {

enum class Sign { Plus, Minus };
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

struct GradeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Where an element lives: G_{n,+/-} on the graph, or level n of the tower
// (loops of length 2n+2 on the augmented graph based at the star).
struct Space {
  enum class Kind { Graph, Tower };
  Kind kind = Kind::Graph;
  int n = 0;
  Sign sign = Sign::Plus;

  static Space G(int n, Sign s) { return {Kind::Graph, n, s}; }
  static Space A(int n) { return {Kind::Tower, n, Sign::Minus}; }
  bool tower() const { return kind == Kind::Tower; }
  // number of steps in each half of a loop
  int half() const { return tower() ? n + 1 : n; }
  bool operator==(const Space&) const = default;
};

std::string to_string(const Space& s);

// A closed walk given by its base vertex and edge sequence.  Step
// directions follow from bipartiteness, so they are not stored.
struct Loop {
  int start = 0;
  std::vector<int> edges;
  auto operator<=>(const Loop&) const = default;
};

inline constexpr double kDefaultDrop = 1e-12;

class Element {
 public:
  Element() = default;
  explicit Element(Space s) : space(s) {}
  Element(Space s, const Loop& l, double c = 1.0) : space(s) { add(l, c); }

  Space space;
  std::map<Loop, double> terms;

  void add(const Loop& l, double c);  // accumulate without pruning
  void prune(double drop = kDefaultDrop);
  double coeff(const Loop& l) const;
  bool empty() const { return terms.empty(); }
  size_t size() const { return terms.size(); }
  double max_abs() const;

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(double c);
};

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator*(double c, Element a);

// max |coefficient| of a - b
double distance(const Element& a, const Element& b);

// Graph, augmented graph and spin vector bundled together.
struct Model {
  BipartiteGraph graph;
  AugmentedGraph aug;
  PerronData perron;
  Tolerances tol;

  static Model make(const GraphSpec& spec, Normalization norm = Normalization::Markov,
                    const Tolerances& tol = {});
  static Model make(const BipartiteGraph& g, Normalization norm = Normalization::Markov,
                    const Tolerances& tol = {});

  double d() const { return perron.d; }
  double lam(int v) const { return perron.lambda[v]; }
  const BipartiteGraph& graph_of(const Space& s) const {
    return s.tower() ? aug.tilde : graph;
  }
  // edges usable strictly inside a loop of this space
  bool interior_edge(const Space& s, int e) const {
    return !s.tower() || !aug.is_star_edge(e);
  }
};

// v_0 .. v_{2h} of a loop
std::vector<int> loop_vertices(const BipartiteGraph& g, const Loop& l);
bool is_self_adjoint(const Loop& l);
Loop reversed(const Loop& l);

std::vector<Loop> loop_basis(const BipartiteGraph& g, int n, Sign sign);
std::vector<Loop> tower_basis(const AugmentedGraph& aug, int n);
std::vector<Loop> basis(const Model& m, const Space& s);
Element identity(const Model& m, const Space& s);
Element basis_element(const Space& s, const Loop& l);

Element multiply(const Element& x, const Element& y);
Element star(const Element& x);
Element commutator(const Element& x, const Element& y);

// trace on the tower (Markov trace) and on G_{n,+/-} through the central
// vector isomorphism
double trace_tower(const Model& m, const Element& x);
double trace_gpa(const Model& m, const Element& x);
double trace(const Model& m, const Element& x);
double inner_product(const Model& m, const Element& x, const Element& y);

Element include_up(const Model& m, const Element& x);
Element include_up_to(const Model& m, const Element& x, int level);
Element include_minus_to_plus(const Model& m, const Element& x);

// Text form: one term per line, "coefficient * [edge+,edge-,...]".
std::string format_loop(const BipartiteGraph& g, const Loop& l);
std::string format_element(const Model& m, const Element& x);
std::string format_number(double x);
Element parse_element(const Model& m, const Space& s, const std::string& text);

}  // namespace gpa
