#pragma once

#include <compare>
#include <map>
#include <vector>

#include "gpa/loops.hpp"
#include "gpa/report.hpp"
#include "gpa/tangle.hpp"

namespace gpa {

// Points 0..n-1 on the bottom edge and n..2n-1 on the top edge, both left
// to right.  partner[i] is the point joined to i.
struct TLDiagram {
  int n = 0;
  std::vector<int> partner;
  auto operator<=>(const TLDiagram&) const = default;
};

struct TLElement {
  int n = 0;
  std::map<TLDiagram, double> terms;
};

struct TLError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

TLDiagram make_diagram(int n, const std::vector<int>& partner);  // validates
TLDiagram tl_identity_diagram(int n);
TLDiagram tl_jones_diagram(int i, int n);  // E_i, 1 <= i < n
std::vector<TLDiagram> tl_diagrams(int n);  // all Catalan(n), sorted
long catalan(int n);

TLElement tl_element(const TLDiagram& x, double c = 1.0);
TLElement tl_word(const std::vector<int>& word, int n, double d);
// x on top of y; each closed loop contributes d
TLElement tl_multiply(const TLElement& x, const TLElement& y, double d);
TLElement tl_star(const TLElement& x);
TLElement tl_add(const TLElement& x, const TLElement& y, double cy = 1.0);
double tl_trace(const TLElement& x, double d);  // Markov trace, tr(1) = 1
double tl_max_abs(const TLElement& x);

// sweep presentation: bottom caps innermost first, then the top cups
Tangle tl_tangle(const TLDiagram& x, Sign sign);
Element tl_to_gpa(const Model& m, const TLElement& x, Sign sign = Sign::Plus);

// string-adding map: s strings on the left of x in G_{n,+}, s+1 for G_{n,-}
Element embedding_shift(const Model& m, const Element& x, int s);

// numerical rank of the trace Gram matrix
int gram_rank(const Model& m, const std::vector<Element>& xs, double cutoff);

// sum_b b y b* over a Pimsner-Popa basis b of TL_{s+1} over TL_s, computed
// from the Casimir element sum C_ij u_i (x) u_j solving sum C_ij u_i e u_j = 1
Element casimir_average(const Model& m, int s, const Element& y, double* residual = nullptr);

struct StandardnessScan {
  int r = -1;  // first r that passes, -1 if none up to r_max
  std::vector<std::string> log;
};
StandardnessScan minimal_standard_r(const Model& m, int r_max, double tol, double cutoff);

struct EmbedOptions {
  int s = 2;
  int n_max = 3;
  double tol = 1e-8;
  double cutoff = 1e-7;
  int cap_n = 6;
};
Report verify_embedding(const Model& m, const EmbedOptions& opt);

// <Phi x, Phi y> / <x, y> measured on TL_n diagrams; returns the ratio and
// its spread
std::pair<double, double> isometry_constant(const Model& m, int s, int n);

}  // namespace gpa
