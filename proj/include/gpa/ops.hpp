#pragma once

#include "gpa/loops.hpp"

namespace gpa {

// All Jones projections use the unnormalized convention E_i^2 = d E_i.

// E_n in G_{n+1,+}
Element jones_projection(const Model& m, int n);
// E_i viewed inside G_{level,+}
Element jones_at(const Model& m, int i, int level);
// product E_{i_1} E_{i_2} ... inside G_{level,+}; empty word is the unit
Element jones_word(const Model& m, const std::vector<int>& word, int level);

// right cap alpha_n: G_{n,s} -> G_{n-1,s} (no 1/d)
Element cond_exp_down(const Model& m, const Element& x);
// left cap: G_{n,+} -> G_{n-1,-}; gamma_minus is the same formula G_{n,-} -> G_{n-1,+}
Element cond_exp_left(const Model& m, const Element& x);
Element gamma_minus(const Model& m, const Element& x);
// add a string on the left: G_{n,-} -> G_{n+1,+} is include_minus_to_plus;
// this is the G_{n,+} -> G_{n+1,-} counterpart
Element i_plus(const Model& m, const Element& x);

// one-click rotations on G_{n,+} and G_{n,-}; every element of the graph
// model is a central vector, so no check is needed here
Element rotation_plus(const Model& m, const Element& x);
Element rotation_minus(const Model& m, const Element& x);
Element rotation_power(const Model& m, const Element& x, int k);

// annular capping alpha_j: G_{n,+} -> G_{n-1,+}, 1 <= j <= 2n
Element annular_alpha(const Model& m, int j, const Element& x);
// annular cupping beta_j: G_{n,+} -> G_{n+1,+}, 1 <= j <= 2n+2
Element annular_beta(const Model& m, int j, const Element& x);

// The generator-family composites: alpha_j for j < n and beta_j for
// j < n+1 rebuilt from Jones projections, alpha_n and beta_{n+1}.
Element alpha_via_jones(const Model& m, int j, const Element& x);
Element beta_via_jones(const Model& m, int j, const Element& x);

}  // namespace gpa
