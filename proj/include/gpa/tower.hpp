#pragma once

#include <string>
#include <vector>

#include "gpa/loops.hpp"

namespace gpa {

// F_n in A_{n+1}; F_n^2 = d F_n
Element jones_F(const Model& m, int n);
// trace-preserving conditional expectation A_n -> A_{n-1}
Element cond_exp_A(const Model& m, const Element& x);
Element cond_exp_A_to(const Model& m, const Element& x, int level);

enum class PPVariant { Distinguished, AllStarEdges };
// Pimsner-Popa basis of A_1 over A_0
std::vector<Element> pp_basis(const Model& m, PPVariant v = PPVariant::Distinguished);
// x ↦ Σ_b b E_{A_0}(b* x), for x in A_1
Element pp_reconstruct(const Model& m, const std::vector<Element>& basis, const Element& x);
// (1/d^2) Σ_b b x b*, the commutant conditional expectation, x in A_n
Element pp_commutant_average(const Model& m, const std::vector<Element>& basis, const Element& x);

// central vectors: images of G_{n,+} in A_n (level 0) or of G_{n,-} in
// A_{n+1} (level 1)
std::vector<Element> commutant_basis(const Model& m, int n, int level);
Element phi_iso(const Model& m, const Element& x);
Element phi_inverse(const Model& m, const Element& x, Sign sign);
bool is_central(const Model& m, const Element& x, int level, double tol);

struct NotCentral : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// rotations on central vectors of the tower; x in A_n (plus) or A_{n+1}
// (minus).  With enforce=false, a non-central x is rotated through its
// central part.
Element rotation_tower(const Model& m, const Element& x, Sign sign, bool enforce = true);

// x_1 (x) ... (x) x_n over A_0, factors in A_1  ->  x_1 v_1 x_2 v_2 ... x_n in
// A_n with v_k = F_k F_{k-1} ... F_1; isometric for the relative tensor
// inner product
Element tensor_to_tower(const Model& m, const std::vector<Element>& factors);

// f^n_{n-k} in A_{n+k}
Element multistep_projection(const Model& m, int n, int k);

// Independent direct-sum model of A_n: one full matrix block per vertex at
// the end of the half-paths.
struct MatrixOracleResult {
  int n = 0;
  size_t dim_loops = 0;
  size_t dim_blocks = 0;
  double mult_residual = 0.0;
  double star_residual = 0.0;
  double trace_residual = 0.0;
  std::vector<std::pair<std::string, double>> block_weights;  // vertex, d^-n lambda
};
MatrixOracleResult matrix_oracle(const Model& m, int n);

}  // namespace gpa
