#include <cmath>

#include "doctest.h"
#include "gpa/embed.hpp"
#include "gpa/ops.hpp"
#include "gpa/tower.hpp"
#include "support.hpp"

using namespace gpa;
using namespace testing_support;

TEST_CASE("F_n x F_n = d E(x) F_n and the Markov property") {
  for (auto spec : {named::a3(), named::a4()}) {
    Model m = Model::make(spec);
    const double d = m.d();
    for (int n = 1; n <= 2; ++n) {
      Element f = jones_F(m, n);
      CHECK(f.space == Space::A(n + 1));
      CHECK(distance(star(f), f) < 1e-15);
      CHECK(distance(multiply(f, f), d * f) < 1e-13);
      for (const auto& x0 : basis_elements(m, Space::A(n))) {
        Element x = include_up(m, x0);
        Element lhs = multiply(multiply(f, x), f);
        Element rhs = d * multiply(include_up_to(m, cond_exp_A(m, x0), n + 1), f);
        CHECK(distance(lhs, rhs) < 1e-12);
        CHECK(std::abs(trace(m, multiply(x, f)) - trace(m, x0) / d) < 1e-13);
      }
    }
  }
}

TEST_CASE("y -> y F_n is injective one level down") {
  for (auto spec : {named::a3(), named::a4(), named::star3()}) {
    Model m = Model::make(spec);
    for (int n = 1; n <= 2; ++n) {
      Element f = jones_F(m, n);
      std::vector<Element> images;
      auto b = basis_elements(m, Space::A(n - 1));
      for (const auto& y : b) images.push_back(multiply(include_up_to(m, y, n + 1), f));
      CHECK(gram_rank(m, images, 1e-9) == static_cast<int>(b.size()));
    }
  }
}

TEST_CASE("conditional expectation onto the previous level") {
  std::mt19937 rng(81);
  for (auto spec : {named::a3(), named::a4(), named::a3_dim12()}) {
    Model m = Model::make(spec);
    for (int n = 1; n <= 2; ++n) {
      CHECK(distance(cond_exp_A(m, identity(m, Space::A(n))), identity(m, Space::A(n - 1))) <
            1e-13);
      for (int i = 0; i < 5; ++i) {
        Element a = random_element(m, Space::A(n - 1), rng);
        Element b = random_element(m, Space::A(n - 1), rng);
        Element x = random_element(m, Space::A(n), rng);
        Element axb = multiply(multiply(include_up(m, a), x), include_up(m, b));
        CHECK(distance(cond_exp_A(m, axb), multiply(multiply(a, cond_exp_A(m, x)), b)) < 1e-12);
        CHECK(std::abs(trace(m, multiply(cond_exp_A(m, x), a)) -
                       trace(m, multiply(x, include_up(m, a)))) < 1e-13);
        CHECK(distance(cond_exp_A(m, star(x)), star(cond_exp_A(m, x))) < 1e-13);
      }
      CHECK(distance(cond_exp_A_to(m, identity(m, Space::A(n)), 0), identity(m, Space::A(0))) <
            1e-13);
    }
    CHECK_THROWS_AS(cond_exp_A(m, identity(m, Space::A(0))), GradeError);
  }
}

TEST_CASE("Temperley-Lieb relations among the F_i") {
  Model m = Model::make(named::a3());
  const int top = 4;
  std::vector<Element> f(top);
  for (int i = 1; i < top; ++i) f[i] = include_up_to(m, jones_F(m, i), top);
  for (int i = 1; i < top; ++i)
    for (int j = 1; j < top; ++j) {
      if (std::abs(i - j) > 1) CHECK(commutator(f[i], f[j]).max_abs() < 1e-9);
      if (std::abs(i - j) == 1) CHECK(distance(multiply(multiply(f[i], f[j]), f[i]), f[i]) < 1e-9);
    }
}

TEST_CASE("Pimsner-Popa basis") {
  for (auto spec : {named::a2(), named::a3(), named::a4(), named::a3_dim12()}) {
    Model m = Model::make(spec);
    for (PPVariant v : {PPVariant::Distinguished, PPVariant::AllStarEdges}) {
      auto pp = pp_basis(m, v);
      Element sum(Space::A(1));
      for (const auto& b : pp) sum += multiply(b, star(b));
      CHECK(distance(sum, m.d() * m.d() * identity(m, Space::A(1))) < 1e-12);
      for (const auto& x : basis_elements(m, Space::A(1)))
        CHECK(distance(pp_reconstruct(m, pp, x), x) < 1e-12);
    }
  }
  Model a3 = Model::make(named::a3());
  Element sum(Space::A(1));
  for (const auto& b : pp_basis(a3)) sum += multiply(b, star(b));
  CHECK(distance(sum, 2.0 * identity(a3, Space::A(1))) < 1e-13);
  Model a2 = Model::make(named::a2());
  CHECK(pp_basis(a2).size() == 1);
}

TEST_CASE("averaging over the basis is the commutant conditional expectation") {
  for (auto spec : {named::a3(), named::a4()}) {
    Model m = Model::make(spec);
    auto pp = pp_basis(m);
    for (const auto& x : basis_elements(m, Space::G(2, Sign::Plus))) {
      Element lhs = pp_commutant_average(m, pp, phi_iso(m, x));
      Element rhs = phi_iso(m, (1.0 / m.d()) * cond_exp_left(m, x));
      CHECK(distance(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("central vector bases") {
  for (auto spec : {named::a3(), named::a4(), named::star3()}) {
    Model m = Model::make(spec);
    for (int n = 0; n <= 2; ++n) {
      auto s0 = commutant_basis(m, n, 0);
      auto s1 = commutant_basis(m, n, 1);
      CHECK(s0.size() == basis(m, Space::G(n, Sign::Plus)).size());
      CHECK(s1.size() == basis(m, Space::G(n, Sign::Minus)).size());
      for (const auto& s : s0) {
        CHECK(s.space == Space::A(n));
        CHECK(is_central(m, s, 0, 1e-12));
      }
      for (const auto& s : s1) {
        CHECK(s.space == Space::A(n + 1));
        CHECK(is_central(m, s, 1, 1e-12));
      }
    }
  }
  // explicit commutators with A_0 at level 2 of A3
  Model m = Model::make(named::a3());
  for (const auto& s : commutant_basis(m, 2, 0))
    for (const auto& a : basis_elements(m, Space::A(0)))
      CHECK(commutator(s, include_up_to(m, a, 2)).max_abs() < 1e-14);
  Model a2 = Model::make(named::a2());
  auto one = commutant_basis(a2, 1, 0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].size() == 1);
}

TEST_CASE("central vector isomorphism") {
  std::mt19937 rng(91);
  Model m = Model::make(named::a3());
  auto b = basis_elements(m, Space::G(1, Sign::Plus));
  for (const auto& x : b)
    for (const auto& y : b)
      CHECK(distance(phi_iso(m, multiply(x, y)), multiply(phi_iso(m, x), phi_iso(m, y))) < 1e-14);
  for (int n = 0; n <= 2; ++n)
    for (Sign sg : {Sign::Plus, Sign::Minus}) {
      const Space s = Space::G(n, sg);
      Element x = random_element(m, s, rng);
      CHECK(distance(phi_iso(m, star(x)), star(phi_iso(m, x))) < 1e-14);
      CHECK(distance(phi_inverse(m, phi_iso(m, x), sg), x) < 1e-14);
      Element u = phi_iso(m, identity(m, s));
      CHECK(distance(u, identity(m, Space::A(sg == Sign::Plus ? n : n + 1))) < 1e-14);
    }
  for (int n = 1; n <= 2; ++n)
    CHECK(distance(phi_iso(m, jones_projection(m, n)), jones_F(m, n)) < 1e-13);
}

TEST_CASE("rotations of central vectors") {
  std::mt19937 rng(101);
  Model m = Model::make(named::a4());
  for (int n = 1; n <= 2; ++n) {
    Element x = random_element(m, Space::G(n, Sign::Plus), rng);
    CHECK(distance(rotation_tower(m, phi_iso(m, x), Sign::Plus), phi_iso(m, rotation_plus(m, x))) <
          1e-12);
    Element y = random_element(m, Space::G(n, Sign::Minus), rng);
    CHECK(distance(rotation_tower(m, phi_iso(m, y), Sign::Minus),
                   phi_iso(m, rotation_minus(m, y))) < 1e-12);
  }
  Loop probe;
  bool found = false;
  for (const auto& l : basis(m, Space::A(1)))
    if (!is_central(m, basis_element(Space::A(1), l), 0, 1e-12)) {
      probe = l;
      found = true;
      break;
    }
  REQUIRE(found);
  Element nc = basis_element(Space::A(1), probe);
  CHECK_THROWS_AS(rotation_tower(m, nc, Sign::Plus), NotCentral);
  CHECK_NOTHROW(rotation_tower(m, nc, Sign::Plus, false));
}

TEST_CASE("multistep projections") {
  Model m = Model::make(named::a3());
  const double d = m.d();
  for (int n = 0; n <= 3; ++n)
    CHECK(distance(multistep_projection(m, n, 0), identity(m, Space::A(n))) == 0.0);
  for (int n = 1; n <= 3; ++n)
    CHECK(distance(multistep_projection(m, n, 1), (1.0 / d) * jones_F(m, n)) < 1e-13);
  Element f = multistep_projection(m, 2, 1);
  for (const auto& x0 : basis_elements(m, Space::A(2))) {
    Element x = include_up(m, x0);
    CHECK(distance(multiply(multiply(f, x), f),
                   multiply(include_up_to(m, cond_exp_A(m, x0), 3), f)) < 1e-12);
  }
  Element g = multistep_projection(m, 2, 2);
  CHECK(distance(multiply(g, g), g) < 1e-12);
  CHECK(distance(cond_exp_A_to(m, g, 2), std::pow(d, -4.0) * identity(m, Space::A(2))) < 1e-12);
  CHECK_THROWS_AS(multistep_projection(m, 1, 2), GradeError);
}

TEST_CASE("matrix-unit oracle") {
  Model a3 = Model::make(named::a3());
  auto o = matrix_oracle(a3, 1);
  CHECK(o.dim_loops == 4);
  CHECK(o.dim_blocks == 4);
  CHECK(o.mult_residual == 0.0);
  CHECK(o.star_residual == 0.0);
  CHECK(o.trace_residual < 1e-15);
  REQUIRE(o.block_weights.size() == 1);
  CHECK(o.block_weights[0].first == "b");
  CHECK(std::abs(o.block_weights[0].second - 0.5) < 1e-15);
  auto o0 = matrix_oracle(a3, 0);
  REQUIRE(o0.block_weights.size() == 2);
  for (const auto& [v, w] : o0.block_weights) CHECK(std::abs(w - 0.5) < 1e-15);

  Model a2 = Model::make(named::a2());
  for (int n = 0; n <= 3; ++n) {
    auto r = matrix_oracle(a2, n);
    CHECK(r.dim_loops == 1);
    CHECK(r.dim_blocks == 1);
    CHECK(r.mult_residual == 0.0);
  }
  for (auto spec : {named::a4(), named::star3(), named::a3_dim12(), named::a3_double_edge()}) {
    Model m = Model::make(spec);
    for (int n = 0; n <= 3; ++n) {
      auto r = matrix_oracle(m, n);
      CHECK(r.dim_loops == r.dim_blocks);
      CHECK(r.mult_residual < 1e-12);
      CHECK(r.trace_residual < 1e-12);
      for (const auto& [v, w] : r.block_weights)
        CHECK(std::abs(w - std::pow(m.d(), -n) * m.lam(m.graph.vertex(v))) < 1e-14);
    }
  }
}

TEST_CASE("tensors over A_0 land in the tower") {
  Model m = Model::make(named::a4());
  std::mt19937 rng(111);
  Element x = random_element(m, Space::A(1), rng);
  CHECK(distance(tensor_to_tower(m, {x}), x) == 0.0);
  Element one = identity(m, Space::A(1));
  CHECK(distance(tensor_to_tower(m, {one, one}), jones_F(m, 1)) < 1e-14);
  Element y = random_element(m, Space::A(1), rng);
  CHECK(distance(tensor_to_tower(m, {x, y}),
                 multiply(multiply(include_up(m, x), jones_F(m, 1)), include_up(m, y))) < 1e-13);
  // x a (x) y = x (x) a y for a in A_0
  Element a = include_up(m, random_element(m, Space::A(0), rng));
  CHECK(distance(tensor_to_tower(m, {multiply(x, a), y}), tensor_to_tower(m, {x, multiply(a, y)})) <
        1e-12);
  CHECK_THROWS_AS(tensor_to_tower(m, {identity(m, Space::A(2))}), GradeError);
}
