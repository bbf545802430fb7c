#include <cmath>

#include "doctest.h"
#include "gpa/ops.hpp"
#include "support.hpp"

using namespace gpa;
using namespace testing_support;

TEST_CASE("Jones projection on A2") {
  Model m = Model::make(named::a2());
  Element e = jones_projection(m, 1);
  CHECK(format_element(m, e) == "1 * [e0+,e0-,e0+,e0-]\n");
  CHECK(distance(multiply(e, e), e) < 1e-15);
  CHECK(distance(e, identity(m, Space::G(2, Sign::Plus))) < 1e-15);
}

TEST_CASE("Jones projections are self-adjoint with E^2 = d E") {
  for (auto spec : {named::a3(), named::a4(), named::star3(), named::a3_dim12()}) {
    Model m = Model::make(spec);
    for (int n = 1; n <= 3; ++n) {
      Element e = jones_projection(m, n);
      CHECK(e.space == Space::G(n + 1, Sign::Plus));
      CHECK(distance(star(e), e) < 1e-15);
      CHECK(distance(multiply(e, e), m.d() * e) < 1e-13);
      CHECK(std::abs(trace(m, e) - 1.0 / m.d()) < 1e-13);
    }
  }
}

TEST_CASE("Temperley-Lieb relations up to level 4") {
  for (auto spec : {named::a3(), named::a4(), named::star3()}) {
    Model m = Model::make(spec);
    const int level = 4;
    for (int i = 1; i < level; ++i)
      for (int j = 1; j < level; ++j) {
        Element ei = jones_at(m, i, level), ej = jones_at(m, j, level);
        if (std::abs(i - j) > 1)
          CHECK(distance(multiply(ei, ej), multiply(ej, ei)) < 1e-9);
        if (std::abs(i - j) == 1)
          CHECK(distance(jones_word(m, {i, j, i}, level), ei) < 1e-9);
      }
  }
  Model m = Model::make(named::a3());
  CHECK(distance(jones_word(m, {}, 2), identity(m, Space::G(2, Sign::Plus))) == 0.0);
}

TEST_CASE("right cap") {
  Model m = Model::make(named::a3());
  for (int n = 1; n <= 3; ++n)
    for (Sign sg : {Sign::Plus, Sign::Minus}) {
      Element c = cond_exp_down(m, identity(m, Space::G(n, sg)));
      CHECK(distance(c, m.d() * identity(m, Space::G(n - 1, sg))) < 1e-14);
    }
  // the two middle steps use different parallel edges, so the cap vanishes
  Model dbl = Model::make(named::a3_double_edge());
  int mismatched = 0;
  for (const auto& l : basis(dbl, Space::G(2, Sign::Plus)))
    if (l.edges[1] != l.edges[2]) {
      ++mismatched;
      CHECK(cond_exp_down(dbl, basis_element(Space::G(2, Sign::Plus), l)).empty());
    }
  CHECK(mismatched > 0);
  CHECK_THROWS_AS(cond_exp_down(m, identity(m, Space::G(0, Sign::Plus))), GradeError);
}

TEST_CASE("right cap over d is the trace-preserving conditional expectation") {
  std::mt19937 rng(21);
  for (auto spec : {named::a3(), named::a4(), named::a3_dim12()}) {
    Model m = Model::make(spec);
    for (int n = 1; n <= 3; ++n) {
      const Space s = Space::G(n, Sign::Plus), below = Space::G(n - 1, Sign::Plus);
      for (int i = 0; i < 5; ++i) {
        Element x = random_element(m, s, rng), y = random_element(m, below, rng);
        Element ex = (1.0 / m.d()) * cond_exp_down(m, x);
        CHECK(std::abs(trace(m, multiply(ex, y)) - trace(m, multiply(x, include_up(m, y)))) <
              1e-13);
        // idempotent after inclusion
        CHECK(distance((1.0 / m.d()) * cond_exp_down(m, include_up(m, ex)), ex) < 1e-13);
      }
    }
  }
}

TEST_CASE("left cap") {
  Model a2 = Model::make(named::a2());
  Element x = parse_element(a2, Space::G(1, Sign::Plus), "[e0+,e0-]");
  CHECK(format_element(a2, cond_exp_left(a2, x)) == "1 * [b]\n");

  Model m = Model::make(named::a3());
  Element y = parse_element(m, Space::G(2, Sign::Plus), "[e0+,e0-,e0+,e0-]");
  Element c = cond_exp_left(m, y);
  CHECK(c.space == Space::G(1, Sign::Minus));
  // lambda(a) / lambda(b) = 1 / sqrt 2
  CHECK(std::abs(c.coeff(basis(m, Space::G(1, Sign::Minus))[0]) - 1 / std::sqrt(2.0)) < 1e-14);
  // first and last steps differ
  for (const auto& l : basis(m, Space::G(2, Sign::Minus)))
    if (l.edges.front() != l.edges.back())
      CHECK(gamma_minus(m, basis_element(Space::G(2, Sign::Minus), l)).empty());
  CHECK_THROWS_AS(cond_exp_left(m, identity(m, Space::G(0, Sign::Minus))), GradeError);
}

TEST_CASE("left cap of the unit is d times the unit") {
  for (auto spec : {named::a3(), named::a4(), named::star3()}) {
    Model m = Model::make(spec);
    for (int n = 1; n <= 3; ++n)
      for (Sign sg : {Sign::Plus, Sign::Minus}) {
        Element u = identity(m, Space::G(n, sg));
        Element c = sg == Sign::Plus ? cond_exp_left(m, u) : gamma_minus(m, u);
        CHECK(distance(c, m.d() * identity(m, Space::G(n - 1, flip(sg)))) < 1e-13);
      }
  }
}

TEST_CASE("left string maps are unital and multiplicative") {
  std::mt19937 rng(4);
  for (auto spec : {named::a3(), named::a4()}) {
    Model m = Model::make(spec);
    for (int n = 0; n <= 2; ++n) {
      CHECK(distance(i_plus(m, identity(m, Space::G(n, Sign::Plus))),
                     identity(m, Space::G(n + 1, Sign::Minus))) < 1e-14);
      for (int i = 0; i < 5; ++i) {
        Element x = random_element(m, Space::G(n, Sign::Plus), rng);
        Element y = random_element(m, Space::G(n, Sign::Plus), rng);
        CHECK(distance(i_plus(m, multiply(x, y)), multiply(i_plus(m, x), i_plus(m, y))) < 1e-13);
        // the left cap undoes the left string up to the loop value d
        CHECK(distance(gamma_minus(m, i_plus(m, x)), m.d() * x) < 1e-13);
      }
    }
  }
}

TEST_CASE("left caps undo the left inclusion of the minus spaces") {
  std::mt19937 rng(6);
  Model m = Model::make(named::a4());
  for (int n = 0; n <= 2; ++n) {
    Element x = random_element(m, Space::G(n, Sign::Minus), rng);
    Element up = include_minus_to_plus(m, x);
    CHECK(distance(cond_exp_left(m, up), m.d() * x) < 1e-13);
  }
  CHECK_THROWS_AS(cond_exp_left(m, identity(m, Space::G(1, Sign::Minus))), GradeError);
  CHECK_THROWS_AS(gamma_minus(m, identity(m, Space::G(1, Sign::Plus))), GradeError);
}

TEST_CASE("one-click rotations") {
  Model m = Model::make(named::a3());
  // [e0+,e0-] is a cup-cap pair; one click moves the base point to b
  Element x = parse_element(m, Space::G(1, Sign::Plus), "[e0+,e0-]");
  Element r = rotation_plus(m, x);
  CHECK(r.space == Space::G(1, Sign::Plus));
  CHECK(distance(rotation_power(m, x, 1), r) == 0.0);
  CHECK(distance(rotation_power(m, x, 0), x) == 0.0);
  for (auto spec : {named::a3(), named::a4(), named::star3()})
    for (int n = 1; n <= 3; ++n) {
      Model g = Model::make(spec);
      for (Sign sg : {Sign::Plus, Sign::Minus}) {
        double worst = 0.0;
        for (const auto& b : basis_elements(g, Space::G(n, sg))) {
          Element y = b;
          for (int k = 0; k < n; ++k)
            y = sg == Sign::Plus ? rotation_plus(g, y) : rotation_minus(g, y);
          worst = std::max(worst, distance(y, b));
        }
        CAPTURE(n);
        CHECK(worst < 1e-12);
      }
    }
}

TEST_CASE("rotation fixes the unit below level 3 and moves it at level 3") {
  Model m = Model::make(named::a3());
  for (int n = 0; n <= 2; ++n) {
    CHECK(distance(rotation_plus(m, identity(m, Space::G(n, Sign::Plus))),
                   identity(m, Space::G(n, Sign::Plus))) < 1e-13);
    CHECK(distance(rotation_minus(m, identity(m, Space::G(n, Sign::Minus))),
                   identity(m, Space::G(n, Sign::Minus))) < 1e-13);
  }
  // the unit diagram has n through-strings; one click turns it into a
  // different Temperley-Lieb diagram once n >= 3
  CHECK(distance(rotation_plus(m, identity(m, Space::G(3, Sign::Plus))),
                 identity(m, Space::G(3, Sign::Plus))) > 0.1);
}

TEST_CASE("annular capping and cupping") {
  std::mt19937 rng(12);
  Model m = Model::make(named::a3());
  for (int n = 1; n <= 3; ++n) {
    Element x = random_element(m, Space::G(n, Sign::Plus), rng);
    CHECK(distance(annular_alpha(m, n, x), cond_exp_down(m, x)) < 1e-13);
    CHECK(distance(annular_beta(m, n + 1, x), include_up(m, x)) < 1e-13);
    for (int j = 1; j <= 2 * n + 2; ++j) {
      Element up = annular_beta(m, j, x);
      CHECK(up.space == Space::G(n + 1, Sign::Plus));
      CAPTURE(j);
      CHECK(distance(annular_alpha(m, j, up), m.d() * x) < 1e-12);
    }
    for (int j = 1; j < n; ++j) CHECK(distance(alpha_via_jones(m, j, x), annular_alpha(m, j, x)) < 1e-12);
    for (int j = 1; j < n + 1; ++j) CHECK(distance(beta_via_jones(m, j, x), annular_beta(m, j, x)) < 1e-12);
  }
  Element x = identity(m, Space::G(1, Sign::Plus));
  CHECK_THROWS_AS(annular_alpha(m, 0, x), GradeError);
  CHECK_THROWS_AS(annular_alpha(m, 3, x), GradeError);
  CHECK_THROWS_AS(annular_beta(m, 5, x), GradeError);
}
