#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gpa/loops.hpp"

namespace testing_support {

using namespace gpa;

inline std::vector<std::pair<std::string, GraphSpec>> named_graphs() {
  return {{"A2", named::a2()},          {"A3", named::a3()},
          {"A4", named::a4()},          {"star3", named::star3()},
          {"A3 double edge", named::a3_double_edge()}, {"A3 dim (1,2)", named::a3_dim12()}};
}

inline std::vector<Element> basis_elements(const Model& m, const Space& s) {
  std::vector<Element> out;
  for (const auto& l : basis(m, s)) out.push_back(basis_element(s, l));
  return out;
}

// coefficients uniform in [-1, 1] on every basis loop
inline Element random_element(const Model& m, const Space& s, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Element x(s);
  for (const auto& l : basis(m, s)) x.add(l, u(rng));
  return x;
}

// a few basis loops with random coefficients
inline Element sparse_random_element(const Model& m, const Space& s, std::mt19937& rng,
                                     int terms = 3) {
  auto b = basis(m, s);
  std::uniform_int_distribution<size_t> pick(0, b.size() - 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Element x(s);
  for (int i = 0; i < terms; ++i) x.add(b[pick(rng)], u(rng));
  return x;
}

// adjacency matrix with edge multiplicities, vertices in graph order
inline std::vector<std::vector<long>> adjacency(const BipartiteGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
  for (const auto& e : g.edges()) {
    ++a[e.src][e.tgt];
    ++a[e.tgt][e.src];
  }
  return a;
}

inline std::vector<std::vector<long>> mat_power(const std::vector<std::vector<long>>& a, int k) {
  const size_t n = a.size();
  std::vector<std::vector<long>> r(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i) r[i][i] = 1;
  for (int p = 0; p < k; ++p) {
    std::vector<std::vector<long>> t(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (size_t l = 0; l < n; ++l) t[i][j] += r[i][l] * a[l][j];
    r = t;
  }
  return r;
}

}  // namespace testing_support
