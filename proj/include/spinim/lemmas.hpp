#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "spinim/liealg.hpp"

namespace spinim {

struct LemmaResult {
  std::string name;
  int instances = 0;
  double max_deviation = 0.0;
};

// Randomized checks of the bivector dictionary and the extended form:
//  skew_action       [bivector_of_skew(u), xi] = u(xi)
//  skew_commutator   [u_, v_] = (u v - v u)_
//  mixed_block       action and symmetric form of mixed_bivector
//  form_invariance   B(g a, g b) = B(a g, b g) = B(a, b) and its infinitesimal version
//  adjoint_norm      extended_B(ad~X, ad~Y) = -B(X, Y) / (8 lambda)
std::vector<LemmaResult> run_lemma_suite(const LieModel& L, std::uint64_t seed, int instances);

// ad_bivector(X) + X * omega with omega = i e1 e2 e3 (n = 2 only); max deviation
// over the basis vectors and `instances` random complex X.
double omega_identity_deviation(const LieModel& L, std::uint64_t seed, int instances);

// Random helpers shared by tests.
CVec random_cvec(std::mt19937_64& rng, int d, double scale = 1.0);
CVec random_real_cvec(std::mt19937_64& rng, int d, double scale = 1.0);
MultiVector random_multivector(std::mt19937_64& rng, int dim, double scale = 1.0);
MultiVector random_bivector(std::mt19937_64& rng, int dim, double scale = 1.0);
Eigen::MatrixXcd random_skew(std::mt19937_64& rng, int d, double scale = 1.0);

}  // namespace spinim
