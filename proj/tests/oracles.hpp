#pragma once

#include <array>
#include <functional>
#include <vector>

#include "dsm/matrix.hpp"
#include "dsm/measure.hpp"
#include "dsm/rng.hpp"

// Independent reference implementations the library results are checked
// against. Deliberately naive: closed formulas, brute-force enumeration,
// and plain Monte Carlo, sharing no code with the library paths they test.
namespace oracle {

// Eigenvalues of a complex 2x2 by the quadratic formula, larger modulus
// first.
std::array<dsm::Complex, 2> eigen2(const dsm::ComplexMatrix& a);

// Normalized weights over all permutations of {0..d-1} in lexicographic
// order: weight(sigma) proportional to prod_j m_j^(2(d - sigma(j))) with
// one-based positions, evaluated directly in double arithmetic.
std::vector<double> perm_weights_brute(const std::vector<double>& moduli);

// Total weight of the permutations that place index i first.
std::vector<double> projected_weights_brute(const std::vector<double>& moduli);

// Plain Monte Carlo average of prod_{j<i} |1 - l_sig(i)/l_sig(j)|^2 over
// independent uniform phases of l_j = m_j e^{i phi_j}. Returns the mean and
// writes the standard error.
double torus_phase_mc(const std::vector<double>& moduli, const dsm::Permutation& sigma,
                      std::uint64_t n, std::uint64_t seed, double* std_error);

// Exact empirical-vs-analytic CDF sup distance by sorting.
double ks_exact(std::vector<double> samples,
                const std::function<double(double)>& cdf);

// Finite-difference derivative with step h (central).
double fd_derivative(const std::function<double(double)>& f, double x, double h);

}  // namespace oracle
