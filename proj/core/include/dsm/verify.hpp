#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dsm/matrix.hpp"
#include "dsm/stats.hpp"

namespace dsm {

// Bounded functional of a flag, evaluated on an orthonormal frame whose
// column i spans the flag's i-th growth direction. Must be invariant under
// per-column phase changes, since frames represent flags only up to phase.
struct FlagStatistic {
    std::string name;
    std::function<double(const ComplexMatrix& frame)> eval;
};

// Bounded functional of a projective point represented by a unit vector;
// must be phase invariant.
struct VectorStatistic {
    std::string name;
    std::function<double(const ComplexVector&)> eval;
};

enum class Field { Complex, Real };
enum class MonotoneMap { Identity, Log };

// Checks the averaging property on the projective space: the weighted atoms
// of the measure for (Haar U) * A, aggregated over many draws, must
// reproduce the rotation invariant law of s = |<v, e_1>|^2, which is
// Beta(1, d-1). Reports the weighted CDF sup-distance (pass below
// max(0.01, 3/sqrt(n))) and the weighted mean of s with its standard error.
MCReport verify_ds_property_cp(const ComplexMatrix& a, std::uint64_t n,
                               std::uint64_t seed, int workers = 1);

// Same property on full flags: for each functional, compares the weighted
// atom average against an independent reference stream of uniform flags
// (columns of Haar unitaries). Pass when the means agree within 3 combined
// standard errors.
std::vector<MCReport> verify_ds_property_flag(const ComplexMatrix& a,
                                              std::uint64_t n,
                                              const std::vector<FlagStatistic>& stats,
                                              std::uint64_t seed, int workers = 1);

// Both sides of the averaging identity for one projective functional:
// lhs averages the weighted atoms of the coset measures, rhs averages the
// functional over the uniform reference law.
MCReport verify_fubini(const ComplexMatrix& a, const VectorStatistic& h,
                       std::uint64_t n, std::uint64_t seed, int workers = 1);

// Paired Monte Carlo estimate of the spectral gap inequality:
//   lhs = E_U f(prod of the k largest eigenvalue moduli of U A)
//   rhs = E_U f(volume expansion of A on the span of the first k columns of U)
// with U Haar on U(d) or SO(d) per field, the same draw on both sides.
// estimate is the mean gap lhs - rhs with its paired standard error; at
// k = d the two sides agree per sample up to roundoff.
MCReport estimate_inequality(const ComplexMatrix& a, Field field, int k,
                             MonotoneMap f, std::uint64_t n, std::uint64_t seed,
                             int workers = 1);

// Mean of log ||A v|| over uniform unit vectors; nonnegative for every
// invertible A, zero exactly when A is orthogonal.
MCReport random_exponent_sphere(const RealMatrix& a, std::uint64_t n,
                                std::uint64_t seed, int workers = 1);

// Reference CDF of s = |<v, e_1>|^2 under the uniform law on CP^{d-1}.
double cp_overlap_cdf(int d, double s);

}  // namespace dsm
